#pragma once

#include <cstdint>
#include <string>

#include "isinglearn/model.hpp"

namespace ising {

enum class Family { tree, cycle, grid, random_regular, erdos_capped };
enum class SignPolicy { ferro, anti, random_sign };

struct GeneratorSpec {
  Family family = Family::tree;
  int p = 0;
  int d = 0;  // declared degree bound; families refuse specs they cannot honor
  SignPolicy sign = SignPolicy::ferro;
  double alpha = 0.0;
  double beta = 0.0;
  double h = 0.0;
};

/// Seeded model construction: coupling magnitudes uniform in [alpha, beta],
/// signs by policy, fields uniform in [-h, h]. The result always passes
/// validate_model. Same (spec, seed), same model.
IsingModel generate_model(const GeneratorSpec& spec, std::uint64_t seed);

const char* family_name(Family f);
Family family_from_name(const std::string& name);
const char* sign_name(SignPolicy s);
SignPolicy sign_from_name(const std::string& name);

}  // namespace ising
