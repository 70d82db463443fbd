#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "isinglearn/errors.hpp"
#include "isinglearn/verifier.hpp"
#include "helpers.hpp"

using namespace ising;
using testutil::edge_model;
using testutil::empty_model;
using testutil::path_model;

TEST_CASE("single edge: structural margin matches the closed form") {
  // nu-bar = tanh(0.5)/2 against the d=1 threshold 2*tau_star.
  const PropertyReport r = verify_structural_property(edge_model(0.5, 0.5, 0.5));
  REQUIRE(r.checks.size() == 1);
  const CheckResult& c = r.checks[0];
  CHECK(c.property == "structural-influence");
  CHECK(c.pass);
  CHECK(c.instances == 2);  // u=0 and u=1, each with S = {} only
  CHECK(c.worst_slack == doctest::Approx(0.231058578630005 - 1.31600527325888e-5)
                             .epsilon(1e-9));
  CHECK(r.pass());
  CHECK(r.runtime_seconds >= 0.0);
}

TEST_CASE("single edge: randomness margin equals sigma(-1) - delta") {
  const PropertyReport r = verify_conditional_randomness(edge_model(0.5, 0.5, 0.5));
  const CheckResult& c = r.checks[0];
  CHECK(c.property == "conditional-randomness");
  CHECK(c.pass);
  CHECK(c.instances == 4);  // two nodes, S in {{}, {other}}
  CHECK(c.worst_slack == doctest::Approx(0.085001700784274).epsilon(1e-9));
}

TEST_CASE("single edge: information margin equals I - nu-bar^2/2") {
  const PropertyReport r = verify_influence_mi(edge_model(0.5, 0.5, 0.5));
  const CheckResult& c = r.checks[0];
  CHECK(c.property == "influence-mi");
  CHECK(c.pass);
  CHECK(c.instances == 2);
  CHECK(c.worst_slack == doctest::Approx(0.0842500382924685).epsilon(1e-9));
}

TEST_CASE("markov margin is a tiny negative of numerical noise at worst") {
  const PropertyReport r = verify_markov_zero(path_model({0.5, -0.5}));
  const CheckResult& c = r.checks[0];
  CHECK(c.property == "markov-zero");
  CHECK(c.pass);
  CHECK(c.instances == 2);  // ends of the chain given the middle
  CHECK(c.worst_slack <= 0.0);
  CHECK(c.worst_slack >= -kVerifyTol);
}

TEST_CASE("edgeless model makes the structural claim vacuous") {
  const PropertyReport r = verify_structural_property(empty_model(3));
  const CheckResult& c = r.checks[0];
  CHECK(c.pass);
  CHECK(c.instances == 0);
  CHECK(c.worst_slack == 0.0);
  CHECK(c.witness == "vacuous");
}

TEST_CASE("combined run carries all four properties in order") {
  const PropertyReport r = verify_all(path_model({0.5, -0.5}));
  REQUIRE(r.checks.size() == 4);
  CHECK(r.checks[0].property == "structural-influence");
  CHECK(r.checks[1].property == "markov-zero");
  CHECK(r.checks[2].property == "influence-mi");
  CHECK(r.checks[3].property == "conditional-randomness");
  CHECK(r.pass());
  for (const CheckResult& c : r.checks) CHECK(!c.witness.empty());
}

TEST_CASE("subset cap shrinks the grid") {
  const PropertyReport capped = verify_structural_property(path_model({0.5, -0.5}), 0);
  CHECK(capped.checks[0].instances == 3);  // S = {} for each node
  const PropertyReport full = verify_structural_property(path_model({0.5, -0.5}));
  CHECK(full.checks[0].instances > capped.checks[0].instances);
}

TEST_CASE("verifier refuses oversized and out-of-class models") {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < 13; ++v) edges.emplace_back(v, v + 1);
  const IsingModel big = make_model(Graph(13, std::move(edges), 2),
                                    std::vector<double>(12, 0.5),
                                    std::vector<double>(13, 0.0), 0.5, 0.5, 0.0);
  CHECK_THROWS_AS(verify_all(big), InfeasibleError);

  IsingModel bad = edge_model(0.5, 0.6, 0.7);  // |theta| below the declared alpha
  CHECK_THROWS_AS(verify_all(bad), DataError);
}

TEST_CASE("the frozen model family is reproducible") {
  const auto a = default_verifier_suite();
  const auto b = default_verifier_suite();
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 20800);
  std::set<std::string> ids;
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].id == b[k].id);
    CHECK(a[k].model.couplings == b[k].model.couplings);
    CHECK(a[k].model.fields == b[k].model.fields);
    ids.insert(a[k].id);
  }
  CHECK(ids.size() == a.size());  // ids are unique
}

TEST_CASE("suite entries stay inside their declared class") {
  const auto suite = default_verifier_suite();
  for (std::size_t k = 0; k < suite.size(); k += 977)
    CHECK(validate_model(suite[k].model).empty());
}

TEST_CASE("a thin slice of the family passes all four properties") {
  const auto suite = default_verifier_suite();
  int checked = 0;
  for (std::size_t k = 0; k < suite.size(); k += 1499) {
    const PropertyReport r = verify_all(suite[k].model, -1, suite[k].id);
    CHECK(r.model_id == suite[k].id);
    if (!r.pass()) {
      for (const CheckResult& c : r.checks)
        if (!c.pass)
          FAIL_CHECK("model ", suite[k].id, " failed ", c.property, " slack ", c.worst_slack,
                     " at ", c.witness);
    }
    ++checked;
  }
  CHECK(checked >= 13);
}
