#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ising {

/// n rows of p spins, each exactly -1 or +1, stored row-major.
class SampleSet {
 public:
  explicit SampleSet(int p) : p_(p) { check_p(); }
  SampleSet(int p, std::int64_t n, std::vector<std::int8_t> spins);

  int p() const { return p_; }
  std::int64_t n() const { return n_; }
  std::int8_t at(std::int64_t row, int node) const { return spins_[row * p_ + node]; }
  std::span<const std::int8_t> row(std::int64_t r) const {
    return {spins_.data() + r * p_, static_cast<std::size_t>(p_)};
  }
  const std::vector<std::int8_t>& spins() const { return spins_; }

  /// First n_head rows as their own set (shares nothing; copies).
  SampleSet head(std::int64_t n_head) const;

 private:
  void check_p() const;
  int p_ = 0;
  std::int64_t n_ = 0;
  std::vector<std::int8_t> spins_;
};

// Text format: header "p n", then n rows of p entries from {-1, +1}.
void write_samples_text(const SampleSet& s, std::ostream& out);
SampleSet read_samples_text(std::istream& in);

// Packed format: magic "ISNG", little-endian u32 p, u32 n, then n rows of
// ceil(p/8) bytes, node k of a row at bit (k mod 8) of byte (k div 8),
// set bit meaning +1. Padding bits must be zero.
void write_samples_binary(const SampleSet& s, std::ostream& out);
SampleSet read_samples_binary(std::istream& in);

void write_samples_file(const SampleSet& s, const std::string& path, bool binary);
/// Sniffs the packed magic, falls back to text.
SampleSet read_samples_file(const std::string& path);

/// Deduplicated view of a SampleSet: distinct spin patterns, bit-packed, in
/// ascending pattern order, with multiplicities. Influence tabulation is a
/// function of this histogram alone, and collapsing repeats makes small-p
/// scans cheap regardless of n.
class SampleHistogram {
 public:
  static SampleHistogram build(const SampleSet& s);

  int p() const { return p_; }
  std::int64_t n() const { return n_; }
  std::int64_t patterns() const { return weights_.size(); }
  int words_per_row() const { return words_; }

  std::uint64_t weight(std::int64_t idx) const { return weights_[idx]; }
  const std::uint64_t* pattern(std::int64_t idx) const { return words_data() + idx * words_; }

  int spin_bit(std::int64_t idx, int node) const {
    return static_cast<int>((pattern(idx)[node >> 6] >> (node & 63)) & 1u);
  }
  /// Bit k of the key is the spin bit of nodes[k].
  std::uint64_t gather_key(std::int64_t idx, std::span<const int> nodes) const {
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      key |= static_cast<std::uint64_t>(spin_bit(idx, nodes[k])) << k;
    return key;
  }

 private:
  const std::uint64_t* words_data() const { return bits_.data(); }
  int p_ = 0;
  int words_ = 0;
  std::int64_t n_ = 0;
  std::vector<std::uint64_t> bits_;     // patterns * words_
  std::vector<std::uint64_t> weights_;  // one per pattern
};

}  // namespace ising
