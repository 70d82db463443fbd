#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isinglearn/errors.hpp"
#include "isinglearn/exact.hpp"
#include "isinglearn/gibbs.hpp"
#include "isinglearn/rng.hpp"
#include "isinglearn/samples.hpp"
#include "helpers.hpp"

using namespace ising;
using testutil::cycle_model;
using testutil::edge_model;
using testutil::empty_model;
using testutil::path_model;

namespace {

SampleSet random_rows(int p, std::int64_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int8_t> spins(static_cast<std::size_t>(n) * p);
  for (auto& s : spins) s = rng.next_spin();
  return SampleSet(p, n, std::move(spins));
}

std::string temp_path(const char* stem) {
  return std::string("smp_") + stem + ".tmp";
}

}  // namespace

TEST_CASE("sample set constructor validates its input") {
  CHECK_THROWS_AS(SampleSet(0), DataError);
  CHECK_THROWS_AS(SampleSet(2, 2, {1, 1, 1}), DataError);   // wrong buffer size
  CHECK_THROWS_AS(SampleSet(2, 1, {1, 0}), DataError);      // entry not +-1
  CHECK_THROWS_AS(SampleSet(2, -1, {}), DataError);
}

TEST_CASE("head returns a prefix copy") {
  const SampleSet s = random_rows(3, 10, 5);
  const SampleSet h = s.head(4);
  CHECK(h.n() == 4);
  CHECK(h.p() == 3);
  for (std::int64_t r = 0; r < 4; ++r)
    for (int k = 0; k < 3; ++k) CHECK(h.at(r, k) == s.at(r, k));
  CHECK_THROWS_AS(s.head(11), DataError);
  CHECK_THROWS_AS(s.head(-1), DataError);
}

TEST_CASE("text format round-trips") {
  const SampleSet s = random_rows(5, 37, 11);
  std::stringstream buf;
  write_samples_text(s, buf);
  const SampleSet back = read_samples_text(buf);
  CHECK(back.p() == s.p());
  CHECK(back.n() == s.n());
  CHECK(back.spins() == s.spins());
}

TEST_CASE("text reader reports the offending line") {
  std::stringstream bad("2 2\n1 -1\n1 7\n");
  try {
    read_samples_text(bad);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::stringstream short_row("3 1\n1 -1\n");
  CHECK_THROWS_AS(read_samples_text(short_row), DataError);
  std::stringstream wrong_count("2 3\n1 1\n-1 -1\n");
  CHECK_THROWS_AS(read_samples_text(wrong_count), DataError);
  std::stringstream no_header("");
  CHECK_THROWS_AS(read_samples_text(no_header), DataError);
  std::stringstream junk("2 1\n1 x\n");
  CHECK_THROWS_AS(read_samples_text(junk), DataError);
}

TEST_CASE("binary format round-trips, including multi-word rows") {
  for (int p : {1, 7, 8, 9, 64, 70}) {
    const SampleSet s = random_rows(p, 23, 100 + p);
    std::stringstream buf;
    write_samples_binary(s, buf);
    const SampleSet back = read_samples_binary(buf);
    CHECK(back.p() == p);
    CHECK(back.spins() == s.spins());
  }
}

TEST_CASE("binary reader rejects damaged streams") {
  auto header = [](std::uint32_t p, std::uint32_t n) {
    std::string h = "ISNG";
    for (std::uint32_t v : {p, n})
      for (int k = 0; k < 4; ++k) h.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
    return h;
  };

  std::stringstream bad_magic("XSNG12345678");
  CHECK_THROWS_AS(read_samples_binary(bad_magic), DataError);

  // p=3 row with padding bit 3 set.
  std::stringstream padded(header(3, 1) + std::string(1, static_cast<char>(0x0f)));
  CHECK_THROWS_AS(read_samples_binary(padded), DataError);

  std::stringstream trailing(header(3, 1) + std::string(1, static_cast<char>(0x05)) + "Z");
  CHECK_THROWS_AS(read_samples_binary(trailing), DataError);

  std::stringstream truncated(header(3, 2) + std::string(1, static_cast<char>(0x05)));
  CHECK_THROWS_AS(read_samples_binary(truncated), DataError);
}

TEST_CASE("file reader sniffs the packed magic") {
  const SampleSet s = random_rows(6, 19, 21);
  const std::string bin = temp_path("bin"), txt = temp_path("txt");
  write_samples_file(s, bin, true);
  write_samples_file(s, txt, false);
  CHECK(read_samples_file(bin).spins() == s.spins());
  CHECK(read_samples_file(txt).spins() == s.spins());
  std::remove(bin.c_str());
  std::remove(txt.c_str());
  CHECK_THROWS_AS(read_samples_file("no_such_samples.dat"), DataError);
}

TEST_CASE("histogram recounts match a map on both count paths") {
  for (int p : {10, 25, 70}) {
    const std::int64_t n = 400;
    // Few distinct patterns so duplicates actually occur at p=70.
    Rng rng(7);
    std::vector<std::vector<std::int8_t>> pool;
    for (int k = 0; k < 12; ++k) {
      std::vector<std::int8_t> row(p);
      for (auto& s : row) s = rng.next_spin();
      pool.push_back(std::move(row));
    }
    std::vector<std::int8_t> spins;
    for (std::int64_t r = 0; r < n; ++r) {
      const auto& row = pool[rng.next_below(pool.size())];
      spins.insert(spins.end(), row.begin(), row.end());
    }
    const SampleSet s(p, n, std::move(spins));

    std::map<std::vector<std::int8_t>, std::uint64_t> expect;
    for (std::int64_t r = 0; r < n; ++r) {
      const auto row = s.row(r);
      ++expect[std::vector<std::int8_t>(row.begin(), row.end())];
    }

    const SampleHistogram h = SampleHistogram::build(s);
    CHECK(h.p() == p);
    CHECK(h.n() == n);
    CHECK(h.words_per_row() == (p + 63) / 64);
    CHECK(static_cast<std::size_t>(h.patterns()) == expect.size());

    std::uint64_t total = 0;
    for (std::int64_t idx = 0; idx < h.patterns(); ++idx) {
      total += h.weight(idx);
      std::vector<std::int8_t> row(p);
      for (int k = 0; k < p; ++k) row[k] = h.spin_bit(idx, k) ? 1 : -1;
      REQUIRE(expect.count(row) == 1);
      CHECK(expect[row] == h.weight(idx));
    }
    CHECK(total == static_cast<std::uint64_t>(n));

    // Patterns ascend (high word first), so the layout is input-order free.
    for (std::int64_t idx = 1; idx < h.patterns(); ++idx) {
      const std::uint64_t* a = h.pattern(idx - 1);
      const std::uint64_t* b = h.pattern(idx);
      bool less = false;
      for (int w = h.words_per_row() - 1; w >= 0; --w) {
        if (a[w] != b[w]) {
          less = a[w] < b[w];
          break;
        }
      }
      CHECK(less);
    }
  }
}

TEST_CASE("histogram of identical rows collapses to one pattern") {
  const SampleSet s(4, 50, std::vector<std::int8_t>(200, 1));
  const SampleHistogram h = SampleHistogram::build(s);
  CHECK(h.patterns() == 1);
  CHECK(h.weight(0) == 50);
  const std::vector<int> nodes = {3, 0};
  CHECK(h.gather_key(0, nodes) == 0b11u);
}

TEST_CASE("heat-bath update probability equals the exact conditional") {
  const IsingModel m = testutil::path_model({0.7, -0.4});
  const JointTable t = build_joint(m);
  std::vector<std::int8_t> x(3);
  for (int mask = 0; mask < 8; ++mask) {
    for (int k = 0; k < 3; ++k) x[k] = (mask >> k) & 1 ? 1 : -1;
    for (int u = 0; u < 3; ++u) {
      Condition cond;
      std::vector<std::pair<int, int>> terms;
      for (int v = 0; v < 3; ++v)
        if (v != u) terms.emplace_back(v, x[v]);
      cond = Condition::of({terms[0], terms[1]});
      CHECK(gibbs_update_prob(m, u, x) ==
            doctest::Approx(conditional_prob(t, u, 1, cond)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(gibbs_update_prob(m, 3, x), DataError);
}

TEST_CASE("sequential sampler is deterministic in its config") {
  const IsingModel m = cycle_model(5, 0.6);
  GibbsConfig cfg;
  cfg.burn_in_sweeps = 50;
  cfg.thinning_sweeps = 2;
  cfg.seed = 42;
  const GibbsResult a = gibbs_sample(m, 300, cfg);
  const GibbsResult b = gibbs_sample(m, 300, cfg);
  CHECK(a.samples.spins() == b.samples.spins());
  CHECK(a.chain_of_row == b.chain_of_row);
  cfg.seed = 43;
  CHECK(gibbs_sample(m, 300, cfg).samples.spins() != a.samples.spins());
}

TEST_CASE("rows group by chain with the remainder up front") {
  GibbsConfig cfg;
  cfg.burn_in_sweeps = 5;
  cfg.thinning_sweeps = 1;
  cfg.chains = 3;
  const GibbsResult r = gibbs_sample(edge_model(0.5), 7, cfg);
  CHECK(r.chain_of_row == std::vector<int>({0, 0, 0, 1, 1, 2, 2}));
}

TEST_CASE("sampler config validation") {
  GibbsConfig cfg;
  cfg.chains = 0;
  CHECK_THROWS_AS(gibbs_sample(edge_model(0.5), 10, cfg), DataError);
  cfg.chains = 1;
  cfg.thinning_sweeps = 0;
  CHECK_THROWS_AS(gibbs_sample(edge_model(0.5), 10, cfg), DataError);
}

TEST_CASE("independent spins come out unbiased") {
  GibbsConfig cfg;
  cfg.burn_in_sweeps = 20;
  cfg.thinning_sweeps = 1;
  cfg.seed = 3;
  const std::int64_t n = 20000;
  const GibbsResult r = gibbs_sample(empty_model(4), n, cfg);
  for (int k = 0; k < 4; ++k) {
    double mean = 0.0;
    for (std::int64_t row = 0; row < n; ++row) mean += r.samples.at(row, k);
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean) <= 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("single-edge agreement frequency under default settings") {
  GibbsConfig cfg;
  cfg.seed = 9;
  const std::int64_t n = 100000;
  const GibbsResult r = gibbs_sample(edge_model(0.5), n, cfg);
  std::int64_t agree = 0;
  for (std::int64_t row = 0; row < n; ++row)
    agree += r.samples.at(row, 0) == r.samples.at(row, 1);
  CHECK(std::abs(static_cast<double>(agree) / static_cast<double>(n) -
                 2.0 * 0.365529289315003) <= 0.02);
  CHECK_FALSE(r.mixing_warning);
}

TEST_CASE("chain distribution tracks the exact one in total variation") {
  IsingModel m = path_model({0.6, 0.6, 0.6});
  m.fields = {0.1, -0.1, 0.1, -0.1};
  m.h = 0.1;
  const JointTable t = build_joint(m);
  GibbsConfig cfg;
  cfg.seed = 17;
  const std::int64_t n = 200000;
  const GibbsResult r = gibbs_sample(m, n, cfg);
  std::vector<double> freq(16, 0.0);
  for (std::int64_t row = 0; row < n; ++row) {
    int mask = 0;
    for (int k = 0; k < 4; ++k)
      if (r.samples.at(row, k) > 0) mask |= 1 << k;
    freq[mask] += 1.0 / static_cast<double>(n);
  }
  double tv = 0.0;
  for (int mask = 0; mask < 16; ++mask)
    tv += 0.5 * std::abs(freq[mask] - std::exp(t.log_weights[mask] - t.log_z));
  CHECK(tv <= 0.02);
}

TEST_CASE("systematic scan also matches the exact distribution") {
  const IsingModel m = path_model({0.5, -0.5});
  const JointTable t = build_joint(m);
  GibbsConfig cfg;
  cfg.scan = GibbsConfig::Scan::systematic;
  cfg.seed = 23;
  const std::int64_t n = 100000;
  const GibbsResult r = gibbs_sample(m, n, cfg);
  double tv = 0.0;
  std::vector<double> freq(8, 0.0);
  for (std::int64_t row = 0; row < n; ++row) {
    int mask = 0;
    for (int k = 0; k < 3; ++k)
      if (r.samples.at(row, k) > 0) mask |= 1 << k;
    freq[mask] += 1.0 / static_cast<double>(n);
  }
  for (int mask = 0; mask < 8; ++mask)
    tv += 0.5 * std::abs(freq[mask] - std::exp(t.log_weights[mask] - t.log_z));
  CHECK(tv <= 0.02);
}

TEST_CASE("slow-mixing heuristic flags strong coupling") {
  GibbsConfig cfg;
  cfg.burn_in_sweeps = 5;
  cfg.thinning_sweeps = 1;
  CHECK(gibbs_sample(cycle_model(4, 1.3), 10, cfg).mixing_warning);       // 1.3 * 2 >= 2.5
  CHECK_FALSE(gibbs_sample(cycle_model(4, 0.9), 10, cfg).mixing_warning); // 1.8 < 2.5
}
