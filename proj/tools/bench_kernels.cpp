// Times the histogram influence kernel against the row-streaming serial
// reference on the same scan jobs and confirms the outputs are bit-identical.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "isinglearn/errors.hpp"
#include "isinglearn/estimator.hpp"
#include "isinglearn/generators.hpp"
#include "isinglearn/gibbs.hpp"
#include "isinglearn/parallel.hpp"

namespace {

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence kernel benchmark: serial reference vs histogram kernel"};
  int p = 24;
  std::int64_t n = 200000;
  int scans = 16;
  double theta = 0.5;
  std::uint64_t seed = 1;
  app.add_option("--p", p, "Cycle size")->capture_default_str();
  app.add_option("--n", n, "Sample count")->capture_default_str();
  app.add_option("--scans", scans, "Scan jobs to time")->capture_default_str();
  app.add_option("--theta", theta, "Coupling strength")->capture_default_str();
  app.add_option("--seed", seed, "Seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    ising::GeneratorSpec spec;
    spec.family = ising::Family::cycle;
    spec.p = p;
    spec.d = 2;
    spec.alpha = spec.beta = theta;
    const ising::IsingModel model = ising::generate_model(spec, seed);

    ising::GibbsConfig gcfg;
    gcfg.burn_in_sweeps = 200;
    gcfg.thinning_sweeps = 3;
    gcfg.seed = seed;
    const ising::SampleSet samples = ising::gibbs_sample(model, n, gcfg).samples;

    ising::SampleHistogram hist(ising::SampleHistogram::build(samples));
    const double t_build = timed([&] { hist = ising::SampleHistogram::build(samples); });

    // Scan jobs mirror the learner's early growth steps: empty set, then the
    // two ring neighbors.
    struct Job {
      int u;
      std::vector<int> cond;
    };
    std::vector<Job> jobs;
    for (int k = 0; k < scans; ++k) {
      const int u = static_cast<int>((static_cast<std::int64_t>(k) * 7919) % p);
      if (k % 2 == 0) {
        jobs.push_back({u, {}});
      } else {
        std::vector<int> cond = {(u + 1) % p, (u + p - 1) % p};
        if (cond[0] > cond[1]) std::swap(cond[0], cond[1]);
        jobs.push_back({u, std::move(cond)});
      }
    }

    std::vector<std::vector<double>> out_serial(jobs.size()), out_hist(jobs.size());
    const double t_serial = timed([&] {
      for (std::size_t k = 0; k < jobs.size(); ++k)
        out_serial[k] = ising::influence_scan_serial(samples, jobs[k].u, jobs[k].cond);
    });
    const double t_hist = timed([&] {
      for (std::size_t k = 0; k < jobs.size(); ++k)
        out_hist[k] = ising::influence_scan(hist, jobs[k].u, jobs[k].cond);
    });

    bool identical = true;
    for (std::size_t k = 0; k < jobs.size(); ++k) identical = identical && out_serial[k] == out_hist[k];

    std::printf("p=%d n=%lld patterns=%lld (%.1fx dedup), %d scans, %d worker(s)%s\n", p,
                static_cast<long long>(n), static_cast<long long>(hist.patterns()),
                hist.patterns() ? static_cast<double>(n) / static_cast<double>(hist.patterns())
                                : 0.0,
                scans, ising::max_workers(), ising::openmp_enabled() ? "" : " [serial build]");
    std::printf("histogram build      %8.3fs\n", t_build);
    std::printf("serial reference     %8.3fs\n", t_serial);
    std::printf("histogram kernel     %8.3fs   (%.1fx)\n", t_hist,
                t_hist > 0.0 ? t_serial / t_hist : 0.0);
    std::printf("outputs bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ising::kExitData;
  }
}
