#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ht/errors.hpp"
#include "ht/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Halting-time fluctuation experiments"};

  std::string config_path;
  std::string algorithm, ensembles, potential, out_dir;
  int n = -1, workers = -1;
  double epsilon = -1.0, beta = -1.0;
  long trials = -1, max_iter = -2;
  std::uint64_t seed = 0;
  bool have_seed = false, experimental = false;

  app.add_option("-c,--config", config_path, "flat key = value config file");
  app.add_option("--algorithm", algorithm,
                 "jacobi | qr | cg | gmres | dirichlet | ga | curie-weiss");
  app.add_option("--ensemble", ensembles, "comma-separated ensemble tags");
  app.add_option("--n", n, "dimension (m for dirichlet, N for ga/curie-weiss)");
  app.add_option("--epsilon", epsilon, "halting threshold (default per algorithm)");
  app.add_option("--trials", trials, "trials per ensemble");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  app.add_option("--workers", workers, "worker threads");
  app.add_option("--max-iter", max_iter, "iteration cap override");
  app.add_option("--beta", beta, "curie-weiss inverse temperature");
  app.add_option("--potential", potential, "ga potential: x2 | x4");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--experimental", experimental, "allow unstudied algorithm/ensemble pairs");

  CLI11_PARSE(app, argc, argv);
  have_seed = seed_opt->count() > 0;

  try {
    ht::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ht::load_config_file(config_path);
    if (!algorithm.empty()) cfg.algorithm = algorithm;
    if (!ensembles.empty()) {
      cfg.ensembles.clear();
      std::string item;
      for (char c : ensembles + ",") {
        if (c == ',') {
          if (!item.empty()) cfg.ensembles.push_back(item);
          item.clear();
        } else {
          item += c;
        }
      }
    }
    if (n >= 0) cfg.n = n;
    if (epsilon >= 0.0) cfg.epsilon = epsilon;
    if (trials >= 0) cfg.trials = trials;
    if (have_seed) cfg.master_seed = seed;
    if (workers >= 0) cfg.workers = workers;
    if (max_iter >= -1) cfg.max_iter = max_iter;
    if (beta >= 0.0) cfg.beta = beta;
    if (!potential.empty()) cfg.potential = potential;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (experimental) cfg.experimental = true;

    ht::ResultBundle bundle = ht::run_experiment(cfg);
    ht::write_bundle(bundle, cfg.out_dir);

    for (const auto& er : bundle.ensembles) {
      std::printf("%-8s trials=%zu capped=%ld", er.ensemble.c_str(), er.rows.size(),
                  er.capped);
      if (er.has_fluctuations)
        std::printf(" mean=%.6g sd=%.6g", er.fluct.mean, er.fluct.sd);
      std::printf("\n");
    }
    for (std::size_t a = 0; a < bundle.ensembles.size(); ++a)
      for (std::size_t b = a + 1; b < bundle.ensembles.size(); ++b)
        std::printf("KS %s|%s = %.4f\n", bundle.ensembles[a].ensemble.c_str(),
                    bundle.ensembles[b].ensemble.c_str(), bundle.ks[a][b]);
    std::printf("wrote %s (wall %.1fs)%s\n", cfg.out_dir.c_str(), bundle.wall_seconds,
                bundle.degraded ? " [degraded: >1% capped trials]" : "");
    return bundle.degraded ? 3 : 0;
  } catch (const ht::ConfigInvalid& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
