#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ht/halting.hpp"
#include "ht/stats.hpp"

namespace ht {

// One batch run: (algorithm, ensembles, n, eps, trials, seed, workers).
// `n` is the matrix dimension, the Fourier mode count m for dirichlet, the
// point count N for ga, and the spin count N for curie-weiss.
struct ExperimentConfig {
  std::string algorithm;
  std::vector<std::string> ensembles;
  int n = 0;
  double epsilon = 0.0;  // <= 0 selects the per-algorithm default
  long trials = 0;
  std::uint64_t master_seed = 0;
  int workers = 1;
  long max_iter = -1;  // < 0 selects the per-algorithm default
  double beta = 1.3;              // curie-weiss
  std::string potential = "x2";   // ga: x2 | x4
  std::string out_dir = "out";
  bool experimental = false;  // allow unstudied (algorithm, ensemble) pairs
};

double default_epsilon(const std::string& algorithm, int n);

ExperimentConfig load_config_file(const std::string& path);

// Throws ConfigInvalid.
void validate_config(const ExperimentConfig& cfg);

struct TrialRow {
  long trial_index = 0;
  HaltingRecord record;
  std::string extra_json = "{}";
};

struct EnsembleResult {
  std::string ensemble;
  std::vector<TrialRow> rows;
  long capped = 0;
  bool has_fluctuations = false;
  FluctuationSet fluct;
};

struct ResultBundle {
  ExperimentConfig config;
  std::vector<EnsembleResult> ensembles;
  // pairwise KS distances between tau samples, indexed like `ensembles`
  std::vector<std::vector<double>> ks;
  double wall_seconds = 0.0;
  bool degraded = false;  // any ensemble with > 1% capped trials
};

// Trial i of ensemble e consumes RngStream(master_seed, e * trials + i), so
// output is independent of worker count and scheduling.
ResultBundle run_experiment(const ExperimentConfig& cfg);

TrialRow run_trial(const ExperimentConfig& cfg, const std::string& ensemble,
                   long trial_index, std::uint64_t stream_index);

// records_<ENSEMBLE>.csv per ensemble, summary.json, histograms.svg.
void write_bundle(const ResultBundle& bundle, const std::string& dir);

std::string render_histogram_svg(const ResultBundle& bundle);

}  // namespace ht
