#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "ht/errors.hpp"
#include "ht/runner.hpp"

using namespace ht;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("ht_runner_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig small_jacobi_config() {
  ExperimentConfig cfg;
  cfg.algorithm = "jacobi";
  cfg.ensembles = {"GOE", "BE"};
  cfg.n = 8;
  cfg.trials = 30;
  cfg.master_seed = 2024;
  cfg.workers = 1;
  return cfg;
}

}  // namespace

TEST_CASE("load_config_file parses keys, comments, and overrides") {
  fs::path dir = scratch_dir("config");
  fs::path file = dir / "exp.cfg";
  {
    std::ofstream out(file);
    out << "# figure analogue\n"
        << "algorithm = jacobi\n"
        << "ensembles = GOE, BE\n"
        << "n = 30   # dimension\n"
        << "epsilon = 5.477e-10\n"
        << "trials = 2000\n"
        << "seed = 42\n"
        << "workers = 4\n";
  }
  ExperimentConfig cfg = load_config_file(file.string());
  CHECK(cfg.algorithm == "jacobi");
  REQUIRE(cfg.ensembles.size() == 2);
  CHECK(cfg.ensembles[0] == "GOE");
  CHECK(cfg.ensembles[1] == "BE");
  CHECK(cfg.n == 30);
  CHECK(cfg.epsilon == doctest::Approx(5.477e-10));
  CHECK(cfg.trials == 2000);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.workers == 4);
  validate_config(cfg);

  {
    std::ofstream out(file);
    out << "algorithm jacobi\n";
  }
  CHECK_THROWS_AS(load_config_file(file.string()), ConfigInvalid);
  CHECK_THROWS_AS(load_config_file((dir / "missing.cfg").string()), ConfigInvalid);
  fs::remove_all(dir);
}

TEST_CASE("validate_config rejects bad configurations") {
  ExperimentConfig cfg = small_jacobi_config();
  validate_config(cfg);

  ExperimentConfig bad = cfg;
  bad.algorithm = "lanczos";
  CHECK_THROWS_AS(validate_config(bad), ConfigInvalid);

  bad = cfg;
  bad.trials = 1;
  CHECK_THROWS_AS(validate_config(bad), ConfigInvalid);

  bad = cfg;
  bad.ensembles = {"cLOE"};  // not a studied Jacobi pairing
  CHECK_THROWS_AS(validate_config(bad), ConfigInvalid);
  bad.experimental = true;
  validate_config(bad);

  bad = cfg;
  bad.algorithm = "curie-weiss";
  bad.ensembles = {"o"};
  bad.n = 7;
  CHECK_THROWS_AS(validate_config(bad), ConfigInvalid);

  bad = cfg;
  bad.algorithm = "ga";
  bad.ensembles = {"uniform"};
  bad.potential = "x6";
  CHECK_THROWS_AS(validate_config(bad), ConfigInvalid);
}

TEST_CASE("default_epsilon per algorithm") {
  CHECK(default_epsilon("jacobi", 30) == doctest::Approx(std::sqrt(30.0) * 1e-10));
  CHECK(default_epsilon("cg", 100) == 1e-10);
  CHECK(default_epsilon("gmres", 100) == 1e-8);
  CHECK(default_epsilon("ga", 10) == 1e-2);
  CHECK(default_epsilon("curie-weiss", 50) == 0.5);
}

TEST_CASE("run_experiment output is deterministic and worker-independent") {
  ExperimentConfig cfg = small_jacobi_config();
  fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b"), c = scratch_dir("det_c");

  write_bundle(run_experiment(cfg), a.string());
  write_bundle(run_experiment(cfg), b.string());
  ExperimentConfig parallel = cfg;
  parallel.workers = 8;
  write_bundle(run_experiment(parallel), c.string());

  for (const char* name : {"records_GOE.csv", "records_BE.csv"}) {
    std::string base = slurp(a / name);
    CHECK(base == slurp(b / name));
    CHECK(base == slurp(c / name));
    CHECK(base.rfind("trial_index,halting_time,capped,seed_stream,extra_json\n", 0) == 0);
  }
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("run_experiment aggregates fluctuations and the KS matrix") {
  ExperimentConfig cfg = small_jacobi_config();
  cfg.trials = 60;
  ResultBundle bundle = run_experiment(cfg);
  REQUIRE(bundle.ensembles.size() == 2);
  for (const auto& er : bundle.ensembles) {
    CHECK(static_cast<long>(er.rows.size()) == cfg.trials);
    CHECK(er.capped == 0);
    REQUIRE(er.has_fluctuations);
    CHECK(er.fluct.tau.size() == er.rows.size());
  }
  CHECK_FALSE(bundle.degraded);
  REQUIRE(bundle.ks.size() == 2);
  CHECK(bundle.ks[0][0] == 0.0);
  CHECK(bundle.ks[0][1] == bundle.ks[1][0]);
  CHECK(bundle.ks[0][1] > 0.0);
  CHECK(bundle.ks[0][1] <= 1.0);
}

TEST_CASE("capped trials mark the batch degraded") {
  ExperimentConfig cfg = small_jacobi_config();
  cfg.ensembles = {"GOE"};
  cfg.max_iter = 1;  // every trial caps
  ResultBundle bundle = run_experiment(cfg);
  CHECK(bundle.degraded);
  CHECK(bundle.ensembles[0].capped == cfg.trials);
  CHECK_FALSE(bundle.ensembles[0].has_fluctuations);
}

TEST_CASE("per-trial failures become error rows, not batch aborts") {
  ExperimentConfig cfg;
  cfg.algorithm = "cg";
  cfg.ensembles = {"GOE"};  // no cg sampler for GOE: every trial fails
  cfg.experimental = true;
  cfg.n = 8;
  cfg.trials = 10;
  cfg.master_seed = 7;
  ResultBundle bundle = run_experiment(cfg);
  long errors = 0;
  for (const auto& row : bundle.ensembles[0].rows)
    if (row.extra_json.find("\"error\"") != std::string::npos) {
      CHECK(row.record.capped);
      ++errors;
    }
  CHECK(errors == cfg.trials);
  CHECK(bundle.degraded);
}

TEST_CASE("summary and plot outputs are written and well formed") {
  ExperimentConfig cfg = small_jacobi_config();
  fs::path dir = scratch_dir("bundle");
  ResultBundle bundle = run_experiment(cfg);
  write_bundle(bundle, dir.string());

  std::string summary = slurp(dir / "summary.json");
  CHECK(summary.find("\"algorithm\"") != std::string::npos);
  CHECK(summary.find("\"GOE|BE\"") != std::string::npos);

  std::string svg = slurp(dir / "histograms.svg");
  CHECK(svg == render_histogram_svg(bundle));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg ") != std::string::npos);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  // crude well-formedness: every open tag count matches its close or self-close
  for (const char* tag : {"g", "rect", "text"}) {
    std::string open = "<" + std::string(tag);
    std::string close = "</" + std::string(tag) + ">";
    std::size_t opens = 0, closes = 0, selfclosed = 0, pos = 0;
    while ((pos = svg.find(open, pos)) != std::string::npos) {
      std::size_t end = svg.find('>', pos);
      REQUIRE(end != std::string::npos);
      if (svg[end - 1] == '/') ++selfclosed;
      ++opens;
      pos = end;
    }
    pos = 0;
    while ((pos = svg.find(close, pos)) != std::string::npos) {
      ++closes;
      pos += close.size();
    }
    CHECK(opens == closes + selfclosed);
  }
  fs::remove_all(dir);
}
