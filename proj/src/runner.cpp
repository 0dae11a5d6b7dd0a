#include "ht/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "ht/curie_weiss.hpp"
#include "ht/dirichlet.hpp"
#include "ht/eigen_algorithms.hpp"
#include "ht/ensembles.hpp"
#include "ht/errors.hpp"
#include "ht/fekete.hpp"
#include "ht/krylov.hpp"

namespace ht {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::map<std::string, std::set<std::string>>& studied_pairs() {
  static const std::map<std::string, std::set<std::string>> pairs = {
      {"jacobi", {"GOE", "BE"}},
      {"qr", {"GOE", "BE", "GUE", "QUE", "COSH"}},
      {"cg", {"cLOE", "cPBE"}},
      {"gmres", {"cSGE", "cSBE"}},
      {"dirichlet", {"BDE", "UDE"}},
      {"ga", {"uniform", "coin"}},
      {"curie-weiss", {"o", "u", "v"}},
  };
  return pairs;
}

long default_max_iter(const std::string& algorithm, int n) {
  if (algorithm == "jacobi") return default_jacobi_max_iter(n);
  if (algorithm == "qr") return default_qr_max_iter(n);
  if (algorithm == "cg") return 20L * n;
  if (algorithm == "gmres" || algorithm == "dirichlet") return n;
  if (algorithm == "ga") return 200000;
  return 0;  // curie-weiss caps on t_max instead
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

double default_epsilon(const std::string& algorithm, int n) {
  if (algorithm == "jacobi") return std::sqrt(static_cast<double>(n)) * 1e-10;
  if (algorithm == "qr") return 1e-10;
  if (algorithm == "cg") return 1e-10;
  if (algorithm == "gmres" || algorithm == "dirichlet") return 1e-8;
  if (algorithm == "ga") return 1e-2;
  if (algorithm == "curie-weiss") return 0.5;
  return 0.0;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "algorithm") cfg.algorithm = value;
      else if (key == "ensembles" || key == "ensemble") cfg.ensembles = split_list(value);
      else if (key == "n") cfg.n = std::stoi(value);
      else if (key == "epsilon") cfg.epsilon = std::stod(value);
      else if (key == "trials") cfg.trials = std::stol(value);
      else if (key == "seed") cfg.master_seed = std::stoull(value);
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "max_iter") cfg.max_iter = std::stol(value);
      else if (key == "beta") cfg.beta = std::stod(value);
      else if (key == "potential") cfg.potential = value;
      else if (key == "out") cfg.out_dir = value;
      else if (key == "experimental") cfg.experimental = (value == "true" || value == "1");
      else throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": unknown key " + key);
    } catch (const std::invalid_argument&) {
      throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  const auto& pairs = studied_pairs();
  auto it = pairs.find(cfg.algorithm);
  if (it == pairs.end()) throw ConfigInvalid("unknown algorithm: " + cfg.algorithm);
  if (cfg.ensembles.empty()) throw ConfigInvalid("no ensembles given");
  if (!cfg.experimental) {
    for (const auto& e : cfg.ensembles)
      if (!it->second.count(e))
        throw ConfigInvalid("ensemble " + e + " is not a studied pairing for " + cfg.algorithm +
                            " (pass experimental = true to override)");
  }
  if (cfg.trials < 2) throw ConfigInvalid("trials must be >= 2");
  if (cfg.n < 2) throw ConfigInvalid("n must be >= 2");
  if (cfg.workers < 1) throw ConfigInvalid("workers must be >= 1");
  if (cfg.algorithm == "curie-weiss" && cfg.n % 2 != 0)
    throw ConfigInvalid("curie-weiss needs even N");
  if (cfg.algorithm == "ga" && cfg.potential != "x2" && cfg.potential != "x4")
    throw ConfigInvalid("potential must be x2 or x4");
}

namespace {

// GA reference minima are deterministic per (n, potential, seed); cached so
// the oracle runs once per batch. Multistart draws come from a reserved
// stream index far above the trial range.
double ga_reference(const ExperimentConfig& cfg) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::string, std::uint64_t>, double> cache;
  auto key = std::make_tuple(cfg.n, cfg.potential, cfg.master_seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Potential v = cfg.potential == "x2" ? Potential::Quadratic : Potential::DoubleWell;
  RngStream rng(cfg.master_seed, 0xFFFFFFFF00000000ULL);
  double value = reference_minimum(cfg.n, v, &rng);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, value);
  return value;
}

}  // namespace

TrialRow run_trial(const ExperimentConfig& cfg, const std::string& ensemble, long trial_index,
                   std::uint64_t stream_index) {
  TrialRow row;
  row.trial_index = trial_index;
  RngStream rng(cfg.master_seed, stream_index);
  const double eps = cfg.epsilon > 0.0 ? cfg.epsilon : default_epsilon(cfg.algorithm, cfg.n);
  const long max_iter = cfg.max_iter >= 0 ? cfg.max_iter : default_max_iter(cfg.algorithm, cfg.n);

  auto unsupported = [&]() -> Error {
    return Error(cfg.algorithm + " has no sampler for ensemble " + ensemble);
  };
  try {
    if (cfg.algorithm == "jacobi") {
      if (ensemble != "GOE" && ensemble != "BE") throw unsupported();
      Matrix m = ensemble == "GOE" ? sample_goe(cfg.n, rng) : sample_be(cfg.n, rng);
      row.record = jacobi_run(m, eps, max_iter).record;
    } else if (cfg.algorithm == "qr") {
      if (ensemble == "GOE" || ensemble == "BE") {
        Matrix m = ensemble == "GOE" ? sample_goe(cfg.n, rng) : sample_be(cfg.n, rng);
        row.record = qr_deflation_run(m, eps, max_iter).record;
      } else {
        ComplexMatrix m;
        if (ensemble == "GUE") {
          m = sample_gue(cfg.n, rng);
        } else if (ensemble == "QUE" || ensemble == "COSH") {
          auto family =
              ensemble == "QUE" ? InvariantFamily::Quartic : InvariantFamily::Cosh;
          m = sample_invariant(family, cfg.n, McmcParams{}, rng);
        } else {
          throw unsupported();
        }
        row.record = qr_deflation_run(m, eps, max_iter).record;
      }
    } else if (cfg.algorithm == "cg") {
      if (ensemble != "cLOE" && ensemble != "cPBE") throw unsupported();
      Matrix w = ensemble == "cLOE" ? sample_cloe(cfg.n, rng) : sample_cpbe(cfg.n, rng);
      Vector b = sample_rhs_uniform(cfg.n, rng);
      KrylovResult kr = cg_run(w, b, eps, max_iter);
      row.record = kr.record;
      row.extra_json = "{\"true_residual\":" + fmt_double(kr.trace.true_residual) + "}";
    } else if (cfg.algorithm == "gmres") {
      if (ensemble != "cSGE" && ensemble != "cSBE") throw unsupported();
      Matrix w = ensemble == "cSGE" ? sample_csge(cfg.n, rng) : sample_csbe(cfg.n, rng);
      Vector b = sample_rhs_uniform(cfg.n, rng);
      KrylovResult kr = gmres_run(w, b, eps, max_iter);
      row.record = kr.record;
      row.extra_json = "{\"true_residual\":" + fmt_double(kr.trace.true_residual) + "}";
    } else if (cfg.algorithm == "dirichlet") {
      if (ensemble != "BDE" && ensemble != "UDE") throw unsupported();
      auto family = ensemble == "BDE" ? BoundaryFamily::Bernoulli : BoundaryFamily::Uniform;
      DirichletTrial tr = dirichlet_trial(cfg.n, family, eps, rng);
      row.record = tr.record;
      row.extra_json = "{\"true_residual\":" + fmt_double(tr.trace.true_residual) + "}";
    } else if (cfg.algorithm == "ga") {
      if (ensemble != "uniform" && ensemble != "coin") throw unsupported();
      Perturbation d = ensemble == "uniform" ? Perturbation::Uniform : Perturbation::Coin;
      Potential v = cfg.potential == "x2" ? Potential::Quadratic : Potential::DoubleWell;
      row.record = ga_run(cfg.n, d, v, eps, ga_reference(cfg), rng, max_iter);
    } else if (cfg.algorithm == "curie-weiss") {
      if (ensemble != "o" && ensemble != "u" && ensemble != "v") throw unsupported();
      IntensityKind kind = ensemble == "o"   ? IntensityKind::O
                           : ensemble == "u" ? IntensityKind::U
                                             : IntensityKind::V;
      row.record = cw_run(cfg.n, kind, cfg.beta, eps, rng);
    } else {
      throw ConfigInvalid("unknown algorithm: " + cfg.algorithm);
    }
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const std::exception& ex) {
    // per-trial failures never abort the batch
    row.record.capped = true;
    row.record.halting_time = 0.0;
    std::string msg = ex.what();
    for (char& c : msg)
      if (c == '"' || c == '\\') c = '\'';
    row.extra_json = "{\"error\":\"" + msg + "\"}";
  }

  row.record.algorithm = cfg.algorithm;
  row.record.ensemble = ensemble;
  row.record.n = cfg.n;
  row.record.epsilon = eps;
  row.record.seed_stream = stream_index;
  return row;
}

ResultBundle run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  auto t0 = std::chrono::steady_clock::now();

  ExperimentConfig local = cfg;
  if (local.algorithm == "ga") {
    // resolve the oracle once; run_trial reuses the deterministic value
    ga_reference(local);
  }

  const long trials = cfg.trials;
  const std::size_t ecount = cfg.ensembles.size();
  std::vector<std::vector<TrialRow>> rows(ecount, std::vector<TrialRow>(trials));

  std::atomic<long> next{0};
  const long total = static_cast<long>(ecount) * trials;
  auto worker = [&]() {
    for (;;) {
      long idx = next.fetch_add(1);
      if (idx >= total) break;
      long e = idx / trials;
      long t = idx % trials;
      std::uint64_t stream = static_cast<std::uint64_t>(e) * trials + t;
      rows[e][t] = run_trial(local, cfg.ensembles[e], t, stream);
    }
  };
  if (cfg.workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < cfg.workers; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }

  ResultBundle bundle;
  bundle.config = cfg;
  for (std::size_t e = 0; e < ecount; ++e) {
    EnsembleResult er;
    er.ensemble = cfg.ensembles[e];
    er.rows = std::move(rows[e]);
    std::vector<double> uncapped;
    for (const auto& r : er.rows) {
      if (r.record.capped) ++er.capped;
      else uncapped.push_back(r.record.halting_time);
    }
    if (uncapped.size() >= 2) {
      try {
        er.fluct = fluctuations(uncapped);
        er.has_fluctuations = true;
      } catch (const ZeroVariance&) {
      }
    }
    if (er.capped * 100 > trials) bundle.degraded = true;
    bundle.ensembles.push_back(std::move(er));
  }

  bundle.ks.assign(ecount, std::vector<double>(ecount, 0.0));
  for (std::size_t a = 0; a < ecount; ++a)
    for (std::size_t b = a + 1; b < ecount; ++b) {
      if (bundle.ensembles[a].has_fluctuations && bundle.ensembles[b].has_fluctuations) {
        double d = ks_distance(bundle.ensembles[a].fluct.tau, bundle.ensembles[b].fluct.tau);
        bundle.ks[a][b] = d;
        bundle.ks[b][a] = d;
      }
    }

  bundle.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return bundle;
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

void write_bundle(const ResultBundle& bundle, const std::string& dir) {
  std::filesystem::create_directories(dir);

  for (const auto& er : bundle.ensembles) {
    std::ofstream csv(dir + "/records_" + er.ensemble + ".csv", std::ios::binary);
    csv << "trial_index,halting_time,capped,seed_stream,extra_json\n";
    for (const auto& r : er.rows) {
      csv << r.trial_index << ',' << fmt_double(r.record.halting_time) << ','
          << (r.record.capped ? 1 : 0) << ',' << r.record.seed_stream << ','
          << csv_quote(r.extra_json) << '\n';
    }
  }

  nlohmann::json j;
  j["config"] = {{"algorithm", bundle.config.algorithm},
                 {"ensembles", bundle.config.ensembles},
                 {"n", bundle.config.n},
                 {"epsilon", bundle.config.epsilon > 0.0
                                 ? bundle.config.epsilon
                                 : default_epsilon(bundle.config.algorithm, bundle.config.n)},
                 {"trials", bundle.config.trials},
                 {"seed", bundle.config.master_seed},
                 {"workers", bundle.config.workers}};
  j["degraded"] = bundle.degraded;
  j["wall_seconds"] = bundle.wall_seconds;
  for (const auto& er : bundle.ensembles) {
    nlohmann::json je;
    je["trials"] = er.rows.size();
    je["capped"] = er.capped;
    if (er.has_fluctuations) {
      je["mean"] = er.fluct.mean;
      je["sd"] = er.fluct.sd;
    }
    j["ensembles"][er.ensemble] = je;
  }
  for (std::size_t a = 0; a < bundle.ensembles.size(); ++a)
    for (std::size_t b = a + 1; b < bundle.ensembles.size(); ++b)
      j["ks"][bundle.ensembles[a].ensemble + "|" + bundle.ensembles[b].ensemble] =
          bundle.ks[a][b];

  std::ofstream js(dir + "/summary.json", std::ios::binary);
  js << j.dump(2) << '\n';

  std::ofstream svg(dir + "/histograms.svg", std::ios::binary);
  svg << render_histogram_svg(bundle);
}

std::string render_histogram_svg(const ResultBundle& bundle) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  const double width = 800, height = 500;
  const double ml = 60, mr = 20, mt = 30, mb = 45;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double lo = -3.0, hi = 4.0;
  const int bins = 40;

  std::vector<Histogram> hists;
  double dmax = 0.0;
  for (const auto& er : bundle.ensembles) {
    Histogram h = er.has_fluctuations ? make_histogram(er.fluct.tau, bins, lo, hi)
                                      : Histogram{};
    for (double d : h.density) dmax = std::max(dmax, d);
    hists.push_back(std::move(h));
  }
  if (dmax <= 0.0) dmax = 1.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  for (int t = static_cast<int>(lo); t <= static_cast<int>(hi); ++t) {
    double x = ml + (t - lo) / (hi - lo) * pw;
    out << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << mt + ph + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
      << "\" font-size=\"13\" text-anchor=\"middle\">&#964;</text>\n";

  for (std::size_t e = 0; e < hists.size(); ++e) {
    const Histogram& h = hists[e];
    if (h.density.empty()) continue;
    const char* color = palette[e % 6];
    for (int b = 0; b < bins; ++b) {
      double x0 = ml + (h.edges[b] - lo) / (hi - lo) * pw;
      double x1 = ml + (h.edges[b + 1] - lo) / (hi - lo) * pw;
      double bh = h.density[b] / dmax * ph;
      if (bh <= 0.0) continue;
      out << "<rect x=\"" << x0 << "\" y=\"" << mt + ph - bh << "\" width=\"" << x1 - x0
          << "\" height=\"" << bh << "\" fill=\"" << color
          << "\" fill-opacity=\"0.45\" stroke=\"" << color << "\" stroke-width=\"0.5\"/>\n";
    }
  }

  double ly = mt + 10;
  for (std::size_t e = 0; e < bundle.ensembles.size(); ++e) {
    const char* color = palette[e % 6];
    out << "<rect x=\"" << ml + pw - 130 << "\" y=\"" << ly - 10
        << "\" width=\"14\" height=\"14\" fill=\"" << color << "\" fill-opacity=\"0.45\"/>\n";
    out << "<text x=\"" << ml + pw - 110 << "\" y=\"" << ly + 2 << "\" font-size=\"13\">"
        << bundle.ensembles[e].ensemble << "</text>\n";
    ly += 20;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ht
