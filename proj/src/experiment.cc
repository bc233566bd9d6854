#include "sdis/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sdis/baselines.h"
#include "sdis/error.h"
#include "sdis/model_registry.h"
#include "sdis/parallel.h"

namespace sdis {

namespace {

const char* method_name(Method m) {
  switch (m) {
    case Method::mcs: return "mcs";
    case Method::ds: return "ds";
    case Method::sdis: return "sdis";
  }
  return "?";
}

const char* kernel_name(KernelType k) { return k == KernelType::independent ? "imh" : "csmh"; }

template <class T>
T get_value(const boost::property_tree::ptree& tree, const std::string& key, T fallback) {
  const auto node = tree.get_child_optional(key);
  if (!node) return fallback;
  try {
    return node->get_value<T>();
  } catch (const boost::property_tree::ptree_error&) {
    throw ConfigError("config: bad value '" + node->data() + "' for '" + key + "'");
  }
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json real_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

ExperimentSpec ExperimentSpec::parse(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  static const std::set<std::string> known = {
      "name", "model", "method", "repetitions", "seed", "samples", "kernel", "sigma1", "n0", "chain_length",
      "delta_target", "components", "max_levels", "max_initial_samples", "fit_radii", "initial_beta"};
  for (const auto& [key, child] : tree) {
    if (!child.empty()) throw ConfigError("config: sections are not supported ('" + key + "')");
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }

  ExperimentSpec spec;
  spec.name = get_value<std::string>(tree, "name", spec.name);
  spec.model = get_value<std::string>(tree, "model", "");
  if (spec.model.empty()) throw ConfigError("config: 'model' is required");
  spec.model = ModelId::parse(spec.model).canonical();

  const auto method = get_value<std::string>(tree, "method", "");
  if (method == "mcs") spec.method = Method::mcs;
  else if (method == "ds") spec.method = Method::ds;
  else if (method == "sdis") spec.method = Method::sdis;
  else throw ConfigError("config: 'method' must be mcs, ds or sdis");

  spec.repetitions = get_value<int>(tree, "repetitions", spec.repetitions);
  spec.base_seed = get_value<std::uint64_t>(tree, "seed", spec.base_seed);
  spec.samples = get_value<std::size_t>(tree, "samples", spec.samples);

  SdisConfig& c = spec.sdis;
  if (spec.method == Method::sdis) {
    const auto kernel = get_value<std::string>(tree, "kernel", "");
    if (kernel == "imh") c.kernel = KernelType::independent;
    else if (kernel == "csmh") c.kernel = KernelType::conditional;
    else throw ConfigError("config: sdis needs 'kernel' = imh or csmh");
  }
  c.sigma1 = get_value<double>(tree, "sigma1", c.sigma1);
  c.n0 = get_value<int>(tree, "n0", c.n0);
  c.chain_length = get_value<int>(tree, "chain_length", c.chain_length);
  c.delta_target = get_value<double>(tree, "delta_target", c.delta_target);
  c.components = get_value<int>(tree, "components", c.components);
  c.max_levels = get_value<int>(tree, "max_levels", c.max_levels);
  c.max_initial_samples = get_value<std::uint64_t>(tree, "max_initial_samples", c.max_initial_samples);
  c.fit_radii_per_direction = get_value<int>(tree, "fit_radii", c.fit_radii_per_direction);
  c.initial_beta = get_value<double>(tree, "initial_beta", c.initial_beta);
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  try {
    return parse(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void ExperimentSpec::validate() const {
  if (repetitions < 1) throw ConfigError("config: repetitions must be >= 1");
  if (method != Method::sdis && samples < (method == Method::ds ? 2u : 1u)) {
    throw ConfigError("config: samples too small for the baseline");
  }
  ModelId::parse(model);
  try {
    sdis.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

nlohmann::json ExperimentSpec::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["model"] = model;
  j["method"] = method_name(method);
  j["repetitions"] = repetitions;
  j["seed"] = base_seed;
  if (method == Method::sdis) {
    j["kernel"] = kernel_name(sdis.kernel);
    j["sigma1"] = sdis.sigma1;
    j["n0"] = sdis.n0;
    j["chain_length"] = sdis.chain_length;
    j["delta_target"] = sdis.delta_target;
    j["components"] = sdis.components;
    j["max_levels"] = sdis.max_levels;
    j["max_initial_samples"] = sdis.max_initial_samples;
    j["fit_radii"] = sdis.fit_radii_per_direction;
    j["initial_beta"] = sdis.initial_beta;
  } else {
    j["samples"] = samples;
  }
  return j;
}

Aggregates aggregate(const std::vector<RunRecord>& runs) {
  Aggregates a;
  std::vector<double> pf, cv, evals;
  for (const auto& r : runs) {
    if (!r.ok()) {
      ++a.failed_runs;
      continue;
    }
    pf.push_back(r.pf);
    cv.push_back(r.cv);
    evals.push_back(static_cast<double>(r.evaluations));
  }
  a.runs = pf.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (pf.empty()) {
    a.mean_pf = a.empirical_cv = a.mean_cv = a.mean_evaluations = nan;
    return a;
  }
  a.mean_pf = mean_of(pf);
  a.mean_cv = mean_of(cv);
  a.mean_evaluations = mean_of(evals);
  if (pf.size() < 2) {
    a.empirical_cv = nan;
  } else {
    double ss = 0.0;
    for (double x : pf) ss += (x - a.mean_pf) * (x - a.mean_pf);
    a.empirical_cv = std::sqrt(ss / static_cast<double>(pf.size() - 1)) / a.mean_pf;
  }
  return a;
}

RunRecord run_once(const ExperimentSpec& spec, std::size_t run_index) {
  RunRecord rec;
  rec.run_index = run_index;
  rec.seed = spec.base_seed + run_index;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto model = make_model(spec.model);
    switch (spec.method) {
      case Method::mcs: {
        Rng rng(rec.seed);
        const Estimate e = run_mcs(*model, spec.samples, rng);
        rec.pf = e.pf;
        rec.cv = e.cv;
        rec.evaluations = e.evaluations;
        rec.levels = 1;
        break;
      }
      case Method::ds: {
        Rng rng(rec.seed);
        const Estimate e = run_ds(*model, spec.samples, rng);
        rec.pf = e.pf;
        rec.cv = e.cv;
        rec.evaluations = e.evaluations;
        rec.levels = 1;
        break;
      }
      case Method::sdis: {
        SdisConfig config = spec.sdis;
        config.seed = rec.seed;
        config.workers = 1;
        const SdisResult r = run_sdis(*model, config);
        rec.pf = r.pf;
        rec.cv = r.cv;
        rec.evaluations = r.evaluations;
        rec.levels = r.level_count();
        break;
      }
    }
  } catch (const Error& e) {
    rec.error = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ExperimentReport run_experiment(const ExperimentSpec& spec, int workers) {
  spec.validate();
  ExperimentReport report;
  report.spec = spec;
  report.runs.resize(spec.repetitions);
  parallel_for(report.runs.size(), workers, [&](std::size_t i) { report.runs[i] = run_once(spec, i); });
  report.aggregates = aggregate(report.runs);
  return report;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "run_index,seed,pf_hat,cv_hat,n_evals,levels,wall_ms\n";
  for (const auto& r : report.runs) {
    out << r.run_index << ',' << r.seed << ',' << format_real(r.ok() ? r.pf : std::nan("")) << ','
        << format_real(r.ok() ? r.cv : std::nan("")) << ',' << r.evaluations << ',' << r.levels << ','
        << format_real(r.wall_ms) << '\n';
  }
}

nlohmann::json summary_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["spec"] = report.spec.to_json();
  const Aggregates& a = report.aggregates;
  // Non-finite values (e.g. the CV of a single run) are written as null.
  j["aggregates"] = {{"runs", a.runs},
                     {"failed_runs", a.failed_runs},
                     {"mean_pf", real_or_null(a.mean_pf)},
                     {"empirical_cv", real_or_null(a.empirical_cv)},
                     {"mean_estimated_cv", real_or_null(a.mean_cv)},
                     {"mean_evaluations", real_or_null(a.mean_evaluations)}};
  if (const auto ref = reference_pf(report.spec.model)) j["reference_pf"] = *ref;
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& r : report.runs) {
    if (!r.ok()) errors.push_back({{"run_index", r.run_index}, {"seed", r.seed}, {"error", r.error}});
  }
  j["errors"] = errors;
  j["complete"] = report.ok();
  return j;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto csv_path = dir / (report.spec.name + ".csv");
  const auto json_path = dir / (report.spec.name + ".json");
  {
    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot open " + csv_path.string() + " for writing");
    write_csv(report, csv);
    if (!csv) throw Error("write failed: " + csv_path.string());
  }
  std::ofstream json(json_path);
  if (!json) throw Error("cannot open " + json_path.string() + " for writing");
  json << summary_json(report).dump(2) << '\n';
  if (!json) throw Error("write failed: " + json_path.string());
}

}  // namespace sdis
