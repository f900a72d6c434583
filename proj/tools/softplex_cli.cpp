// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the libsoftplex C interface.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "softplex/softplex.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRefused = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(sp_status status) { return status == SP_ERR_REFUSED ? kExitRefused : kExitConfig; }

void check(sp_status status) {
  if (status != SP_OK) throw Failure{exit_code(status), sp_last_error()};
}

[[noreturn]] void config_error(const std::string& message) { throw Failure{kExitConfig, message}; }

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  sp_string_free(s);
  return out;
}

// Integers in plain or scientific notation ("1e6").
std::uint64_t parse_count(const std::string& text, const char* flag) {
  std::uint64_t value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec == std::errc{} && res.ptr == text.data() + text.size()) return value;
  char* end = nullptr;
  const double d = std::strtod(text.c_str(), &end);
  if (end == text.c_str() + text.size() && !text.empty() && d >= 0.0 && d == std::floor(d) &&
      d < 1.8e19) {
    return static_cast<std::uint64_t>(d);
  }
  config_error(std::string("--") + flag + " expects a nonnegative integer, got \"" + text + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// A density given by name, inline JSON, or a JSON file.
std::string density_json(const std::string& arg, std::size_t d) {
  if (arg == "uniform") {
    return Json{{"kind", "uniform-box"}, {"lo", std::vector<double>(d, 0.0)},
                {"hi", std::vector<double>(d, 1.0)}}
        .dump();
  }
  if (arg == "gaussian") {
    return Json{{"kind", "gaussian"}, {"mean", std::vector<double>(d, 0.0)}, {"sigma", 1.0}}.dump();
  }
  if (!arg.empty() && arg.front() == '{') return arg;
  if (std::filesystem::exists(arg)) return read_file(arg);
  config_error("unknown density \"" + arg + "\" (use uniform, gaussian, JSON or a JSON file)");
}

Json parse_checked(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    // The library reports the position of the error.
    char* out = nullptr;
    check(sp_config_resolve(text.c_str(), source.c_str(), nullptr, &out));
    sp_string_free(out);
  }
  config_error(source + ": malformed JSON");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) config_error("cannot open " + out_path + " for writing");
  out << text << '\n';
  if (!out.flush()) config_error("failed writing " + out_path);
  std::cerr << "softplex: wrote " << out_path << '\n';
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using DensityHandle = Handle<sp_density, sp_density_free>;
using CloudHandle = Handle<sp_cloud, sp_cloud_free>;
using GraphHandle = Handle<sp_graph, sp_graph_free>;
using ComplexHandle = Handle<sp_complex, sp_complex_free>;
using ResultsHandle = Handle<sp_results, sp_results_free>;

// Options shared by `sample` and `build`.
struct CloudOptions {
  std::string n = "100";
  std::string process = "binomial";
  std::string density = "uniform";
  std::size_t d = 1;
  std::string seed = "1";

  void add(CLI::App* app) {
    app->add_option("--n", n, "Number of points (lambda for the Poisson process)")
        ->capture_default_str();
    app->add_option("--process", process, "binomial or poisson")
        ->check(CLI::IsMember({"binomial", "poisson"}))
        ->capture_default_str();
    app->add_option("--density", density, "uniform, gaussian, inline JSON or a JSON file")
        ->capture_default_str();
    app->add_option("--d", d, "Dimension for named densities")->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--seed", seed, "Seed")->capture_default_str();
  }

  Json provenance() const {
    Json j;
    j["process"] = process;
    j["n"] = process == "poisson" ? Json(std::strtod(n.c_str(), nullptr)) : Json(parse_count(n, "n"));
    j["density"] = Json::parse(density_json(density, d));
    j["seed"] = parse_count(seed, "seed");
    return j;
  }

  void sample(CloudHandle& cloud) const {
    DensityHandle f;
    check(sp_density_from_json(density_json(density, d).c_str(), f.out()));
    const std::uint64_t s = parse_count(seed, "seed");
    if (process == "poisson") {
      char* end = nullptr;
      const double lambda = std::strtod(n.c_str(), &end);
      if (end != n.c_str() + n.size() || n.empty()) config_error("--n expects a number");
      check(sp_sample_poisson(lambda, f.get(), s, cloud.out()));
    } else {
      check(sp_sample_binomial(parse_count(n, "n"), f.get(), s, cloud.out()));
    }
  }
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      config_error(std::string("--") + flag + " expects comma-separated numbers");
    }
    out.push_back(v);
  }
  return out;
}

// --- sample ---------------------------------------------------------------

struct SampleCommand {
  CloudOptions cloud;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("sample", "Sample a binomial or Poisson point cloud");
    cloud.add(app);
    app->add_option("--out", out, "Output CSV (x0..x{d-1})")->required();
    app->callback([this] { run(); });
  }

  void run() {
    CloudHandle points;
    cloud.sample(points);
    check(sp_cloud_write_csv(points.get(), out.c_str(), cloud.provenance().dump().c_str()));
    std::cerr << "softplex: wrote " << sp_cloud_size(points.get()) << " points to " << out << '\n';
  }
};

// --- build ----------------------------------------------------------------

struct BuildCommand {
  CloudOptions cloud;
  double r = 0.1;
  std::size_t kmax = 4;
  std::string model = "rips";
  std::string rho;
  std::string thin_seed = "1";
  std::string region;
  std::string max_faces = "0";
  std::string dump_dir;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("build", "Build a soft random complex and count its faces");
    cloud.add(app);
    app->add_option("--r", r, "Connection radius")->capture_default_str();
    app->add_option("--kmax", kmax, "Highest face dimension")->capture_default_str();
    app->add_option("--model", model, "rips or cech")
        ->check(CLI::IsMember({"rips", "cech"}))
        ->capture_default_str();
    app->add_option("--rho", rho, "Retention probabilities p_1,...,p_kmax (default all ones)");
    app->add_option("--thin-seed", thin_seed, "Seed of the thinning coins")->capture_default_str();
    app->add_option("--region", region, "Region JSON for leftmost-point counts");
    app->add_option("--max-faces", max_faces, "Face cap (0 = default)");
    app->add_option("--dump-dir", dump_dir, "Write edges.csv and faces_k.csv here");
    app->add_option("--out", out, "Output JSON (default: stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    std::vector<double> p = rho.empty() ? std::vector<double>(kmax, 1.0) : parse_list(rho, "rho");
    if (p.size() < kmax) config_error("--rho needs at least kmax entries");

    CloudHandle points;
    cloud.sample(points);
    GraphHandle graph;
    check(sp_graph_build(points.get(), r, -1.0, 0, graph.out()));
    ComplexHandle full;
    check(sp_complex_build(graph.get(), model == "rips" ? SP_RIPS : SP_CECH, kmax,
                           parse_count(max_faces, "max-faces"), full.out()));
    ComplexHandle thinned;
    check(sp_complex_thin(full.get(), p.data(), p.size(), parse_count(thin_seed, "thin-seed"),
                          thinned.out()));

    std::vector<std::uint64_t> f(kmax + 1);
    std::int64_t chi = 0;
    check(sp_complex_face_counts(thinned.get(), region.empty() ? nullptr : region.c_str(), f.data(),
                                 f.size(), &chi));

    Json config = cloud.provenance();
    config["model"] = model;
    config["r"] = r;
    config["kmax"] = kmax;
    config["rho"] = p;
    config["thin_seed"] = parse_count(thin_seed, "thin-seed");
    config["region"] = region.empty() ? Json{{"kind", "all"}} : Json::parse(region);

    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      const std::string comment = config.dump();
      const std::string edges = (std::filesystem::path(dump_dir) / "edges.csv").string();
      // The thinned 1-skeleton: dimension-1 faces of the thinned complex.
      if (kmax >= 1) {
        check(sp_complex_write_csv(thinned.get(), 1, edges.c_str(), comment.c_str()));
      } else {
        check(sp_graph_write_csv(graph.get(), edges.c_str(), comment.c_str()));
      }
      for (std::size_t k = 0; k <= kmax; ++k) {
        const auto path =
            (std::filesystem::path(dump_dir) / ("faces_" + std::to_string(k) + ".csv")).string();
        check(sp_complex_write_csv(thinned.get(), k, path.c_str(), comment.c_str()));
      }
      std::cerr << "softplex: wrote complex dump to " << dump_dir << '\n';
    }

    Json doc;
    doc["config"] = config;
    doc["n_points"] = sp_cloud_size(points.get());
    doc["f"] = f;
    doc["chi"] = chi;
    emit(doc.dump(2), out);
  }
};

// --- constants ------------------------------------------------------------

struct ConstantsCommand {
  std::string kind = "mu";
  int k = 1;
  std::optional<int> l;
  std::optional<int> j;
  std::size_t d = 1;
  std::string density = "uniform";
  std::string region;
  std::string samples = "1e7";
  std::string seed = "1";
  unsigned shards = 16;
  unsigned threads = 0;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("constants", "Monte Carlo estimate of a limit constant");
    app->add_option("--kind", kind, "mu, nu, phi or theta")
        ->check(CLI::IsMember({"mu", "nu", "phi", "theta"}))
        ->capture_default_str();
    app->add_option("--k", k, "Face dimension")->check(CLI::NonNegativeNumber)->capture_default_str();
    app->add_option("--l", l, "Second face dimension (phi, theta)")->check(CLI::NonNegativeNumber);
    app->add_option("--j", j, "Shared vertices (phi, theta)")->check(CLI::PositiveNumber);
    app->add_option("--d", d, "Dimension for named densities")->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--density", density, "uniform, gaussian, inline JSON or a JSON file")
        ->capture_default_str();
    app->add_option("--region", region, "Region JSON (default: all of R^d)");
    app->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
    app->add_option("--seed", seed, "Seed")->capture_default_str();
    app->add_option("--shards", shards, "Independent sample shards")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (0: SOFTPLEX_THREADS or all cores)");
    app->add_option("--out", out, "Output JSON (default: stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    Json request;
    request["kind"] = kind;
    request["k"] = k;
    if (l) request["l"] = *l;
    if (j) request["j"] = *j;
    request["density"] = parse_checked(density_json(density, d), "density");
    if (!region.empty()) request["region"] = parse_checked(region, "region");
    request["samples"] = parse_count(samples, "samples");
    request["seed"] = parse_count(seed, "seed");
    request["shards"] = shards;
    std::cerr << "softplex: estimating " << kind << " with " << request["samples"] << " samples\n";
    char* reply = nullptr;
    check(sp_constants_estimate(request.dump().c_str(), threads, &reply));
    emit(take(reply), out);
  }
};

// --- experiment -----------------------------------------------------------

struct Overrides {
  std::optional<std::string> n;
  std::optional<double> r;
  std::optional<std::size_t> kmax;
  std::optional<std::string> seed;
  unsigned threads = 0;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Override n");
    app->add_option("--r", r, "Override r with an explicit radius");
    app->add_option("--kmax", kmax, "Override kmax");
    app->add_option("--seed", seed, "Override master_seed");
    app->add_option("--threads", threads, "Worker threads (0: SOFTPLEX_THREADS or all cores)");
  }

  std::string resolve(const std::string& path) const {
    const std::string text = read_file(path);
    Json patch = Json::object();
    if (n) {
      char* end = nullptr;
      const double v = std::strtod(n->c_str(), &end);
      if (n->empty() || end != n->c_str() + n->size()) config_error("--n expects a number");
      patch["n"] = v;
    }
    if (r) patch["r"] = Json{{"value", *r}};
    if (kmax) patch["kmax"] = *kmax;
    if (seed) patch["master_seed"] = parse_count(*seed, "seed");
    char* out = nullptr;
    check(sp_config_resolve(text.c_str(), path.c_str(), patch.dump().c_str(), &out));
    return take(out);
  }
};

struct ExperimentRunCommand {
  std::string config;
  std::string out;
  bool timing = false;
  Overrides overrides;

  void add(CLI::App* parent) {
    auto* app = parent->add_subcommand("run", "Run replications and write per-replication counts");
    app->add_option("--config", config, "Experiment config JSON")->required();
    app->add_option("--out", out, "Results CSV")->required();
    app->add_flag("--timing", timing, "Record wall time per replication (not reproducible)");
    overrides.add(app);
    app->callback([this] { run(); });
  }

  void run() {
    const std::string resolved = overrides.resolve(config);
    const Json doc = Json::parse(resolved);
    std::cerr << "softplex: running " << doc["replications"] << " replications (" << doc["model"]
              << ", n=" << doc["n"] << ")\n";
    ResultsHandle results;
    check(sp_experiment_run(resolved.c_str(), overrides.threads, results.out()));
    check(sp_results_write_csv(results.get(), out.c_str(), timing ? 1 : 0));
    std::cerr << "softplex: wrote " << out << '\n';
  }
};

struct ExperimentReportCommand {
  std::string in;
  std::string config;
  std::string out;
  std::string qq;
  unsigned threads = 0;

  void add(CLI::App* parent) {
    auto* app = parent->add_subcommand("report", "CLT diagnostics for a results CSV");
    app->add_option("--in", in, "Results CSV")->required();
    app->add_option("--config", config, "Experiment config JSON (default: embedded in the CSV)");
    app->add_option("--out", out, "Report JSON")->required();
    app->add_option("--qq", qq, "Quantile CSV (default: qq.csv next to the report)");
    app->add_option("--threads", threads, "Worker threads for constant estimation");
    app->callback([this] { run(); });
  }

  void run() {
    if (!std::filesystem::exists(in)) config_error("cannot open " + in);
    std::string resolved;
    if (!config.empty()) resolved = Overrides{}.resolve(config);
    ResultsHandle results;
    check(sp_results_read_csv(in.c_str(), results.out()));
    if (qq.empty()) qq = (std::filesystem::path(out).parent_path() / "qq.csv").string();
    char* reply = nullptr;
    check(sp_experiment_report(resolved.empty() ? nullptr : resolved.c_str(), results.get(), threads,
                               qq.c_str(), &reply));
    emit(take(reply), out);
    std::cerr << "softplex: wrote " << qq << '\n';
  }
};

struct ExperimentDepoissonCommand {
  std::string config;
  std::string out;
  Overrides overrides;

  void add(CLI::App* parent) {
    auto* app = parent->add_subcommand("depoisson", "Compare binomial and Poisson runs of a config");
    app->add_option("--config", config, "Experiment config JSON")->required();
    app->add_option("--out", out, "Output JSON (default: stdout)");
    overrides.add(app);
    app->callback([this] { run(); });
  }

  void run() {
    const std::string resolved = overrides.resolve(config);
    std::cerr << "softplex: running binomial and Poisson replications\n";
    char* reply = nullptr;
    check(sp_experiment_depoisson(resolved.c_str(), overrides.threads, &reply));
    emit(take(reply), out);
  }
};

// --- regime ---------------------------------------------------------------

struct RegimeCommand {
  double n = 0.0;
  std::size_t d = 1;
  std::optional<double> a;
  std::optional<double> r;
  std::optional<int> k;
  std::optional<int> l;
  std::string rho;
  std::string b;
  std::optional<double> sparse;
  std::optional<double> growth;
  std::optional<double> vanishing;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("regime", "Check the sparse-regime hypotheses at finite size");
    app->add_option("--n", n, "Number of points")->required()->check(CLI::PositiveNumber);
    app->add_option("--d", d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    auto* oa = app->add_option("--a", a, "Radius exponent: r^d = n^-a");
    auto* orr = app->add_option("--r", r, "Explicit radius");
    oa->excludes(orr);
    auto* ok = app->add_option("--k", k, "Face dimension (face-count CLT)");
    auto* ol = app->add_option("--l", l, "Top dimension (Euler characteristic CLT)");
    ok->excludes(ol);
    auto* orho = app->add_option("--rho", rho, "Retention probabilities p_1,...");
    auto* ob = app->add_option("--b", b, "Retention exponents: p_i = n^-b_i");
    orho->excludes(ob);
    app->add_option("--sparse", sparse, "Threshold for n r^d");
    app->add_option("--growth", growth, "Threshold for the growth quantity");
    app->add_option("--vanishing", vanishing, "Threshold for the next-order quantity");
    app->add_option("--out", out, "Output JSON (default: stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    if (!a && !r) config_error("regime needs --a or --r");
    if (!k && !l) config_error("regime needs --k or --l");
    Json request;
    request["n"] = n;
    request["d"] = d;
    if (a) request["a"] = *a;
    if (r) request["r"] = *r;
    if (k) request["k"] = *k;
    if (l) request["l"] = *l;
    if (!rho.empty()) request["rho"] = parse_list(rho, "rho");
    if (!b.empty()) request["b"] = parse_list(b, "b");
    Json thresholds = Json::object();
    if (sparse) thresholds["sparse"] = *sparse;
    if (growth) thresholds["growth"] = *growth;
    if (vanishing) thresholds["vanishing"] = *vanishing;
    if (!thresholds.empty()) request["thresholds"] = thresholds;
    char* reply = nullptr;
    check(sp_regime_check(request.dump().c_str(), &reply));
    emit(take(reply), out);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft random simplicial complexes: simulation and CLT diagnostics", "softplex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sp_version());

  SampleCommand sample;
  BuildCommand build;
  ConstantsCommand constants;
  ExperimentRunCommand run;
  ExperimentReportCommand report;
  ExperimentDepoissonCommand depoisson;
  RegimeCommand regime;

  sample.add(app);
  build.add(app);
  constants.add(app);
  auto* experiment = app.add_subcommand("experiment", "Replicated experiments");
  experiment->require_subcommand(1);
  run.add(experiment);
  report.add(experiment);
  depoisson.add(experiment);
  regime.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const Failure& f) {
    std::cerr << "softplex: error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "softplex: error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
