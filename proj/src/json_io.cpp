// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "softplex/error.hpp"

namespace softplex {

namespace {

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key \"" + item.key() + "\"");
  }
}

const Json& need(const Json& j, const char* key, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(std::string(where) + ": missing key \"" + key + "\"");
  }
  return *it;
}

double as_double(const Json& j, std::string_view what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::uint64_t as_count(const Json& j, std::string_view what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  throw ConfigError(std::string(what) + " must be a nonnegative integer");
}

std::vector<double> as_vector(const Json& j, std::string_view what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_double(v, what));
  return out;
}

std::string as_string(const Json& j, std::string_view what) {
  if (!j.is_string()) throw ConfigError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

// Turns library exceptions from constructors into configuration errors.
template <class F>
auto configured(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON";
    throw ConfigError(msg.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

Density density_from_name(std::string_view name, std::size_t d) {
  if (d == 0) throw ConfigError("dimension d must be positive");
  if (name == "uniform" || name == "uniform-box") return Density::unit_cube(d);
  if (name == "gaussian") return Density::gaussian(std::vector<double>(d, 0.0), 1.0);
  throw ConfigError("unknown density \"" + std::string(name) + "\"");
}

Density density_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("density must be an object");
  const std::string kind = as_string(need(j, "kind", "density"), "density kind");
  return configured([&] {
    if (kind == "uniform-box") {
      reject_unknown(j, {"kind", "lo", "hi"}, "density");
      return Density::uniform_box(as_vector(need(j, "lo", "density"), "lo"),
                                  as_vector(need(j, "hi", "density"), "hi"));
    }
    if (kind == "gaussian") {
      reject_unknown(j, {"kind", "mean", "sigma"}, "density");
      return Density::gaussian(as_vector(need(j, "mean", "density"), "mean"),
                               as_double(need(j, "sigma", "density"), "sigma"));
    }
    if (kind == "piecewise-constant") {
      reject_unknown(j, {"kind", "lo", "hi", "shape", "weights"}, "density");
      std::vector<std::size_t> shape;
      for (double s : as_vector(need(j, "shape", "density"), "shape")) {
        if (!(s >= 1.0) || s != std::floor(s)) throw ConfigError("shape entries must be positive integers");
        shape.push_back(static_cast<std::size_t>(s));
      }
      return Density::piecewise_constant(as_vector(need(j, "lo", "density"), "lo"),
                                         as_vector(need(j, "hi", "density"), "hi"), shape,
                                         as_vector(need(j, "weights", "density"), "weights"));
    }
    throw ConfigError("unsupported density kind \"" + kind + "\"");
  });
}

Json density_to_json(const Density& density) {
  Json j;
  switch (density.kind()) {
    case DensityKind::uniform_box:
      j["kind"] = "uniform-box";
      j["lo"] = density.lo();
      j["hi"] = density.hi();
      break;
    case DensityKind::gaussian_isotropic:
      j["kind"] = "gaussian";
      j["mean"] = density.mean();
      j["sigma"] = density.sigma();
      break;
    case DensityKind::piecewise_constant:
      j["kind"] = "piecewise-constant";
      j["lo"] = density.lo();
      j["hi"] = density.hi();
      j["shape"] = density.cells_per_dim();
      j["weights"] = density.cell_values();
      break;
  }
  return j;
}

Region region_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "all") return Region::all();
  if (!j.is_object()) throw ConfigError("region must be an object");
  const std::string kind = as_string(need(j, "kind", "region"), "region kind");
  if (kind == "all") {
    reject_unknown(j, {"kind"}, "region");
    return Region::all();
  }
  reject_unknown(j, {"kind", "lo", "hi"}, "region");
  auto lo = as_vector(need(j, "lo", "region"), "lo");
  auto hi = as_vector(need(j, "hi", "region"), "hi");
  return configured([&] {
    if (kind == "box") return Region::box(lo, hi);
    if (kind == "box-complement") return Region::box_complement(lo, hi);
    throw ConfigError("unknown region kind \"" + kind + "\"");
  });
}

Json region_to_json(const Region& region) {
  Json j;
  switch (region.kind()) {
    case RegionKind::all:
      j["kind"] = "all";
      return j;
    case RegionKind::box:
      j["kind"] = "box";
      break;
    case RegionKind::box_complement:
      j["kind"] = "box-complement";
      break;
  }
  j["lo"] = region.lo();
  j["hi"] = region.hi();
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  reject_unknown(j,
                 {"model", "process", "n", "d", "density", "r", "rho", "kmax", "region",
                  "replications", "master_seed", "statistic", "max_faces", "constants_samples"},
                 "config");
  ExperimentConfig c;
  if (auto it = j.find("model"); it != j.end()) {
    const auto m = as_string(*it, "model");
    if (m == "rips") c.model = Flavor::rips;
    else if (m == "cech") c.model = Flavor::cech;
    else throw ConfigError("model must be \"rips\" or \"cech\"");
  }
  if (auto it = j.find("process"); it != j.end()) {
    const auto p = as_string(*it, "process");
    if (p == "binomial") c.process = ProcessKind::binomial;
    else if (p == "poisson") c.process = ProcessKind::poisson;
    else throw ConfigError("process must be \"binomial\" or \"poisson\"");
  }
  c.n = as_double(need(j, "n", "config"), "n");

  std::optional<std::size_t> d;
  if (auto it = j.find("d"); it != j.end()) d = static_cast<std::size_t>(as_count(*it, "d"));
  const Json& density = need(j, "density", "config");
  if (density.is_string()) {
    if (!d) throw ConfigError("a named density needs \"d\"");
    c.density = density_from_name(density.get<std::string>(), *d);
  } else {
    c.density = density_from_json(density);
    if (d && *d != c.density.dimension()) throw ConfigError("\"d\" does not match the density");
  }

  const Json& r = need(j, "r", "config");
  if (r.is_number()) {
    c.r = RadiusRule::fixed(r.get<double>());
  } else {
    reject_unknown(r, {"value", "exponent"}, "r");
    if (r.size() != 1) throw ConfigError("r needs exactly one of \"value\" or \"exponent\"");
    if (r.contains("value")) c.r = RadiusRule::fixed(as_double(r["value"], "r.value"));
    else c.r = RadiusRule::power(as_double(r["exponent"], "r.exponent"));
  }

  if (auto it = j.find("rho"); it != j.end() && !it->is_null()) {
    RhoRule rule;
    if (it->is_array()) {
      rule.values = as_vector(*it, "rho");
    } else {
      reject_unknown(*it, {"values", "exponents"}, "rho");
      if (it->size() != 1) throw ConfigError("rho needs exactly one of \"values\" or \"exponents\"");
      if (it->contains("values")) {
        rule.values = as_vector((*it)["values"], "rho.values");
      } else {
        rule.kind = RhoRule::Kind::exponents;
        rule.values = as_vector((*it)["exponents"], "rho.exponents");
      }
    }
    c.rho = rule;
  }
  if (auto it = j.find("kmax"); it != j.end()) c.k_max = static_cast<std::size_t>(as_count(*it, "kmax"));
  if (auto it = j.find("region"); it != j.end()) c.region = region_from_json(*it);
  if (auto it = j.find("replications"); it != j.end()) {
    c.replications = static_cast<std::size_t>(as_count(*it, "replications"));
  }
  if (auto it = j.find("master_seed"); it != j.end()) c.master_seed = as_count(*it, "master_seed");
  if (auto it = j.find("statistic"); it != j.end()) {
    if (it->is_string() && it->get<std::string>() == "chi") {
      c.statistic = Statistic::chi();
    } else {
      reject_unknown(*it, {"kind", "k"}, "statistic");
      const auto kind = as_string(need(*it, "kind", "statistic"), "statistic kind");
      if (kind == "chi") {
        if (it->contains("k")) throw ConfigError("statistic chi takes no \"k\"");
        c.statistic = Statistic::chi();
      } else if (kind == "fk") {
        c.statistic = Statistic::fk(static_cast<int>(as_count(need(*it, "k", "statistic"), "k")));
      } else {
        throw ConfigError("statistic kind must be \"fk\" or \"chi\"");
      }
    }
  }
  if (auto it = j.find("max_faces"); it != j.end()) c.max_faces = as_count(*it, "max_faces");
  if (auto it = j.find("constants_samples"); it != j.end()) {
    c.constants_samples = as_count(*it, "constants_samples");
  }
  configured([&] {
    c.validate();
    return 0;
  });
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["model"] = c.model == Flavor::rips ? "rips" : "cech";
  j["process"] = c.process == ProcessKind::binomial ? "binomial" : "poisson";
  if (c.n == std::floor(c.n) && c.n < 9.0e15) {
    j["n"] = static_cast<std::uint64_t>(c.n);
  } else {
    j["n"] = c.n;
  }
  j["d"] = c.dimension();
  j["density"] = density_to_json(c.density);
  j["r"] = Json::object();
  j["r"][c.r.kind == RadiusRule::Kind::value ? "value" : "exponent"] = c.r.value;
  if (c.rho) {
    j["rho"] = Json::object();
    j["rho"][c.rho->kind == RhoRule::Kind::values ? "values" : "exponents"] = c.rho->values;
  } else {
    j["rho"] = nullptr;
  }
  j["kmax"] = c.k_max;
  j["region"] = region_to_json(c.region);
  j["replications"] = c.replications;
  j["master_seed"] = c.master_seed;
  if (c.statistic.kind == Statistic::Kind::euler) {
    j["statistic"] = {{"kind", "chi"}};
  } else {
    j["statistic"] = {{"kind", "fk"}, {"k", c.statistic.k}};
  }
  j["max_faces"] = c.max_faces;
  j["constants_samples"] = c.constants_samples;
  return j;
}

namespace {

const char* kind_name(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::mu: return "mu";
    case ConstantKind::nu: return "nu";
    case ConstantKind::phi: return "phi";
    case ConstantKind::theta: return "theta";
  }
  return "?";
}

Json optional_number(const std::optional<double>& x) {
  if (x && std::isfinite(*x)) return *x;
  return nullptr;
}

Json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

Json constant_to_json(const ConstantEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["stderr"] = e.standard_error;
  j["samples"] = e.samples;
  Json params;
  params["kind"] = kind_name(e.kind);
  params["k"] = e.k;
  if (e.l) params["l"] = *e.l;
  if (e.j) params["j"] = *e.j;
  params["region"] = region_to_json(e.region);
  j["params"] = params;
  return j;
}

Json regime_to_json(const RegimeReport& r) {
  Json j;
  j["n"] = r.n;
  j["r"] = r.r;
  j["d"] = r.d;
  Json rho = Json::array();
  for (double lp : r.log_rho) rho.push_back(std::exp(lp));
  j["rho"] = rho;
  j["mode"] = r.mode == RegimeMode::face_count ? "fk" : "chi";
  j[r.mode == RegimeMode::face_count ? "k" : "l"] = r.order;
  j["thresholds"] = {{"sparse", r.thresholds.sparse},
                     {"growth", r.thresholds.growth},
                     {"vanishing", r.thresholds.vanishing}};
  j["nrd"] = r.nrd;
  j["log_nrd"] = r.log_nrd;
  j["growth"] = finite_or_null(r.growth);
  j["log_growth"] = finite_or_null(r.log_growth);
  if (r.vanishing) {
    j["vanishing"] = finite_or_null(*r.vanishing);
    j["log_vanishing"] = finite_or_null(*r.log_vanishing);
  }
  j["sparse_ok"] = r.sparse_ok;
  j["growth_ok"] = r.growth_ok;
  if (r.vanishing_ok) j["vanishing_ok"] = *r.vanishing_ok;
  j["ok"] = r.ok;
  return j;
}

Json clt_report_to_json(const CltReport& r) {
  Json j;
  j["sample_size"] = r.sample_size;
  if (r.statistic.kind == Statistic::Kind::euler) {
    j["statistic"] = {{"kind", "chi"}};
  } else {
    j["statistic"] = {{"kind", "fk"}, {"k", r.statistic.k}};
  }
  j["empirical_mean"] = r.empirical_mean;
  j["empirical_variance"] = r.empirical_variance;
  j["predicted_mean"] = optional_number(r.predicted_mean);
  j["predicted_variance"] = optional_number(r.predicted_variance);
  j["ks"] = r.ks;
  j["ks_critical"] = r.ks_critical;
  j["ks_pass"] = r.ks < r.ks_critical;
  j["ks_predicted"] = optional_number(r.ks_predicted);
  j["skewness"] = r.moments.skewness;
  j["excess_kurtosis"] = r.moments.excess_kurtosis;
  j["jarque_bera"] = r.moments.jarque_bera;

  Json ratios;
  Json var_ratio = Json::array();
  for (const auto& v : r.ratios.variance_ratio) var_ratio.push_back(optional_number(v));
  ratios["var_fk_over_var_f0"] = var_ratio;
  Json cov_ratio = Json::array();
  for (const auto& row : r.ratios.covariance_ratio) {
    Json out = Json::array();
    for (const auto& v : row) out.push_back(optional_number(v));
    cov_ratio.push_back(out);
  }
  ratios["cov_fk_fl_over_var_f0"] = cov_ratio;
  ratios["var_chi_over_var_f0"] = optional_number(r.ratios.chi_ratio);
  ratios["covariance"] = r.ratios.covariance;
  j["variance_ratios"] = ratios;
  j["regime"] = regime_to_json(r.regime);
  j["z"] = r.z;
  if (r.z_predicted) j["z_predicted"] = *r.z_predicted;
  return j;
}

Json depoisson_to_json(const DepoissonReport& r) {
  auto summary = [](const CltReport& c) {
    Json j;
    j["sample_size"] = c.sample_size;
    j["empirical_mean"] = c.empirical_mean;
    j["empirical_variance"] = c.empirical_variance;
    j["predicted_mean"] = optional_number(c.predicted_mean);
    j["predicted_variance"] = optional_number(c.predicted_variance);
    j["ks"] = c.ks;
    j["ks_critical"] = c.ks_critical;
    j["skewness"] = c.moments.skewness;
    j["excess_kurtosis"] = c.moments.excess_kurtosis;
    return j;
  };
  Json j;
  j["binomial"] = summary(r.binomial);
  j["poisson"] = summary(r.poisson);
  j["mean_difference"] = r.mean_difference;
  j["joint_stderr"] = r.joint_stderr;
  j["within_3_stderr"] = std::abs(r.mean_difference) < 3.0 * r.joint_stderr;
  return j;
}

Json estimate_constant_json(const Json& request, unsigned threads) {
  reject_unknown(request, {"kind", "k", "l", "j", "density", "d", "region", "samples", "seed", "shards"},
                 "constants request");
  const std::string kind = as_string(need(request, "kind", "constants request"), "kind");
  const int k = static_cast<int>(as_count(need(request, "k", "constants request"), "k"));
  std::optional<std::size_t> d;
  if (auto it = request.find("d"); it != request.end()) d = static_cast<std::size_t>(as_count(*it, "d"));
  Density density = Density::unit_cube(d.value_or(1));
  if (auto it = request.find("density"); it != request.end()) {
    if (it->is_string()) {
      density = density_from_name(it->get<std::string>(), d.value_or(1));
    } else {
      density = density_from_json(*it);
      if (d && *d != density.dimension()) throw ConfigError("\"d\" does not match the density");
    }
  }
  Region region;
  if (auto it = request.find("region"); it != request.end()) region = region_from_json(*it);
  MonteCarloOptions opt;
  opt.threads = threads;
  if (auto it = request.find("samples"); it != request.end()) opt.samples = as_count(*it, "samples");
  if (auto it = request.find("seed"); it != request.end()) opt.seed = as_count(*it, "seed");
  if (auto it = request.find("shards"); it != request.end()) {
    opt.shards = static_cast<unsigned>(as_count(*it, "shards"));
  }
  if (opt.samples == 0) throw ConfigError("samples must be positive");
  if (opt.shards == 0) throw ConfigError("shards must be positive");

  ConstantEstimate est;
  if (kind == "mu" || kind == "nu") {
    if (request.contains("l") || request.contains("j")) {
      throw ConfigError(kind + " takes no \"l\" or \"j\"");
    }
    est = kind == "mu" ? estimate_mu(k, density, region, opt) : estimate_nu(k, density, region, opt);
  } else if (kind == "phi" || kind == "theta") {
    const int l = static_cast<int>(as_count(need(request, "l", "constants request"), "l"));
    const int j = static_cast<int>(as_count(need(request, "j", "constants request"), "j"));
    if (j < 1 || j > std::min(k, l) + 1) {
      throw ConfigError("j must lie in 1..min(k,l)+1");
    }
    est = kind == "phi" ? estimate_phi(k, l, j, density, region, opt)
                        : estimate_theta(k, l, j, density, region, opt);
  } else {
    throw ConfigError("kind must be one of mu, nu, phi, theta");
  }
  Json out = constant_to_json(est);
  out["params"]["d"] = density.dimension();
  out["params"]["density"] = density_to_json(density);
  out["params"]["seed"] = opt.seed;
  out["params"]["shards"] = opt.shards;
  return out;
}

Json regime_check_json(const Json& request) {
  reject_unknown(request, {"n", "d", "r", "a", "k", "l", "rho", "b", "thresholds"}, "regime request");
  const double n = as_double(need(request, "n", "regime request"), "n");
  const auto d = static_cast<std::size_t>(as_count(need(request, "d", "regime request"), "d"));
  if (!(n > 0.0) || d == 0) throw ConfigError("regime check needs n > 0 and d >= 1");
  if (request.contains("r") == request.contains("a")) {
    throw ConfigError("regime check needs exactly one of r or a");
  }
  const double r = request.contains("r")
                       ? as_double(request["r"], "r")
                       : std::exp(-as_double(request["a"], "a") * std::log(n) / static_cast<double>(d));
  if (!(r > 0.0)) throw ConfigError("r must be positive");
  if (request.contains("k") == request.contains("l")) {
    throw ConfigError("regime check needs exactly one of k (face counts) or l (Euler characteristic)");
  }
  const bool euler = request.contains("l");
  const int order = static_cast<int>(as_count(request[euler ? "l" : "k"], euler ? "l" : "k"));
  if (request.contains("rho") && request.contains("b")) {
    throw ConfigError("regime check takes rho or b, not both");
  }
  std::vector<double> log_rho;
  if (request.contains("rho")) {
    for (double p : as_vector(request["rho"], "rho")) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("rho entries must lie in [0,1]");
      log_rho.push_back(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
    }
  } else if (request.contains("b")) {
    for (double b : as_vector(request["b"], "b")) {
      if (!(b >= 0.0)) throw ConfigError("b entries must be nonnegative");
      log_rho.push_back(-b * std::log(n));
    }
  }
  const std::size_t needed = static_cast<std::size_t>(order) + (euler ? 1 : 0);
  if (log_rho.empty()) log_rho.assign(needed, 0.0);
  if (log_rho.size() < needed) {
    throw ConfigError("regime check needs " + std::to_string(needed) + " retention probabilities");
  }
  RegimeThresholds thresholds;
  if (auto it = request.find("thresholds"); it != request.end()) {
    reject_unknown(*it, {"sparse", "growth", "vanishing"}, "thresholds");
    if (it->contains("sparse")) thresholds.sparse = as_double((*it)["sparse"], "sparse");
    if (it->contains("growth")) thresholds.growth = as_double((*it)["growth"], "growth");
    if (it->contains("vanishing")) thresholds.vanishing = as_double((*it)["vanishing"], "vanishing");
  }
  return regime_to_json(regime_check(n, r, d, log_rho,
                                     euler ? RegimeMode::euler : RegimeMode::face_count, order,
                                     thresholds));
}

Json resolve_config(const Json& config, const Json& overrides) {
  Json merged = config;
  if (!merged.is_object()) throw ConfigError("config must be a JSON object");
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw ConfigError("overrides must be a JSON object");
    for (const auto& item : overrides.items()) merged[item.key()] = item.value();
  }
  return config_to_json(config_from_json(merged));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_points_csv(std::ostream& out, const PointCloud& cloud) {
  const std::size_t d = cloud.dimension();
  for (std::size_t c = 0; c < d; ++c) out << (c ? "," : "") << 'x' << c;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t c = 0; c < d; ++c) out << (c ? "," : "") << format_double(p[c]);
    out << '\n';
  }
}

void write_results_csv(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<ReplicationResult>& results, bool timing) {
  out << "# " << config_to_json(config).dump() << '\n';
  out << "rep";
  for (std::size_t k = 0; k <= config.k_max; ++k) out << ",f" << k;
  out << ",chi,n_points,seconds\n";
  for (const auto& rep : results) {
    out << rep.index;
    for (auto f : rep.f) out << ',' << f;
    out << ',' << rep.chi << ',' << rep.n_points << ',' << format_double(timing ? rep.seconds : 0.0)
        << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line) {
  T value{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InputError("results CSV line " + std::to_string(line) + ": bad number \"" + s + "\"");
  }
  return value;
}

}  // namespace

ResultsFile read_results_csv(std::istream& in) {
  ResultsFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!have_header && !file.config) {
        auto text = std::string_view(line).substr(1);
        file.config = parse_json(text, "results CSV header");
      }
      continue;
    }
    const auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < 5 || cells[0] != "rep" || cells[cells.size() - 3] != "chi" ||
          cells[cells.size() - 2] != "n_points" || cells.back() != "seconds") {
        throw InputError("results CSV: unexpected header");
      }
      columns = cells.size();
      file.k_max = columns - 5;
      for (std::size_t k = 0; k <= file.k_max; ++k) {
        if (cells[1 + k] != "f" + std::to_string(k)) throw InputError("results CSV: unexpected header");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != columns) {
      throw InputError("results CSV line " + std::to_string(line_no) + ": wrong column count");
    }
    ReplicationResult rep;
    rep.index = parse_number<std::size_t>(cells[0], line_no);
    for (std::size_t k = 0; k <= file.k_max; ++k) {
      rep.f.push_back(parse_number<std::uint64_t>(cells[1 + k], line_no));
    }
    rep.chi = parse_number<std::int64_t>(cells[columns - 3], line_no);
    rep.n_points = parse_number<std::uint64_t>(cells[columns - 2], line_no);
    rep.seconds = parse_number<double>(cells[columns - 1], line_no);
    if (rep.chi != euler_characteristic(rep.f)) {
      throw InputError("results CSV line " + std::to_string(line_no) + ": chi disagrees with f");
    }
    file.results.push_back(std::move(rep));
  }
  if (!have_header) throw InputError("results CSV: missing header");
  return file;
}

}  // namespace softplex
