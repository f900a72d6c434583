// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#include "softplex/softplex.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "softplex/complex.hpp"
#include "softplex/error.hpp"
#include "softplex/experiment.hpp"
#include "softplex/geometry.hpp"
#include "softplex/json_io.hpp"
#include "softplex/miniball.hpp"
#include "softplex/point_process.hpp"
#include "softplex/stats.hpp"

struct sp_density {
  softplex::Density value;
};
struct sp_cloud {
  std::shared_ptr<const softplex::PointCloud> value;
};
struct sp_graph {
  softplex::GeometricGraph value;
};
struct sp_complex {
  softplex::SimplicialComplex value;
};
struct sp_results {
  std::optional<softplex::Json> config;
  std::size_t k_max = 0;
  std::vector<softplex::ReplicationResult> rows;
};

namespace {

using softplex::Json;

thread_local std::string last_error;

sp_status fail(sp_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
sp_status guarded(F&& body) noexcept {
  try {
    body();
    last_error.clear();
    return SP_OK;
  } catch (const softplex::ConfigError& e) {
    return fail(SP_ERR_CONFIG, e.what());
  } catch (const softplex::InputError& e) {
    return fail(SP_ERR_INPUT, e.what());
  } catch (const softplex::RefusalError& e) {
    return fail(SP_ERR_REFUSED, e.what());
  } catch (const softplex::IoError& e) {
    return fail(SP_ERR_IO, e.what());
  } catch (const softplex::DegenerateSampleError& e) {
    return fail(SP_ERR_DEGENERATE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SP_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SP_ERR_REFUSED, "out of memory");
  } catch (const std::exception& e) {
    return fail(SP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw softplex::InputError(what);
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Writer>
void write_file(const char* path, Writer&& writer) {
  require(path != nullptr, "null path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw softplex::IoError(std::string("cannot open ") + path + " for writing");
  writer(out);
  out.flush();
  if (!out) throw softplex::IoError(std::string("failed writing ") + path);
}

void write_comment(std::ostream& os, const char* comment) {
  if (!comment) return;
  os << "# ";
  for (const char* p = comment; *p; ++p) os << (*p == '\n' ? ' ' : *p);
  os << '\n';
}

Json parse_arg(const char* text, const char* source) {
  require(text != nullptr, "null JSON text");
  return softplex::parse_json(text, source);
}

}  // namespace

extern "C" {

const char* sp_version(void) { return "0.1.0"; }

const char* sp_last_error(void) { return last_error.c_str(); }

void sp_string_free(char* s) { delete[] s; }

sp_status sp_density_from_json(const char* json, sp_density** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new sp_density{softplex::density_from_json(parse_arg(json, "density"))};
  });
}

sp_status sp_density_named(const char* name, size_t d, sp_density** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new sp_density{softplex::density_from_name(name, d)};
  });
}

sp_status sp_density_eval(const sp_density* f, const double* x, size_t d, double* out) {
  return guarded([&] {
    require(f && x && out, "null argument");
    *out = f->value(std::span<const double>(x, d));
  });
}

sp_status sp_density_sup_norm(const sp_density* f, double* out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = f->value.sup_norm();
  });
}

size_t sp_density_dimension(const sp_density* f) { return f ? f->value.dimension() : 0; }

void sp_density_free(sp_density* f) { delete f; }

sp_status sp_sample_binomial(uint64_t n, const sp_density* f, uint64_t seed, sp_cloud** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = new sp_cloud{std::make_shared<const softplex::PointCloud>(
        softplex::sample_binomial(n, f->value, seed))};
  });
}

sp_status sp_sample_poisson(double lambda, const sp_density* f, uint64_t seed, sp_cloud** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = new sp_cloud{std::make_shared<const softplex::PointCloud>(
        softplex::sample_poisson(lambda, f->value, seed))};
  });
}

sp_status sp_cloud_from_points(const double* coords, size_t n, size_t d, sp_cloud** out) {
  return guarded([&] {
    require(out != nullptr && (coords != nullptr || n == 0), "null argument");
    require(d > 0, "dimension must be positive");
    std::vector<double> values(coords, coords + n * d);
    *out = new sp_cloud{std::make_shared<const softplex::PointCloud>(
        d, std::move(values),
        softplex::Provenance{softplex::ProcessKind::binomial, static_cast<double>(n)}, 0)};
  });
}

size_t sp_cloud_size(const sp_cloud* cloud) { return cloud ? cloud->value->size() : 0; }

size_t sp_cloud_dimension(const sp_cloud* cloud) { return cloud ? cloud->value->dimension() : 0; }

const double* sp_cloud_coords(const sp_cloud* cloud) {
  return cloud ? cloud->value->coords().data() : nullptr;
}

sp_status sp_cloud_write_csv(const sp_cloud* cloud, const char* path, const char* comment) {
  return guarded([&] {
    require(cloud != nullptr, "null cloud");
    write_file(path, [&](std::ostream& os) {
      write_comment(os, comment);
      softplex::write_points_csv(os, *cloud->value);
    });
  });
}

sp_status sp_leftmost_point(const sp_cloud* cloud, const uint32_t* vertices, size_t count,
                            uint32_t* out) {
  return guarded([&] {
    require(cloud && out && (vertices || count == 0), "null argument");
    *out = softplex::leftmost_point(std::span<const uint32_t>(vertices, count), *cloud->value);
  });
}

void sp_cloud_free(sp_cloud* cloud) { delete cloud; }

sp_status sp_graph_build(const sp_cloud* cloud, double r, double p1, uint64_t seed,
                         sp_graph** out) {
  return guarded([&] {
    require(cloud && out, "null argument");
    std::optional<double> retention;
    if (p1 >= 0.0) retention = p1;
    *out = new sp_graph{softplex::build_graph(cloud->value, r, retention, seed)};
  });
}

size_t sp_graph_edge_count(const sp_graph* g) { return g ? g->value.edges().size() : 0; }

sp_status sp_graph_edges(const sp_graph* g, uint32_t* pairs, size_t capacity) {
  return guarded([&] {
    require(g && (pairs || capacity == 0), "null argument");
    const auto& edges = g->value.edges();
    for (size_t e = 0; e < edges.size() && e < capacity; ++e) {
      pairs[2 * e] = edges[e].i;
      pairs[2 * e + 1] = edges[e].j;
    }
  });
}

sp_status sp_graph_write_csv(const sp_graph* g, const char* path, const char* comment) {
  return guarded([&] {
    require(g != nullptr, "null graph");
    write_file(path, [&](std::ostream& os) {
      write_comment(os, comment);
      softplex::write_edges_csv(os, g->value);
    });
  });
}

void sp_graph_free(sp_graph* g) { delete g; }

sp_status sp_complex_build(const sp_graph* g, sp_flavor flavor, size_t kmax, uint64_t max_faces,
                           sp_complex** out) {
  return guarded([&] {
    require(g && out, "null argument");
    softplex::BuildLimits limits;
    if (max_faces > 0) limits.max_faces = max_faces;
    if (flavor == SP_RIPS) {
      *out = new sp_complex{softplex::build_rips(g->value, kmax, limits)};
    } else if (flavor == SP_CECH) {
      *out = new sp_complex{softplex::build_cech(g->value, kmax, limits)};
    } else {
      throw softplex::InputError("unknown complex flavor");
    }
  });
}

sp_status sp_complex_thin(const sp_complex* c, const double* rho, size_t length, uint64_t seed,
                          sp_complex** out) {
  return guarded([&] {
    require(c && out && (rho || length == 0), "null argument");
    softplex::RhoVector p(std::vector<double>(rho, rho + length));
    *out = new sp_complex{softplex::soft_thin(c->value, p, seed)};
  });
}

size_t sp_complex_kmax(const sp_complex* c) { return c ? c->value.k_max() : 0; }

size_t sp_complex_face_count(const sp_complex* c, size_t k) {
  return c ? c->value.face_count(k) : 0;
}

sp_status sp_complex_faces(const sp_complex* c, size_t k, uint32_t* out, size_t capacity) {
  return guarded([&] {
    require(c && (out || capacity == 0), "null argument");
    require(k <= c->value.k_max(), "dimension exceeds kmax");
    auto flat = c->value.faces(k);
    const size_t n = std::min(capacity, c->value.face_count(k)) * (k + 1);
    std::copy(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n), out);
  });
}

sp_status sp_complex_face_counts(const sp_complex* c, const char* region_json, uint64_t* out_f,
                                 size_t capacity, int64_t* out_chi) {
  return guarded([&] {
    require(c && out_f, "null argument");
    require(capacity >= c->value.k_max() + 1, "output buffer holds fewer than kmax+1 values");
    softplex::Region region;
    if (region_json) region = softplex::region_from_json(parse_arg(region_json, "region"));
    const auto counts = softplex::face_counts(c->value, region);
    std::copy(counts.f.begin(), counts.f.end(), out_f);
    if (out_chi) *out_chi = softplex::euler_characteristic(counts);
  });
}

sp_status sp_complex_write_csv(const sp_complex* c, size_t k, const char* path,
                               const char* comment) {
  return guarded([&] {
    require(c != nullptr, "null complex");
    require(k <= c->value.k_max(), "dimension exceeds kmax");
    write_file(path, [&](std::ostream& os) {
      write_comment(os, comment);
      softplex::write_faces_csv(os, c->value, k);
    });
  });
}

void sp_complex_free(sp_complex* c) { delete c; }

sp_status sp_euler_characteristic(const uint64_t* f, size_t length, int64_t* out) {
  return guarded([&] {
    require(out && (f || length == 0), "null argument");
    *out = softplex::euler_characteristic(std::span<const uint64_t>(f, length));
  });
}

sp_status sp_retention_exponent(int k, int l, int j, int i, int64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = softplex::retention_exponent(k, l, j, i);
  });
}

sp_status sp_min_enclosing_ball_radius(const double* coords, size_t count, size_t d, double* out) {
  return guarded([&] {
    require(coords && out, "null argument");
    require(d > 0, "dimension must be positive");
    *out = softplex::min_enclosing_ball_radius(std::span<const double>(coords, count * d), d);
  });
}

sp_status sp_constants_estimate(const char* request_json, unsigned threads, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    const Json reply =
        softplex::estimate_constant_json(parse_arg(request_json, "constants request"), threads);
    *out_json = duplicate(reply.dump(2));
  });
}

sp_status sp_regime_check(const char* request_json, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    *out_json = duplicate(softplex::regime_check_json(parse_arg(request_json, "regime request")).dump(2));
  });
}

sp_status sp_config_resolve(const char* text, const char* source, const char* overrides_json,
                            char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    const Json config = parse_arg(text, source ? source : "config");
    Json overrides;
    if (overrides_json) overrides = parse_arg(overrides_json, "overrides");
    *out_json = duplicate(softplex::resolve_config(config, overrides).dump());
  });
}

sp_status sp_experiment_run(const char* config_json, unsigned threads, sp_results** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto config = softplex::config_from_json(parse_arg(config_json, "config"));
    auto results = std::make_unique<sp_results>();
    results->config = softplex::config_to_json(config);
    results->k_max = config.k_max;
    results->rows = softplex::run_experiment(config, threads);
    *out = results.release();
  });
}

sp_status sp_results_write_csv(const sp_results* r, const char* path, int timing) {
  return guarded([&] {
    require(r != nullptr, "null results");
    require(r->config.has_value(), "results carry no config");
    const auto config = softplex::config_from_json(*r->config);
    write_file(path, [&](std::ostream& os) {
      softplex::write_results_csv(os, config, r->rows, timing != 0);
    });
  });
}

sp_status sp_results_read_csv(const char* path, sp_results** out) {
  return guarded([&] {
    require(path && out, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw softplex::IoError(std::string("cannot open ") + path);
    auto file = softplex::read_results_csv(in);
    auto results = std::make_unique<sp_results>();
    results->config = std::move(file.config);
    results->k_max = file.k_max;
    results->rows = std::move(file.results);
    *out = results.release();
  });
}

size_t sp_results_count(const sp_results* r) { return r ? r->rows.size() : 0; }

size_t sp_results_kmax(const sp_results* r) { return r ? r->k_max : 0; }

sp_status sp_results_row(const sp_results* r, size_t index, uint64_t* f, size_t capacity,
                         int64_t* chi, uint64_t* n_points) {
  return guarded([&] {
    require(r != nullptr, "null results");
    require(index < r->rows.size(), "row index out of range");
    const auto& row = r->rows[index];
    if (f) {
      require(capacity >= row.f.size(), "output buffer holds fewer than kmax+1 values");
      std::copy(row.f.begin(), row.f.end(), f);
    }
    if (chi) *chi = row.chi;
    if (n_points) *n_points = row.n_points;
  });
}

sp_status sp_results_config(const sp_results* r, char** out_json) {
  return guarded([&] {
    require(r && out_json, "null argument");
    require(r->config.has_value(), "results carry no config");
    *out_json = duplicate(r->config->dump());
  });
}

sp_status sp_experiment_report(const char* config_json, const sp_results* r, unsigned threads,
                               const char* qq_path, char** out_json) {
  return guarded([&] {
    require(r && out_json, "null argument");
    Json config_doc;
    if (config_json) {
      config_doc = parse_arg(config_json, "config");
    } else {
      require(r->config.has_value(), "results carry no config; pass one explicitly");
      config_doc = *r->config;
    }
    const auto config = softplex::config_from_json(config_doc);
    if (config.k_max != r->k_max) {
      throw softplex::ConfigError("config kmax does not match the results file");
    }
    const auto report = softplex::clt_report(config, r->rows, nullptr, threads);
    if (qq_path) {
      write_file(qq_path, [&](std::ostream& os) {
        os << "theoretical,empirical\n";
        for (const auto& [t, e] : softplex::qq_points(report.z)) {
          os << softplex::format_double(t) << ',' << softplex::format_double(e) << '\n';
        }
      });
    }
    Json doc;
    doc["config"] = softplex::config_to_json(config);
    doc["report"] = softplex::clt_report_to_json(report);
    *out_json = duplicate(doc.dump(2));
  });
}

sp_status sp_experiment_depoisson(const char* config_json, unsigned threads, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null output");
    const auto config = softplex::config_from_json(parse_arg(config_json, "config"));
    Json doc;
    doc["config"] = softplex::config_to_json(config);
    doc["comparison"] = softplex::depoisson_to_json(softplex::depoisson_compare(config, threads));
    *out_json = duplicate(doc.dump(2));
  });
}

void sp_results_free(sp_results* r) { delete r; }

sp_status sp_normalize(const double* x, size_t count, int mode, double mean, double variance,
                       double* out) {
  return guarded([&] {
    require(x && out, "null argument");
    softplex::Normalization norm;
    if (mode == 1) {
      norm = softplex::Normalization::predicted(mean, variance);
    } else {
      require(mode == 0, "mode must be 0 (empirical) or 1 (predicted)");
    }
    const auto z = softplex::normalize(std::span<const double>(x, count), norm);
    std::copy(z.begin(), z.end(), out);
  });
}

sp_status sp_ks_statistic(const double* z, size_t count, double* out) {
  return guarded([&] {
    require(z && out, "null argument");
    *out = softplex::ks_statistic(std::span<const double>(z, count));
  });
}

sp_status sp_moment_diagnostics(const double* z, size_t count, double* skewness,
                                double* excess_kurtosis, double* jarque_bera) {
  return guarded([&] {
    require(z != nullptr, "null argument");
    const auto m = softplex::moment_diagnostics(std::span<const double>(z, count));
    if (skewness) *skewness = m.skewness;
    if (excess_kurtosis) *excess_kurtosis = m.excess_kurtosis;
    if (jarque_bera) *jarque_bera = m.jarque_bera;
  });
}

}  // extern "C"
