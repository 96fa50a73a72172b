#include "hpquad/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hpquad/simpson.hpp"

namespace hpquad::bench {

double sech(double y) {
  const double t = std::exp(-std::abs(y));
  return 2.0 * t / (1.0 + t * t);
}

double f1(double x) { return std::exp(x); }

double f2(double x) { return std::sqrt(std::abs(x - 1.0 / 3.0)); }

double f3(double x) {
  const double s1 = sech(10.0 * (x - 0.2));
  const double s2 = sech(100.0 * (x - 0.4));
  const double s3 = sech(1000.0 * (x - 0.6));
  const double s4 = sech(1000.0 * (x - 0.8));
  const double s2sq = s2 * s2;
  const double s3sq = s3 * s3;
  const double s4sq = s4 * s4;
  return s1 * s1 + s2sq * s2sq + s3sq * s3sq * s3sq + (s4sq * s4sq) * (s4sq * s4sq);
}

double f4(double x) { return std::cos(1000.0 * x); }

double f5(double x) { return x <= 1.0 / 3.0 ? 0.0 : 1.0; }

namespace {

// Antiderivatives of sech^{2n}(u) in t = tanh(u).
long double sech_power_antiderivative(int two_n, long double u) {
  const long double t = std::tanh(u);
  const long double t3 = t * t * t;
  const long double t5 = t3 * t * t;
  const long double t7 = t5 * t * t;
  switch (two_n) {
    case 2: return t;
    case 4: return t - t3 / 3;
    case 6: return t - 2 * t3 / 3 + t5 / 5;
    case 8: return t - t3 + 3 * t5 / 5 - t7 / 7;
  }
  throw std::logic_error("unsupported sech power");
}

double f3_exact() {
  auto term = [](long double k, long double c, int power) {
    return (sech_power_antiderivative(power, k * (1 - c)) -
            sech_power_antiderivative(power, k * (0 - c))) /
           k;
  };
  const long double v = term(10, 0.2L, 2) + term(100, 0.4L, 4) + term(1000, 0.6L, 6) +
                        term(1000, 0.8L, 8);
  return static_cast<double>(v);
}

std::vector<BenchmarkCase> make_presets() {
  const long double third = 1.0L / 3.0L;
  const long double twothirds = 2.0L / 3.0L;
  std::vector<BenchmarkCase> out;
  out.push_back({"f1", f1, 0.0, 1.0, static_cast<double>(std::expm1(1.0L)), "e - 1"});
  out.push_back({"f2", f2, 0.0, 1.0,
                 static_cast<double>(twothirds * (std::pow(third, 1.5L) + std::pow(twothirds, 1.5L))),
                 "antiderivative split at 1/3"});
  out.push_back({"f3", f3, 0.0, 1.0, f3_exact(), "tanh-polynomial antiderivatives of sech powers"});
  out.push_back({"f4", f4, 0.0, 1.0, static_cast<double>(std::sin(1000.0L) / 1000.0L),
                 "sin(1000)/1000"});
  out.push_back({"f5", f5, 0.0, 1.0, static_cast<double>(twothirds), "length of (1/3, 1]"});
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<BenchmarkCase>& presets() {
  static const std::vector<BenchmarkCase> cases = make_presets();
  return cases;
}

const BenchmarkCase& preset(const std::string& name) {
  for (const auto& c : presets()) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown benchmark case '" + name + "'");
}

bool RunReport::all_ok() const {
  for (const auto& r : rows) {
    if (!r.ok) return false;
  }
  return true;
}

RunReport run_benchmarks(const std::vector<BenchmarkCase>& cases, const AdaptiveConfig& cfg,
                         const RunOptions& opts) {
  RunReport report;
  std::optional<RuleTables> tables;
  for (const auto& c : cases) {
    CaseRow row;
    row.name = c.name;
    row.exact = c.exact_value;
    try {
      if (!tables) {
        cfg.validate();
        tables.emplace(cfg.p_max);
      }
      const auto f = vectorize(c.integrand);
      const auto start = std::chrono::steady_clock::now();
      auto result = integrate(f, c.a, c.b, cfg, *tables);
      const auto stop = std::chrono::steady_clock::now();
      row.wall_time = std::chrono::duration<double>(stop - start).count();
      row.value = result.value;
      row.stats = result.stats;
      row.warnings = result.warnings;
      if (c.exact_value) {
        row.abs_error = std::abs(result.value - *c.exact_value);
        row.rel_error = *c.exact_value != 0.0 ? *row.abs_error / std::abs(*c.exact_value)
                                              : *row.abs_error;
      }
      row.result = std::move(result);
      if (opts.compare_simpson) {
        const auto s = simpson_adaptive(c.integrand, c.a, c.b, cfg.tol);
        row.simpson_value = s.value;
        row.simpson_scalar_evals = s.stats.scalar_evals;
      }
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

MeshFormat parse_mesh_format(const std::string& s) {
  if (s == "csv") return MeshFormat::Csv;
  if (s == "json") return MeshFormat::Json;
  throw std::invalid_argument("unknown mesh format '" + s + "' (expected csv or json)");
}

std::string emit_mesh(const HpMesh& mesh, MeshFormat format) {
  if (mesh.entries.empty()) throw std::invalid_argument("emit_mesh: empty mesh");
  if (format == MeshFormat::Csv) {
    std::string out = "a,b,p\n";
    for (const auto& e : mesh.entries) {
      out += num(e.a) + "," + num(e.b) + "," + std::to_string(e.p) + "\n";
    }
    return out;
  }
  // Numbers are written by hand so that 17 significant digits are kept.
  std::string out = "[\n";
  for (std::size_t i = 0; i < mesh.entries.size(); ++i) {
    const auto& e = mesh.entries[i];
    out += "  {\"a\": " + num(e.a) + ", \"b\": " + num(e.b) + ", \"p\": " + std::to_string(e.p) +
           "}";
    out += (i + 1 < mesh.entries.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

std::string emit_mesh(const IntegrationResult& result, MeshFormat format) {
  return emit_mesh(result.mesh, format);
}

HpMesh parse_mesh(const std::string& text, MeshFormat format) {
  HpMesh mesh;
  if (format == MeshFormat::Json) {
    const auto j = nlohmann::json::parse(text);
    for (const auto& e : j) {
      mesh.entries.push_back({e.at("a").get<double>(), e.at("b").get<double>(), e.at("p").get<int>()});
    }
    return mesh;
  }
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == "a,b,p") continue;
    }
    std::istringstream ls(line);
    std::string a, b, p;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, p)) {
      throw std::invalid_argument("parse_mesh: malformed row '" + line + "'");
    }
    mesh.entries.push_back({std::stod(a), std::stod(b), std::stoi(p)});
  }
  return mesh;
}

std::string emit_graph(const BenchmarkCase& c, int samples) {
  if (samples < 2) throw std::invalid_argument("emit_graph: need at least 2 samples");
  std::string out = "x,f\n";
  for (int i = 0; i < samples; ++i) {
    const double x = (i + 1 == samples) ? c.b : c.a + (c.b - c.a) * i / (samples - 1);
    const double y = c.integrand(x);
    out += num(x) + ",";
    if (std::isfinite(y)) out += num(y);
    out += "\n";
  }
  return out;
}

void print_report(std::ostream& os, const RunReport& report) {
  const auto flags = os.flags();
  os << std::left << std::setw(5) << "case" << std::right << std::setw(24) << "value"
     << std::setw(11) << "rel.err" << std::setw(8) << "calls" << std::setw(9) << "evals"
     << std::setw(7) << "passes" << std::setw(11) << "time[s]" << std::setw(12) << "simpson"
     << "\n";
  for (const auto& r : report.rows) {
    os << std::left << std::setw(5) << r.name << std::right;
    if (!r.ok) {
      os << "  FAILED: " << r.error << "\n";
      continue;
    }
    os << std::setw(24) << std::setprecision(17) << std::defaultfloat << r.value;
    if (r.rel_error) {
      os << std::setw(11) << std::setprecision(2) << std::scientific << *r.rel_error;
    } else {
      os << std::setw(11) << "-";
    }
    os << std::defaultfloat << std::setw(8) << r.stats.vector_calls << std::setw(9)
       << r.stats.scalar_evals << std::setw(7) << r.stats.passes << std::setw(11)
       << std::setprecision(4) << std::fixed << r.wall_time << std::defaultfloat;
    if (r.simpson_scalar_evals) {
      os << std::setw(12) << *r.simpson_scalar_evals;
    } else {
      os << std::setw(12) << "-";
    }
    os << "\n";
    for (const auto& w : r.warnings) os << "      warning: " << w << "\n";
  }
  os.flags(flags);
}

std::string report_json(const RunReport& report) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["case"] = r.name;
    row["ok"] = r.ok;
    if (!r.ok) {
      row["error"] = r.error;
      j.push_back(row);
      continue;
    }
    row["value"] = r.value;
    if (r.exact) row["exact"] = *r.exact;
    if (r.abs_error) row["abs_error"] = *r.abs_error;
    if (r.rel_error) row["rel_error"] = *r.rel_error;
    row["vector_calls"] = r.stats.vector_calls;
    row["scalar_evals"] = r.stats.scalar_evals;
    row["passes"] = r.stats.passes;
    row["h_refinements"] = r.stats.h_refinements;
    row["p_refinements"] = r.stats.p_refinements;
    row["saturated_splits"] = r.stats.saturated_splits;
    row["forced_accepts"] = r.stats.forced_accepts;
    row["segments"] = r.result.mesh.entries.size();
    row["wall_time"] = r.wall_time;
    if (r.simpson_value) row["simpson_value"] = *r.simpson_value;
    if (r.simpson_scalar_evals) row["simpson_scalar_evals"] = *r.simpson_scalar_evals;
    row["warnings"] = r.warnings;
    j.push_back(row);
  }
  return j.dump(2) + "\n";
}

}  // namespace hpquad::bench
