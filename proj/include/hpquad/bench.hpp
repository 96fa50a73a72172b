#pragma once

// Benchmark presets f1..f5 on [0, 1], report generation, and CSV/JSON
// emitters for hp-meshes and function graphs.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hpquad/hp_adaptive.hpp"

namespace hpquad::bench {

double f1(double x);
double f2(double x);
double f3(double x);
double f4(double x);
double f5(double x);

/// sech(y) = 2 e^{-|y|} / (1 + e^{-2|y|}); finite for every finite y.
double sech(double y);

struct BenchmarkCase {
  std::string name;
  std::function<double(double)> integrand;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> exact_value;
  std::string exact_note;
};

/// The five built-in cases, in order f1..f5.
const std::vector<BenchmarkCase>& presets();

/// Looks up a preset by name; throws std::invalid_argument if unknown.
const BenchmarkCase& preset(const std::string& name);

struct CaseRow {
  std::string name;
  bool ok = false;
  std::string error;
  double value = 0.0;
  std::optional<double> exact;
  std::optional<double> abs_error;
  std::optional<double> rel_error;
  IntegrationStats stats;
  double wall_time = 0.0;  // seconds, integrate call only
  std::optional<double> simpson_value;
  std::optional<std::size_t> simpson_scalar_evals;
  std::vector<std::string> warnings;
  IntegrationResult result;
};

struct RunReport {
  std::vector<CaseRow> rows;
  bool all_ok() const;
};

struct RunOptions {
  bool compare_simpson = true;
};

RunReport run_benchmarks(const std::vector<BenchmarkCase>& cases, const AdaptiveConfig& cfg,
                         const RunOptions& opts = {});

enum class MeshFormat { Csv, Json };

MeshFormat parse_mesh_format(const std::string& s);

/// CSV `a,b,p` rows with a header, or a JSON array of {a,b,p}. 17 significant digits.
std::string emit_mesh(const IntegrationResult& result, MeshFormat format);
std::string emit_mesh(const HpMesh& mesh, MeshFormat format);

/// Inverse of emit_mesh.
HpMesh parse_mesh(const std::string& text, MeshFormat format);

/// CSV `x,f` at `samples` uniform points on [a, b]; non-finite values leave the f field empty.
std::string emit_graph(const BenchmarkCase& c, int samples);

void print_report(std::ostream& os, const RunReport& report);
std::string report_json(const RunReport& report);

}  // namespace hpquad::bench
