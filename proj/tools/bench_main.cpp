// bench: runs the built-in integrands through the hp-adaptive integrator.
//
//   bench run [--case NAME|all] [--tol X] [--tau X] [--pmax N] [--pinit N]
//             [--emit-mesh PATH --format csv|json] [--emit-graph PATH --samples N]
//             [--compare-simpson] [--json]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hpquad/bench.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hpquad;

// With several cases, "mesh.csv" becomes "mesh_f1.csv", "mesh_f2.csv", ...
fs::path per_case_path(const fs::path& base, const std::string& name, bool multiple) {
  if (!multiple) return base;
  fs::path out = base;
  out.replace_filename(base.stem().string() + "_" + name + base.extension().string());
  return out;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hp-adaptive quadrature benchmarks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "integrate benchmark cases and print a report");
  std::string case_name = "all";
  AdaptiveConfig cfg;
  std::string mesh_path;
  std::string mesh_format = "csv";
  std::string graph_path;
  int samples = 1000;
  bool compare_simpson = false;
  bool json = false;

  run->add_option("--case", case_name, "f1..f5 or all")->capture_default_str();
  run->add_option("--tol", cfg.tol, "tolerance")->capture_default_str();
  run->add_option("--tau", cfg.tau, "smoothness threshold")->capture_default_str();
  run->add_option("--pmax", cfg.p_max, "maximal points per segment")->capture_default_str();
  run->add_option("--pinit", cfg.p_init, "initial points")->capture_default_str();
  run->add_option("--max-passes", cfg.max_passes, "pass limit")->capture_default_str();
  run->add_option("--emit-mesh", mesh_path, "write the final hp-mesh here");
  run->add_option("--format", mesh_format, "mesh format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run->add_option("--emit-graph", graph_path, "write (x, f(x)) samples here");
  run->add_option("--samples", samples, "graph sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_flag("--compare-simpson", compare_simpson, "also run the adaptive Simpson baseline");
  run->add_flag("--json", json, "print a JSON report instead of the table");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
    std::vector<bench::BenchmarkCase> cases;
    if (case_name == "all") {
      cases = bench::presets();
    } else {
      cases.push_back(bench::preset(case_name));
    }
    const bool multiple = cases.size() > 1;

    const auto report = bench::run_benchmarks(cases, cfg, {compare_simpson});
    if (json) {
      std::cout << bench::report_json(report);
    } else {
      bench::print_report(std::cout, report);
    }

    if (!mesh_path.empty()) {
      const auto format = bench::parse_mesh_format(mesh_format);
      for (const auto& row : report.rows) {
        if (!row.ok) continue;
        write_file(per_case_path(mesh_path, row.name, multiple),
                   bench::emit_mesh(row.result, format));
      }
    }
    if (!graph_path.empty()) {
      for (const auto& c : cases) {
        write_file(per_case_path(graph_path, c.name, multiple), bench::emit_graph(c, samples));
      }
    }
    return report.all_ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 2;
  }
}
