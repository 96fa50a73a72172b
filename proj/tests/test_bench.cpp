#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "hpquad/bench.hpp"

using namespace hpquad;
using namespace hpquad::bench;

TEST_CASE("presets match hand-coded formulas") {
  auto sech_ref = [](double y) { return 1.0 / std::cosh(y); };
  const double probes[] = {0.0, 0.05, 0.2, 0.3333, 0.3334, 0.4, 0.5999, 0.6, 0.8001, 1.0};
  for (double x : probes) {
    CAPTURE(x);
    CHECK(f1(x) == doctest::Approx(std::exp(x)).epsilon(1e-15));
    CHECK(f2(x) == doctest::Approx(std::sqrt(std::fabs(x - 1.0 / 3.0))).epsilon(1e-15));
    const double f3_ref = std::pow(sech_ref(10 * (x - 0.2)), 2) + std::pow(sech_ref(100 * (x - 0.4)), 4) +
                          std::pow(sech_ref(1000 * (x - 0.6)), 6) + std::pow(sech_ref(1000 * (x - 0.8)), 8);
    CHECK(f3(x) == doctest::Approx(f3_ref).epsilon(1e-14));
    CHECK(f4(x) == doctest::Approx(std::cos(1000 * x)).epsilon(1e-15));
    CHECK(f5(x) == (x <= 1.0 / 3.0 ? 0.0 : 1.0));
  }
  CHECK(f5(1.0 / 3.0) == 0.0);
  CHECK(std::isfinite(f3(-1e6)));
  CHECK(std::isfinite(sech(1e4)));
  CHECK(sech(0.0) == 1.0);
}

TEST_CASE("preset reference values") {
  CHECK(preset("f1").exact_value.value() == doctest::Approx(1.718281828459045).epsilon(1e-15));
  CHECK(preset("f2").exact_value.value() == doctest::Approx(0.4911874291).epsilon(1e-9));
  // High-precision adaptive quadrature of f3 (30 digits), computed offline.
  CHECK(preset("f3").exact_value.value() == doctest::Approx(0.21171702121483499).epsilon(1e-14));
  CHECK(preset("f4").exact_value.value() == doctest::Approx(8.26879540532003e-4).epsilon(1e-13));
  CHECK(preset("f5").exact_value.value() == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(presets().size() == 5);
  CHECK_THROWS_AS(preset("f6"), std::invalid_argument);
}

TEST_CASE("run_benchmarks rows") {
  const auto report = run_benchmarks({preset("f1"), preset("f2"), preset("f5")}, AdaptiveConfig{});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.all_ok());
  CHECK(*report.rows[0].rel_error <= 1e-14);
  CHECK(std::abs(report.rows[1].value - 0.4911874291211286) <= 1e-13);
  CHECK(*report.rows[2].abs_error <= 1e-12);
  for (const auto& r : report.rows) {
    CHECK(r.simpson_scalar_evals.has_value());
    CHECK(r.stats.scalar_evals == r.result.stats.scalar_evals);
  }

  const auto no_simpson = run_benchmarks({preset("f1")}, AdaptiveConfig{}, {false});
  CHECK_FALSE(no_simpson.rows[0].simpson_scalar_evals.has_value());
}

TEST_CASE("a failing case does not stop the suite") {
  BenchmarkCase broken{"broken", [](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, {}, ""};
  BenchmarkCase backwards{"backwards", f1, 1.0, 0.0, {}, ""};
  const auto report = run_benchmarks({broken, preset("f1"), backwards}, AdaptiveConfig{});
  REQUIRE(report.rows.size() == 3);
  CHECK_FALSE(report.rows[0].ok);
  CHECK_FALSE(report.rows[0].error.empty());
  CHECK(report.rows[1].ok);
  CHECK_FALSE(report.rows[2].ok);
  CHECK_FALSE(report.all_ok());
  CHECK_FALSE(report.rows[0].rel_error.has_value());
}

TEST_CASE("mesh emission") {
  HpMesh one{{{0.0, 1.0, 5}}};
  CHECK(emit_mesh(one, MeshFormat::Csv) == "a,b,p\n0,1,5\n");
  CHECK(emit_mesh(one, MeshFormat::Json) == "[\n  {\"a\": 0, \"b\": 1, \"p\": 5}\n]\n");
  CHECK_THROWS_AS(emit_mesh(HpMesh{}, MeshFormat::Csv), std::invalid_argument);
  CHECK(parse_mesh_format("json") == MeshFormat::Json);
  CHECK_THROWS_AS(parse_mesh_format("xml"), std::invalid_argument);
}

TEST_CASE("mesh round trip is lossless") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> p(2, 15);
  for (int trial = 0; trial < 20; ++trial) {
    HpMesh m;
    double a = -u(rng);
    for (int k = 0; k < 1 + trial; ++k) {
      const double b = a + u(rng) * std::pow(10.0, -k % 12);
      m.entries.push_back({a, b, p(rng)});
      a = b;
    }
    CHECK(parse_mesh(emit_mesh(m, MeshFormat::Csv), MeshFormat::Csv) == m);
    CHECK(parse_mesh(emit_mesh(m, MeshFormat::Json), MeshFormat::Json) == m);
  }
}

TEST_CASE("mesh shapes follow smoothness") {
  const auto report = run_benchmarks({preset("f1"), preset("f2")}, AdaptiveConfig{}, {false});
  const auto& m1 = report.rows[0].result.mesh.entries;
  CHECK(m1.size() <= 4);
  for (const auto& e : m1) CHECK(e.p >= 8);

  const auto& m2 = report.rows[1].result.mesh.entries;
  CHECK(m2.size() > 20);
  int widest = 0;
  for (const auto& e : m2) {
    if (e.b - e.a < 1e-6) CHECK(e.p <= AdaptiveConfig{}.p_init);
    widest = std::max(widest, e.p);
  }
  CHECK(widest >= 9);
}

TEST_CASE("graph emission") {
  CHECK(emit_graph(preset("f5"), 3) == "x,f\n0,0\n0.5,1\n1,1\n");
  CHECK(emit_graph(preset("f1"), 2) == "x,f\n0,1\n1,2.7182818284590451\n");
  BenchmarkCase bad{"bad", [](double x) { return x > 0.5 ? std::nan("") : x; }, 0.0, 1.0, {}, ""};
  CHECK(emit_graph(bad, 3) == "x,f\n0,0\n0.5,0.5\n1,\n");
  CHECK_THROWS_AS(emit_graph(preset("f1"), 1), std::invalid_argument);

  // f3 peaks near 1/5, 2/5, 3/5 and 4/5.
  std::istringstream in(emit_graph(preset("f3"), 10001));
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  REQUIRE(pts.size() == 10001);
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (pts[i].second > 0.9 && pts[i].second > pts[i - 1].second && pts[i].second >= pts[i + 1].second) {
      peaks.push_back(pts[i].first);
    }
  }
  REQUIRE(peaks.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(peaks[k] == doctest::Approx(0.2 * (k + 1)).epsilon(1e-3));
}

TEST_CASE("reports are deterministic apart from timing") {
  auto strip = [](const RunReport& r) {
    auto copy = r;
    for (auto& row : copy.rows) row.wall_time = 0.0;
    return report_json(copy);
  };
  const auto a = run_benchmarks(presets(), AdaptiveConfig{});
  const auto b = run_benchmarks(presets(), AdaptiveConfig{});
  CHECK(strip(a) == strip(b));
  std::ostringstream os;
  print_report(os, a);
  CHECK(os.str().find("f4") != std::string::npos);
}
