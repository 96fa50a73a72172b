#include "hpquad/hp_adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "hpquad/smoothness.hpp"

namespace hpquad {

namespace {

constexpr int kIguessPanels = 8;

std::string describe_interval(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << a << ", " << b << ']';
  return os.str();
}

bool is_bisection(Refinement r) { return r != Refinement::PRefine; }

}  // namespace

VectorIntegrand vectorize(std::function<double(double)> f) {
  return [f = std::move(f)](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  };
}

void AdaptiveConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tol must be positive");
  if (!(tau > indicator_lower_bound() && tau < 1.0)) {
    throw std::invalid_argument("tau must lie strictly inside (sqrt(3)/(sqrt(6)+1), 1)");
  }
  if (p_max < kMinPoints) throw std::invalid_argument("p_max must be >= 2");
  if (p_init < kMinPoints || p_init > p_max) {
    throw std::invalid_argument("p_init must lie in [2, p_max]");
  }
  if (iguess_override && (!std::isfinite(*iguess_override) || *iguess_override == 0.0)) {
    throw std::invalid_argument("iguess override must be finite and nonzero");
  }
  if (max_passes < 1) throw std::invalid_argument("max_passes must be >= 1");
  if (!(h_min_factor > 0.0) || !std::isfinite(h_min_factor)) {
    throw std::invalid_argument("h_min_factor must be positive");
  }
}

std::vector<double> BatchEvaluator::operator()(std::span<const double> points) {
  std::vector<double> out(points.size(), 0.0);
  if (points.empty()) return out;
  for (double x : points) {
    if (!std::isfinite(x)) throw IntegrationError("non-finite quadrature point", x);
  }
  f_(points, out);
  ++vector_calls_;
  scalar_evals_ += points.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand returned " << out[i] << " at x = " << points[i];
      throw IntegrationError(os.str(), points[i]);
    }
  }
  return out;
}

std::vector<double> mapped_nodes(double a, double b, int p, const RuleTables& tables) {
  const auto nodes = tables.nodes(p);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::vector<double> x(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) x[k] = half * nodes[k] + mid;
  return x;
}

double segment_quadrature(double a, double b, int p, std::span<const double> fvals,
                          const RuleTables& tables) {
  const auto w = tables.weights(p);
  if (fvals.size() != w.size()) {
    throw std::invalid_argument("segment_quadrature: value count does not match rule");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * fvals[k];
  return 0.5 * (b - a) * s;
}

const char* to_string(Refinement r) noexcept {
  switch (r) {
    case Refinement::HRefine: return "h";
    case Refinement::PRefine: return "p";
    case Refinement::PSaturatedSplit: return "p-split";
  }
  return "?";
}

Refinement decide_refinement(const Segment& seg, const RuleTables& tables,
                             const AdaptiveConfig& cfg) {
  const double f = indicator(xi_from_values(seg.fvals, seg.p, tables));
  if (f < cfg.tau) return Refinement::HRefine;
  if (seg.p + 1 <= cfg.p_max) return Refinement::PRefine;
  return Refinement::PSaturatedSplit;
}

std::vector<ChildPlan> plan_refinement(const Segment& seg, Refinement decision) {
  const double mid = 0.5 * (seg.a + seg.b);
  switch (decision) {
    case Refinement::HRefine: {
      const int p = std::max(kMinPoints, seg.p - 1);
      return {{seg.a, mid, p}, {mid, seg.b, p}};
    }
    case Refinement::PRefine:
      return {{seg.a, seg.b, seg.p + 1}};
    case Refinement::PSaturatedSplit:
      return {{seg.a, mid, seg.p}, {mid, seg.b, seg.p}};
  }
  return {};
}

RefinementOutcome apply_refinement(const Segment& seg, Refinement decision, BatchEvaluator& eval,
                                   const RuleTables& tables) {
  const auto plans = plan_refinement(seg, decision);
  std::vector<double> points;
  for (const auto& c : plans) {
    const auto x = mapped_nodes(c.a, c.b, c.p, tables);
    points.insert(points.end(), x.begin(), x.end());
  }
  const auto values = eval(points);
  RefinementOutcome out;
  std::size_t offset = 0;
  for (const auto& c : plans) {
    Segment child{c.a, c.b, c.p, {}, 0.0};
    const auto n = static_cast<std::size_t>(c.p);
    child.fvals.assign(values.begin() + static_cast<std::ptrdiff_t>(offset),
                       values.begin() + static_cast<std::ptrdiff_t>(offset + n));
    offset += n;
    child.q = segment_quadrature(c.a, c.b, c.p, child.fvals, tables);
    out.q_refined += child.q;
    out.children.push_back(std::move(child));
  }
  return out;
}

bool accept_test(double q_old, double q_refined, double iguess_scaled) {
  return iguess_scaled + std::abs(q_refined - q_old) == iguess_scaled;
}

double scale_iguess(double iguess, double tol) {
  return std::abs(iguess) * tol / std::numeric_limits<double>::epsilon();
}

PassResult hprefine_pass(std::span<const Segment> active, BatchEvaluator& eval,
                         const RuleTables& tables, const AdaptiveConfig& cfg, double iguess_scaled,
                         double h_min) {
  if (active.empty()) throw std::invalid_argument("hprefine_pass: empty active set");

  PassResult result;
  std::vector<std::vector<ChildPlan>> plans(active.size());
  std::vector<bool> forced(active.size(), false);
  std::vector<double> points;

  for (std::size_t i = 0; i < active.size(); ++i) {
    const Segment& seg = active[i];
    const Refinement decision = decide_refinement(seg, tables, cfg);
    if (is_bisection(decision)) {
      const double mid = 0.5 * (seg.a + seg.b);
      if (0.5 * seg.width() < h_min || !(seg.a < mid && mid < seg.b)) {
        forced[i] = true;
        continue;
      }
    }
    switch (decision) {
      case Refinement::HRefine: ++result.report.h_refinements; break;
      case Refinement::PRefine: ++result.report.p_refinements; break;
      case Refinement::PSaturatedSplit: ++result.report.saturated_splits; break;
    }
    plans[i] = plan_refinement(seg, decision);
    for (const auto& c : plans[i]) {
      const auto x = mapped_nodes(c.a, c.b, c.p, tables);
      points.insert(points.end(), x.begin(), x.end());
    }
  }

  result.report.new_points = points.size();
  const auto values = eval(points);

  std::size_t offset = 0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const Segment& seg = active[i];
    if (forced[i]) {
      result.q_accepted += seg.q;
      result.accepted.push_back({seg.a, seg.b, seg.p});
      ++result.report.forced_accepts;
      result.warnings.push_back("segment " + describe_interval(seg.a, seg.b) +
                                " accepted unconverged at minimal width");
      continue;
    }
    std::vector<Segment> children;
    double q_refined = 0.0;
    for (const auto& c : plans[i]) {
      Segment child{c.a, c.b, c.p, {}, 0.0};
      const auto n = static_cast<std::size_t>(c.p);
      child.fvals.assign(values.begin() + static_cast<std::ptrdiff_t>(offset),
                         values.begin() + static_cast<std::ptrdiff_t>(offset + n));
      offset += n;
      child.q = segment_quadrature(c.a, c.b, c.p, child.fvals, tables);
      q_refined += child.q;
      children.push_back(std::move(child));
    }
    if (accept_test(seg.q, q_refined, iguess_scaled)) {
      result.q_accepted += q_refined;
      for (const auto& c : children) result.accepted.push_back({c.a, c.b, c.p});
      ++result.report.accepted;
    } else {
      for (auto& c : children) result.next_active.push_back(std::move(c));
    }
  }
  return result;
}

IntegrationResult integrate(const VectorIntegrand& f, double a, double b, const AdaptiveConfig& cfg,
                            const RuleTables& tables) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument("integrate: need finite a < b");
  }
  if (cfg.p_max > tables.p_max()) {
    throw std::invalid_argument("integrate: rule tables stop below p_max");
  }

  BatchEvaluator eval(f);
  IntegrationResult result;

  // Initial segment and, unless overridden, the coarse composite estimate
  // share one vector call.
  std::vector<double> points = mapped_nodes(a, b, cfg.p_init, tables);
  const std::size_t p0 = points.size();
  const double panel = (b - a) / kIguessPanels;
  if (!cfg.iguess_override) {
    for (int j = 0; j < kIguessPanels; ++j) {
      const double lo = a + j * panel;
      const double hi = (j + 1 == kIguessPanels) ? b : a + (j + 1) * panel;
      const auto x = mapped_nodes(lo, hi, cfg.p_init, tables);
      points.insert(points.end(), x.begin(), x.end());
    }
  }
  const auto values = eval(points);

  Segment root{a, b, cfg.p_init, std::vector<double>(values.begin(), values.begin() + p0), 0.0};
  root.q = segment_quadrature(a, b, cfg.p_init, root.fvals, tables);

  double iguess = 0.0;
  if (cfg.iguess_override) {
    iguess = *cfg.iguess_override;
  } else {
    const auto n = static_cast<std::size_t>(cfg.p_init);
    for (int j = 0; j < kIguessPanels; ++j) {
      const double lo = a + j * panel;
      const double hi = (j + 1 == kIguessPanels) ? b : a + (j + 1) * panel;
      const auto first = p0 + static_cast<std::size_t>(j) * n;
      iguess += segment_quadrature(lo, hi, cfg.p_init,
                                   std::span<const double>(values).subspan(first, n), tables);
    }
    iguess = std::max(std::abs(iguess), 1.0);
  }
  result.stats.iguess = iguess;
  const double iguess_scaled = scale_iguess(iguess, cfg.tol);
  const double h_min = cfg.h_min_factor * std::numeric_limits<double>::epsilon() * (b - a);

  std::vector<Segment> active{std::move(root)};
  double q = 0.0;
  while (!active.empty() && result.stats.passes < static_cast<std::size_t>(cfg.max_passes)) {
    auto pass = hprefine_pass(active, eval, tables, cfg, iguess_scaled, h_min);
    ++result.stats.passes;
    q += pass.q_accepted;
    result.stats.h_refinements += pass.report.h_refinements;
    result.stats.p_refinements += pass.report.p_refinements;
    result.stats.saturated_splits += pass.report.saturated_splits;
    result.stats.forced_accepts += pass.report.forced_accepts;
    result.mesh.entries.insert(result.mesh.entries.end(), pass.accepted.begin(),
                               pass.accepted.end());
    for (auto& w : pass.warnings) result.warnings.push_back(std::move(w));
    active = std::move(pass.next_active);
  }

  if (!active.empty()) {
    double rest = 0.0;
    for (const auto& seg : active) {
      rest += seg.q;
      result.mesh.entries.push_back({seg.a, seg.b, seg.p});
    }
    q += rest;
    result.stats.forced_accepts += active.size();
    result.warnings.push_back("pass limit reached with " + std::to_string(active.size()) +
                              " active segments; accepted their latest values");
  }

  std::sort(result.mesh.entries.begin(), result.mesh.entries.end(),
            [](const MeshEntry& l, const MeshEntry& r) { return l.a < r.a; });
  result.value = q;
  result.stats.vector_calls = eval.vector_calls();
  result.stats.scalar_evals = eval.scalar_evals();
  return result;
}

IntegrationResult integrate(const VectorIntegrand& f, double a, double b,
                            const AdaptiveConfig& cfg) {
  cfg.validate();
  const RuleTables tables(cfg.p_max);
  return integrate(f, a, b, cfg, tables);
}

}  // namespace hpquad
