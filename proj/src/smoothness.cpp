#include "hpquad/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpquad {

double indicator_lower_bound() { return std::sqrt(3.0) / (std::sqrt(6.0) + 1.0); }

double xi_from_values(std::span<const double> fvals, int p, const RuleTables& tables) {
  if (p < kMinPoints) throw std::invalid_argument("xi_from_values: need p >= 2");
  if (!tables.has_order(p)) throw std::out_of_range("xi_from_values: p outside table range");
  if (fvals.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument("xi_from_values: expected " + std::to_string(p) + " values");
  }
  const auto w = tables.weights(p);
  const auto top = tables.legendre_top(p);
  const auto next = tables.legendre_next(p);
  double s1 = 0.0;
  double s2 = 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < fvals.size(); ++k) {
    if (!std::isfinite(fvals[k])) throw std::invalid_argument("xi_from_values: non-finite value");
    const double wf = w[k] * fvals[k];
    s1 += wf * top[k];
    s2 += wf * next[k];
    mass += std::abs(wf);
  }
  // Sums at rounding level carry no coefficient information; a constant
  // sampled at p nodes leaves |S| below p * eps * mass.
  const double noise = 4.0 * p * std::numeric_limits<double>::epsilon() * mass;
  if (std::abs(s1) <= noise) s1 = 0.0;
  if (std::abs(s2) <= noise) s2 = 0.0;
  if (s2 == 0.0) {
    return s1 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return (2.0 * p - 1.0) * std::abs(s1 / s2);
}

double indicator(double xi) {
  if (std::isnan(xi) || xi < 0.0) throw std::invalid_argument("indicator: xi must be >= 0");
  if (std::isinf(xi)) return 1.0 / (1.0 / std::sqrt(3.0) + std::numbers::sqrt2);
  if (xi <= 1.0) return (1.0 + xi) / (std::sqrt(1.0 + xi * xi / 3.0) + std::numbers::sqrt2 * xi);
  // Divided through by xi so that huge values do not overflow.
  const double r = 1.0 / xi;
  return (r + 1.0) / (std::sqrt(r * r + 1.0 / 3.0) + std::numbers::sqrt2);
}

SmoothnessScore score_from_values(std::span<const double> fvals, int p, const RuleTables& tables) {
  SmoothnessScore s;
  s.xi = xi_from_values(fvals, p, tables);
  s.value = indicator(s.xi);
  return s;
}

namespace {

constexpr int kOracleSamples = 20000;  // even, Simpson panels

// n-th central difference with step h.
double central_difference(const std::function<double(double)>& f, double x, int order, double h) {
  // sum_{j=0}^{n} (-1)^j C(n,j) f(x + (n/2 - j) h) / h^n
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= order; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * f(x + (0.5 * order - j) * h);
    binom = binom * (order - j) / (j + 1);
  }
  return acc / std::pow(h, order);
}

}  // namespace

double indicator_direct_oracle(const std::function<double(double)>& f, double a, double b,
                               int derivative_order) {
  if (!(a < b)) throw std::invalid_argument("indicator_direct_oracle: need a < b");
  if (derivative_order < 0) throw std::invalid_argument("indicator_direct_oracle: negative order");

  const double width = b - a;
  const double eps = std::numeric_limits<double>::epsilon();
  // The m-th difference uses step eps^{1/(m+2)} * width, which balances
  // truncation against rounding; for m = 1 this is cbrt(eps) * width.
  auto derivative = [&f, eps, width](int m) -> std::function<double(double)> {
    if (m == 0) return f;
    const double step = std::pow(eps, 1.0 / (m + 2)) * width;
    return [&f, m, step](double x) { return central_difference(f, x, m, step); };
  };
  const auto g = derivative(derivative_order);
  const auto dg = derivative(derivative_order + 1);

  const int n = kOracleSamples;
  const double dx = width / n;
  std::vector<double> gv(n + 1);
  std::vector<double> dgv(n + 1);
  double sup = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = (i == n) ? b : a + i * dx;
    gv[i] = g(x);
    dgv[i] = dg(x);
    if (!std::isfinite(gv[i]) || !std::isfinite(dgv[i])) {
      throw std::domain_error("indicator_direct_oracle: non-finite sample at x = " +
                              std::to_string(x));
    }
    sup = std::max(sup, std::abs(gv[i]));
  }
  if (sup == 0.0) return 1.0;

  auto simpson = [&](const std::vector<double>& v) {
    double s = v.front() * v.front() + v.back() * v.back();
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i] * v[i];
    return s * dx / 3.0;
  };
  const double norm_g = std::sqrt(simpson(gv));
  const double norm_dg = std::sqrt(simpson(dgv));
  return sup / (norm_g / std::sqrt(width) + std::sqrt(width) * norm_dg / std::numbers::sqrt2);
}

}  // namespace hpquad
