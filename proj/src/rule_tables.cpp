#include "hpquad/rule_tables.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hpquad {

double legendre_eval(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("legendre_eval: negative degree");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int n = 1; n < degree; ++n) {
    const double next = ((2.0 * n + 1.0) * x * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// L_p(x) and L_p'(x) together, in extended precision.
std::pair<long double, long double> legendre_with_derivative(int p, long double x) {
  long double prev = 1.0L;
  long double cur = x;
  for (int n = 1; n < p; ++n) {
    const long double next = ((2.0L * n + 1.0L) * x * cur - n * prev) / (n + 1.0L);
    prev = cur;
    cur = next;
  }
  const long double deriv = p * (x * cur - prev) / (x * x - 1.0L);
  return {cur, deriv};
}

}  // namespace

GaussRule gauss_legendre_rule(int p) {
  if (p < kMinPoints) {
    throw std::invalid_argument("gauss_legendre_rule: need at least 2 points, got " +
                                std::to_string(p));
  }
  GaussRule rule;
  rule.nodes.assign(static_cast<std::size_t>(p), 0.0);
  rule.weights.assign(static_cast<std::size_t>(p), 0.0);

  // Newton in long double so the stored doubles are close to correctly rounded.
  const long double tiny = 8 * std::numeric_limits<long double>::epsilon();
  const int half = (p + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-type initial guess for the i-th largest root.
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (p + 0.5L));
    for (int it = 0; it < 100; ++it) {
      const auto [val, d] = legendre_with_derivative(p, x);
      const long double dx = val / d;
      x -= dx;
      if (std::abs(dx) <= tiny) break;
    }
    const long double deriv = legendre_with_derivative(p, x).second;
    const long double w = 2.0L / ((1.0L - x * x) * deriv * deriv);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(p - 1 - i);
    rule.nodes[lo] = static_cast<double>(-x);
    rule.nodes[hi] = static_cast<double>(x);
    rule.weights[lo] = static_cast<double>(w);
    rule.weights[hi] = static_cast<double>(w);
  }
  if (p % 2 == 1) rule.nodes[static_cast<std::size_t>(p / 2)] = 0.0;
  return rule;
}

RuleTables::RuleTables(int p_max) : p_max_(p_max) {
  if (p_max < kMinPoints) {
    throw std::invalid_argument("RuleTables: p_max must be >= 2, got " + std::to_string(p_max));
  }
  const std::size_t n = rows() * cols();
  x_.assign(n, 0.0);
  w_.assign(n, 0.0);
  l1_.assign(n, 0.0);
  l2_.assign(n, 0.0);
  for (int p = kMinPoints; p <= p_max_; ++p) {
    const auto rule = gauss_legendre_rule(p);
    const auto col = static_cast<std::size_t>(p - kMinPoints);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double xk = rule.nodes[k];
      x_[index(k, col)] = xk;
      w_[index(k, col)] = rule.weights[k];
      l1_[index(k, col)] = legendre_eval(p - 1, xk);
      l2_[index(k, col)] = legendre_eval(p - 2, xk);
    }
  }
}

std::size_t RuleTables::index(std::size_t row, std::size_t col) const {
  if (row >= rows() || col >= cols()) throw std::out_of_range("RuleTables: index out of range");
  return col * rows() + row;
}

std::span<const double> RuleTables::column(const std::vector<double>& m, int p) const {
  if (!has_order(p)) {
    throw std::out_of_range("RuleTables: no rule with " + std::to_string(p) + " points");
  }
  const auto col = static_cast<std::size_t>(p - kMinPoints);
  return std::span<const double>(m).subspan(col * rows(), static_cast<std::size_t>(p));
}

RuleTables build_tables(int p_max) { return RuleTables(p_max); }

}  // namespace hpquad
