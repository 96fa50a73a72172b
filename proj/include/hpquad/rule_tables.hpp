#pragma once

// Gauss-Legendre rules and Legendre value tables for p = 2..p_max, stored as
// dense column-major p_max x (p_max - 1) matrices. Column c holds the rule
// with p = c + 2 points; rows beyond p are zero.

#include <cstddef>
#include <span>
#include <vector>

namespace hpquad {

inline constexpr int kMinPoints = 2;

/// Legendre polynomial L_l(x) by three-term recurrence, normalized so L_l(1) = 1.
double legendre_eval(int degree, double x);

struct GaussRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;  // positive, sum to 2
};

/// p-point Gauss-Legendre rule via Newton iteration on L_p.
/// Throws std::invalid_argument for p < 2.
GaussRule gauss_legendre_rule(int p);

class RuleTables {
 public:
  explicit RuleTables(int p_max);

  int p_min() const noexcept { return kMinPoints; }
  int p_max() const noexcept { return p_max_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(p_max_); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(p_max_ - 1); }

  // Column views for the p-point rule; each has exactly p entries.
  std::span<const double> nodes(int p) const { return column(x_, p); }
  std::span<const double> weights(int p) const { return column(w_, p); }
  /// L_{p-1} at the p nodes.
  std::span<const double> legendre_top(int p) const { return column(l1_, p); }
  /// L_{p-2} at the p nodes.
  std::span<const double> legendre_next(int p) const { return column(l2_, p); }

  // Raw matrix access, zero-padded. row and col are 0-based.
  double X(std::size_t row, std::size_t col) const { return x_[index(row, col)]; }
  double W(std::size_t row, std::size_t col) const { return w_[index(row, col)]; }
  double L1(std::size_t row, std::size_t col) const { return l1_[index(row, col)]; }
  double L2(std::size_t row, std::size_t col) const { return l2_[index(row, col)]; }

  bool has_order(int p) const noexcept { return p >= kMinPoints && p <= p_max_; }

 private:
  std::size_t index(std::size_t row, std::size_t col) const;
  std::span<const double> column(const std::vector<double>& m, int p) const;

  int p_max_;
  std::vector<double> x_, w_, l1_, l2_;
};

/// Same as constructing RuleTables directly; kept for call sites that prefer a factory.
RuleTables build_tables(int p_max);

}  // namespace hpquad
