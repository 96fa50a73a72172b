#pragma once

// Local smoothness indicator built from the two highest Legendre
// coefficients of the interpolant through the quadrature-point values.
//
// A value near 1 means the integrand looks smooth on the segment; values
// near sqrt(3)/(sqrt(6)+1) mean it does not. The production path needs
// only the values already computed for the quadrature sum.

#include <functional>
#include <span>

#include "hpquad/rule_tables.hpp"

namespace hpquad {

/// Lower end of the indicator range, reached as xi -> infinity.
double indicator_lower_bound();

struct SmoothnessScore {
  double xi = 0.0;     // may be +infinity
  double value = 1.0;  // in [indicator_lower_bound(), 1]
};

/// Coefficient ratio (2p-1) |S1 / S2| with S1 = sum w_k f_k L_{p-1}(x_k) and
/// S2 = sum w_k f_k L_{p-2}(x_k). fvals[k] must belong to node k of the
/// p-point rule. Sums within rounding noise of sum w_k |f_k| count as zero.
/// S2 == 0 gives +infinity unless S1 == 0 too, which gives 0.
double xi_from_values(std::span<const double> fvals, int p, const RuleTables& tables);

/// (1 + xi) / (sqrt(1 + xi^2/3) + sqrt(2) xi); xi may be +infinity.
double indicator(double xi);

SmoothnessScore score_from_values(std::span<const double> fvals, int p, const RuleTables& tables);

/// Direct-norm evaluation of
///   ||g||_inf / (h^{-1/2} ||g||_2 + h^{1/2} ||g'||_2 / sqrt(2)),  g = f^(derivative_order),
/// on [a, b]. Norms come from dense sampling and composite Simpson sums,
/// derivatives from central differences. Slow; intended as a test oracle.
/// f must be defined slightly outside [a, b] when derivatives are taken.
double indicator_direct_oracle(const std::function<double(double)>& f, double a, double b,
                               int derivative_order);

}  // namespace hpquad
