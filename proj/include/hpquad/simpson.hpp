#pragma once

// Recursive adaptive Simpson rule with endpoint/midpoint reuse, used as the
// comparison baseline. Stops on the same iguess * tol / eps rounding test as
// the hp engine.

#include <cstddef>
#include <functional>

namespace hpquad {

struct SimpsonStats {
  std::size_t scalar_evals = 0;
  std::size_t subdivisions = 0;  // recursive comparisons below the root
  int max_depth = 0;
  std::size_t forced_accepts = 0;
  double iguess = 0.0;
};

struct SimpsonResult {
  double value = 0.0;
  SimpsonStats stats;
};

SimpsonResult simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 60);

}  // namespace hpquad
