#include "hpquad/simpson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hpquad/hp_adaptive.hpp"

namespace hpquad {

namespace {

class SimpsonRecursion {
 public:
  SimpsonRecursion(const std::function<double(double)>& f, int max_depth, SimpsonStats& stats)
      : f_(f), max_depth_(max_depth), stats_(stats) {}

  void set_threshold(double iguess_scaled) { is_ = iguess_scaled; }

  double eval(double x) {
    const double y = f_(x);
    ++stats_.scalar_evals;
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand returned " << y << " at x = " << x;
      throw IntegrationError(os.str(), x);
    }
    return y;
  }

  // fd, fe are the quarter-point values on [a, b].
  double run(double a, double b, double fa, double fm, double fb, double fd, double fe,
             double whole, int depth) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    const double m = 0.5 * (a + b);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * fd + fm);
    const double right = h / 12.0 * (fm + 4.0 * fe + fb);
    const double refined = left + right;
    if (is_ + std::abs(refined - whole) == is_) return refined;

    const double d = 0.5 * (a + m);
    const double e = 0.5 * (m + b);
    if (depth >= max_depth_ || !(a < d && d < m && m < e && e < b)) {
      ++stats_.forced_accepts;
      return refined;
    }
    stats_.subdivisions += 2;
    const double fl1 = eval(0.5 * (a + d));
    const double fl2 = eval(0.5 * (d + m));
    const double lv = run(a, m, fa, fd, fm, fl1, fl2, left, depth + 1);
    const double fr1 = eval(0.5 * (m + e));
    const double fr2 = eval(0.5 * (e + b));
    const double rv = run(m, b, fm, fe, fb, fr1, fr2, right, depth + 1);
    return lv + rv;
  }

 private:
  const std::function<double(double)>& f_;
  double is_ = 0.0;
  int max_depth_;
  SimpsonStats& stats_;
};

}  // namespace

SimpsonResult simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument("simpson_adaptive: need finite a < b");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("simpson_adaptive: tol must be positive");
  if (max_depth < 0) throw std::invalid_argument("simpson_adaptive: negative depth cap");

  SimpsonResult result;
  SimpsonRecursion rec(f, max_depth, result.stats);

  const double m = 0.5 * (a + b);
  const double h = b - a;
  const double fa = rec.eval(a);
  const double fd = rec.eval(0.5 * (a + m));
  const double fm = rec.eval(m);
  const double fe = rec.eval(0.5 * (m + b));
  const double fb = rec.eval(b);

  const double composite = h / 12.0 * (fa + 4.0 * fd + 2.0 * fm + 4.0 * fe + fb);
  const double iguess = std::max(std::abs(composite), 1.0);
  result.stats.iguess = iguess;

  rec.set_threshold(scale_iguess(iguess, tol));
  const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
  result.value = rec.run(a, b, fa, fm, fb, fd, fe, whole, 0);
  return result;
}

}  // namespace hpquad
