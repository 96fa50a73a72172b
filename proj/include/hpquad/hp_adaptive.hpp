#pragma once

// hp-adaptive Gauss-Legendre quadrature.
//
// Every active segment is either bisected (h), given one more point (p), or,
// at p_max, bisected while keeping p. The choice comes from the smoothness
// indicator of the values already on hand. A segment leaves the active set
// once its refined value differs from the previous one by less than the
// rounding threshold of iguess * tol / eps. All new points of one pass go to
// the integrand in a single vector call.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpquad/rule_tables.hpp"

namespace hpquad {

/// Integrand in vector form: write f(x[i]) to y[i] for every i.
using VectorIntegrand = std::function<void(std::span<const double> x, std::span<double> y)>;

/// Wraps a scalar function as a vector integrand.
VectorIntegrand vectorize(std::function<double(double)> f);

struct AdaptiveConfig {
  double tol = 0.3e-15;
  double tau = 0.6;
  int p_max = 15;
  int p_init = 8;
  std::optional<double> iguess_override;
  int max_passes = 200;
  double h_min_factor = 64.0;

  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;
};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  int p = kMinPoints;
  std::vector<double> fvals;  // f at the mapped nodes of the p-point rule
  double q = 0.0;             // (h/2) * sum w_k fvals[k]

  double width() const noexcept { return b - a; }
};

struct MeshEntry {
  double a = 0.0;
  double b = 0.0;
  int p = kMinPoints;

  bool operator==(const MeshEntry&) const = default;
};

struct HpMesh {
  std::vector<MeshEntry> entries;  // ascending, contiguous

  bool operator==(const HpMesh&) const = default;
};

struct IntegrationStats {
  std::size_t vector_calls = 0;
  std::size_t scalar_evals = 0;
  std::size_t passes = 0;
  std::size_t h_refinements = 0;
  std::size_t p_refinements = 0;
  std::size_t saturated_splits = 0;
  std::size_t forced_accepts = 0;
  double iguess = 0.0;

  bool operator==(const IntegrationStats&) const = default;
};

struct IntegrationResult {
  double value = 0.0;
  IntegrationStats stats;
  HpMesh mesh;
  std::vector<std::string> warnings;

  bool converged() const noexcept { return stats.forced_accepts == 0; }
};

/// Raised when the integrand returns a non-finite value.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double point)
      : std::runtime_error(what), point_(point) {}
  double point() const noexcept { return point_; }

 private:
  double point_;
};

/// Counts vector calls and scalar evaluations of one integrand.
class BatchEvaluator {
 public:
  explicit BatchEvaluator(const VectorIntegrand& f) : f_(f) {}

  /// Exactly one call of the integrand for a non-empty batch; none for an empty one.
  std::vector<double> operator()(std::span<const double> points);

  std::size_t vector_calls() const noexcept { return vector_calls_; }
  std::size_t scalar_evals() const noexcept { return scalar_evals_; }

 private:
  const VectorIntegrand& f_;
  std::size_t vector_calls_ = 0;
  std::size_t scalar_evals_ = 0;
};

/// phi_[a,b] applied to the nodes of the p-point rule.
std::vector<double> mapped_nodes(double a, double b, int p, const RuleTables& tables);

/// (b-a)/2 * dot(weights of the p-point rule, fvals).
double segment_quadrature(double a, double b, int p, std::span<const double> fvals,
                          const RuleTables& tables);

enum class Refinement { HRefine, PRefine, PSaturatedSplit };

const char* to_string(Refinement r) noexcept;

Refinement decide_refinement(const Segment& seg, const RuleTables& tables,
                             const AdaptiveConfig& cfg);

/// Geometry of the segments a refinement produces, without values.
struct ChildPlan {
  double a;
  double b;
  int p;
};

std::vector<ChildPlan> plan_refinement(const Segment& seg, Refinement decision);

struct RefinementOutcome {
  double q_refined = 0.0;
  std::vector<Segment> children;  // one for p-refinement, two otherwise
};

/// Refines a single segment with its own batch call. The pass driver batches
/// across segments instead; this is the per-segment form of the same step.
RefinementOutcome apply_refinement(const Segment& seg, Refinement decision, BatchEvaluator& eval,
                                   const RuleTables& tables);

/// Rounding-based negligibility test: iguess_scaled + |q_refined - q_old| == iguess_scaled.
bool accept_test(double q_old, double q_refined, double iguess_scaled);

/// Scales a magnitude estimate by tol / eps.
double scale_iguess(double iguess, double tol);

struct PassReport {
  std::size_t accepted = 0;
  std::size_t h_refinements = 0;
  std::size_t p_refinements = 0;
  std::size_t saturated_splits = 0;
  std::size_t forced_accepts = 0;
  std::size_t new_points = 0;
};

struct PassResult {
  double q_accepted = 0.0;
  std::vector<Segment> next_active;  // ascending
  std::vector<MeshEntry> accepted;   // mesh pieces finished in this pass
  std::vector<std::string> warnings;
  PassReport report;
};

/// One sweep over the active set. h_min is the smallest width a bisection may produce.
PassResult hprefine_pass(std::span<const Segment> active, BatchEvaluator& eval,
                         const RuleTables& tables, const AdaptiveConfig& cfg, double iguess_scaled,
                         double h_min);

IntegrationResult integrate(const VectorIntegrand& f, double a, double b, const AdaptiveConfig& cfg,
                            const RuleTables& tables);

/// Builds tables for cfg.p_max on the fly.
IntegrationResult integrate(const VectorIntegrand& f, double a, double b,
                            const AdaptiveConfig& cfg = {});

}  // namespace hpquad
