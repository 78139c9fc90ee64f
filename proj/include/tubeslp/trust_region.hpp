#pragma once

#include <utility>

#include "tubeslp/problem.hpp"

namespace tubeslp {

struct TrustRegionParams {
  double delta_max = 10.0;
  double alpha1 = 0.5;  // shrink factor
  double alpha2 = 2.0;  // growth factor
  double eta1 = 0.25;
  double eta2 = 0.75;
  double sigma_accept = 0.1;
  double delta_min = 1e-12;

  /// Throws std::invalid_argument outside the admissible ranges.
  void validate() const;
};

enum class RatioKind { PhaseI, PhaseII, Restoration };

/// Predicted reductions at or below this are treated as degenerate.
inline constexpr double kPredictedEps = 1e-14;

/// actual / predicted, with +inf/-inf standing in for a degenerate
/// prediction (positive / non-positive actual reduction respectively).
double reduction_ratio(double actual, double predicted);

/// Radius update driven by the ratio and the LP step length ||P(w_bar - w)||.
double delta_update(double rho, const Vector& w, const Vector& w_bar,
                    double delta, const NlpProblem& problem,
                    const TrustRegionParams& params);

/// Same rule, given the step length directly.
double delta_update(double rho, double step_norm, double delta,
                    const TrustRegionParams& params);

/// Shrunk radius after a rejected or failed step. Never zero.
double shrink_radius(double step_norm, double delta,
                     const TrustRegionParams& params);

/// Accepts `trial` iff rho > sigma_accept.
std::pair<Iterate, bool> acceptance(double rho, const Iterate& current,
                                    const Iterate& trial, double sigma_accept);

}  // namespace tubeslp
