#include "tubeslp/trust_region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubeslp {

void TrustRegionParams::validate() const {
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("TrustRegionParams: ") + what);
  };
  if (!(delta_max >= 1.0)) fail("delta_max must be >= 1");
  if (!(alpha1 > 0.0 && alpha1 < 1.0)) fail("alpha1 must lie in (0, 1)");
  if (!(alpha2 > 1.0 && std::isfinite(alpha2))) fail("alpha2 must exceed 1");
  if (!(eta1 > 0.0 && eta1 < eta2 && eta2 < 1.0)) {
    fail("need 0 < eta1 < eta2 < 1");
  }
  if (!(sigma_accept > 0.0 && sigma_accept < 0.25)) {
    fail("sigma_accept must lie in (0, 1/4)");
  }
  if (!(delta_min > 0.0 && delta_min < delta_max)) {
    fail("delta_min must lie in (0, delta_max)");
  }
}

double reduction_ratio(double actual, double predicted) {
  if (predicted > kPredictedEps) return actual / predicted;
  return actual > 0.0 ? kInf : -kInf;
}

double shrink_radius(double step_norm, double delta,
                     const TrustRegionParams& params) {
  if (step_norm > 0.0) return params.alpha1 * step_norm;
  return params.alpha1 * delta;
}

double delta_update(double rho, double step_norm, double delta,
                    const TrustRegionParams& params) {
  if (rho < params.eta1) return shrink_radius(step_norm, delta, params);
  const bool on_boundary = std::abs(step_norm - delta) <= 1e-12 * delta;
  if (rho > params.eta2 && on_boundary) {
    return std::min(params.alpha2 * delta, params.delta_max);
  }
  return delta;
}

double delta_update(double rho, const Vector& w, const Vector& w_bar,
                    double delta, const NlpProblem& problem,
                    const TrustRegionParams& params) {
  return delta_update(rho, problem.step_norm(w_bar - w), delta, params);
}

std::pair<Iterate, bool> acceptance(double rho, const Iterate& current,
                                    const Iterate& trial,
                                    double sigma_accept) {
  if (rho > sigma_accept) return {trial, true};
  return {current, false};
}

}  // namespace tubeslp
