#ifndef QORD_BOUNDS_HPP
#define QORD_BOUNDS_HPP

#include <vector>

#include "qord/observable.hpp"
#include "qord/ordering.hpp"

namespace qord {

/// Width of the spectrum of an effect, lambda_max - lambda_min; zero exactly
/// for multiples of the identity, one for nontrivial projections. Throws
/// NotAnEffect unless 0 <= E <= I within 1e-8.
double spectral_width(const CMatrix& e);

struct ConstantApprox {
  double p_star = 0.0;   // best constant, clamped to [0,1]
  double distance = 0.0; // operator-norm distance ||E - p* I||
};

/// Closest trivial effect p*I to E: p* = midpoint of the spectrum, distance
/// = half the spectral width.
ConstantApprox best_constant_approx(const CMatrix& e);

struct DisturbanceBound {
  std::vector<double> per_effect_width;
  double bound = 0.0;       // (sup width)^2 / 16
  Index argmax_outcome = 0;
};

/// Quantitative disturbance floor of an observable: any state change that
/// leaves A measurable deviates from the identity by at least
/// (1/16) sup_x width(A(x))^2 in the KSW distance. Zero iff A is trivial
/// (coin-tossing), 1/16 as soon as some effect has both 0 and 1 in its
/// spectrum.
DisturbanceBound dksw_lower_bound(const Observable& a);

/// The same floor, certified to apply to a concrete channel: first checks
/// that lambda actually measures A (NotCompatible otherwise, including the
/// undecided case), then returns dksw_lower_bound(a).bound.
double monotone_floor(const Channel& lambda, const Observable& a,
                      const SolveOptions& opts = {});

}  // namespace qord

#endif
