#include "qord/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qord/errors.hpp"

namespace qord {

namespace {

// Extreme eigenvalues, with the 0 <= E <= I effect check at tolerance 1e-8.
std::pair<double, double> effect_spectrum(const CMatrix& e) {
  const HermEig eig = herm_eig(e);
  const double top = eig.eigenvalues(0);
  const double bot = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (bot < -1e-8 || top > 1.0 + 1e-8) {
    std::ostringstream msg;
    msg << "effect spectrum [" << bot << ", " << top
        << "] leaves [0, 1]";
    throw NotAnEffect(msg.str());
  }
  return {std::max(0.0, bot), std::min(1.0, top)};
}

}  // namespace

double spectral_width(const CMatrix& e) {
  const auto [bot, top] = effect_spectrum(e);
  return top - bot;
}

ConstantApprox best_constant_approx(const CMatrix& e) {
  const auto [bot, top] = effect_spectrum(e);
  ConstantApprox out;
  out.p_star = std::clamp((top + bot) / 2.0, 0.0, 1.0);
  out.distance = (top - bot) / 2.0;
  return out;
}

DisturbanceBound dksw_lower_bound(const Observable& a) {
  DisturbanceBound out;
  out.per_effect_width.reserve(static_cast<size_t>(a.outcome_count()));
  double sup = 0.0;
  for (Index x = 0; x < a.outcome_count(); ++x) {
    const double w = spectral_width(a.effect(x));
    out.per_effect_width.push_back(w);
    if (w > sup) {
      sup = w;
      out.argmax_outcome = x;
    }
  }
  out.bound = sup * sup / 16.0;
  return out;
}

double monotone_floor(const Channel& lambda, const Observable& a,
                      const SolveOptions& opts) {
  const AChannelResult r = is_A_channel(lambda, a, opts);
  if (r.status != Feasibility::feasible) {
    std::ostringstream msg;
    msg << "monotone_floor: channel is not certified to measure the "
        << "observable (" << to_string(r.status) << ")";
    throw NotCompatible(msg.str());
  }
  return dksw_lower_bound(a).bound;
}

}  // namespace qord
