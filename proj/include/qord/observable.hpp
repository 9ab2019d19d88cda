#ifndef QORD_OBSERVABLE_HPP
#define QORD_OBSERVABLE_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "qord/numerics.hpp"
#include "qord/types.hpp"

namespace qord {

/// A discrete POVM: effects A(x) are PSD and sum to the identity. Outcomes
/// are positional (0-based); trailing zero effects are allowed and two
/// observables differing only by them compare equal.
struct Observable {
  Index dim = 0;
  std::vector<CMatrix> effects;

  Index outcome_count() const { return static_cast<Index>(effects.size()); }
  const CMatrix& effect(Index x) const { return effects[static_cast<size_t>(x)]; }
};

struct ObservableReport {
  double psd_defect = 0.0;          // most negative effect eigenvalue (as magnitude)
  double completeness_defect = 0.0; // ||sum A(x) - I||
  double psd_tol = 1e-9;
  double sum_tol = 1e-9;

  bool ok() const {
    return psd_defect <= psd_tol && completeness_defect <= sum_tol;
  }
};

/// Never throws; reports PSD and completeness defects with magnitudes.
ObservableReport validate_observable(const Observable& a);

/// Outcomes x with ||A(x)|| > 1e-10.
std::vector<Index> support(const Observable& a);

/// Classical post-processing: A(x) = sum_y M(x,y) B(y). M must have one
/// column per outcome of B; column-stochasticity is the caller's contract.
Observable smear(const Observable& b, const RMatrix& m);

/// Coin-tossing observable C_p(x) = p(x) I on dimension dim.
Observable coin_toss(const RVector& p, Index dim);
inline Observable coin_toss(std::initializer_list<double> p, Index dim) {
  return coin_toss(
      Eigen::Map<const RVector>(p.begin(), static_cast<Index>(p.size())), dim);
}

/// Sharp observable from an orthonormal basis (columns); effects are the
/// rank-1 projections onto the basis vectors.
Observable sharp_from_basis(const CMatrix& basis);

/// Relabels outcomes: result effect x is a.effect(perm[x]).
Observable permute_outcomes(const Observable& a, std::span<const Index> perm);

/// Equality up to trailing zero effects, entrywise within tol.
bool approx_equal(const Observable& a, const Observable& b, double tol = 1e-10);

}  // namespace qord

#endif
