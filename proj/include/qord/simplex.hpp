#ifndef QORD_SIMPLEX_HPP
#define QORD_SIMPLEX_HPP

#include "qord/types.hpp"

namespace qord {

enum class Feasibility { feasible, infeasible, undecided };

const char* to_string(Feasibility s);

struct LpResult {
  Feasibility status = Feasibility::undecided;
  RVector x;  // nonnegative point with lhs*x = rhs, meaningful when feasible
  double phase1_objective = 0.0;
  double residual = 0.0;  // ||lhs*x - rhs||_inf of the returned point
  long iterations = 0;
};

/// Decides whether {x >= 0 : lhs*x = rhs} is nonempty. Phase 1 of the
/// two-phase simplex method on a dense tableau; Bland's rule for both the
/// entering and leaving choices, so the pivot sequence cannot cycle and the
/// verdict is deterministic. Feasible iff the phase-1 optimum is <= tol.
LpResult lp_feasible(const RMatrix& lhs, const RVector& rhs,
                     double tol = 1e-7);

}  // namespace qord

#endif
