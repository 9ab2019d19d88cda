#ifndef QORD_DYKSTRA_HPP
#define QORD_DYKSTRA_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "qord/simplex.hpp"
#include "qord/types.hpp"

namespace qord {

/// Isometric real coordinates for a Hermitian d x d matrix: the d diagonal
/// entries, then sqrt(2)*Re and sqrt(2)*Im of each strictly upper entry.
/// ||hvec(H)|| = ||H||_F and hvec(G).dot(hvec(H)) = tr(G H) for Hermitian
/// G, H, which is what makes affine rows and projections line up.
RVector hvec(const CMatrix& h);
CMatrix hunvec(const RVector& v, Index d);
inline Index hdim(Index d) { return d * d; }

/// Linear equality constraints lhs * z = rhs on the stacked hvec
/// coordinates of a tuple of Hermitian blocks.
struct AffineSystem {
  RMatrix lhs;
  RVector rhs;
};

/// Appends the constraint "map(blocks) == target" as hvec rows. The map must
/// be real-linear in the blocks and Hermitian-valued; its matrix is obtained
/// by evaluating on each coordinate basis element, so callers can write the
/// constraint as plain matrix algebra.
void append_map_rows(
    AffineSystem& sys, const std::vector<Index>& block_dims,
    const std::function<CMatrix(const std::vector<CMatrix>&)>& map,
    const CMatrix& target);

struct DykstraOptions {
  long max_iters = 20000;
  double feas_tol = 1e-6;
  double gap_tol = 1e-4;
  std::uint64_t seed = 1234;
  int restarts = 2;       // additional randomized starts after the first
  bool collect_trace = false;
};

struct DykstraResult {
  Feasibility status = Feasibility::undecided;
  std::vector<CMatrix> blocks;   // PSD candidate tuple when feasible
  double affine_residual = 0.0;  // ||lhs*z - rhs||_inf at the returned point
  double gap = 0.0;              // last distance between the two projections
  long iterations = 0;           // summed over restarts
  std::vector<double> trace;     // per-iteration gap of the last start
};

/// Decides whether the affine set meets the product of PSD cones, by
/// Dykstra's alternating projections (correction carried on the cone side
/// only, which suffices when the other set is affine). A least-squares
/// pre-check settles the case of an empty affine set exactly; a stalled
/// inter-set gap above gap_tol is judged infeasible; hitting max_iters
/// without a verdict returns undecided. Feasible answers always carry a
/// tuple that is PSD by construction and satisfies the equalities within
/// feas_tol.
DykstraResult psd_affine_feasible(const std::vector<Index>& block_dims,
                                  const AffineSystem& affine,
                                  const DykstraOptions& opts = {});

}  // namespace qord

#endif
