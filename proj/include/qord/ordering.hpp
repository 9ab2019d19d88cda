#ifndef QORD_ORDERING_HPP
#define QORD_ORDERING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qord/channel.hpp"
#include "qord/dykstra.hpp"
#include "qord/observable.hpp"
#include "qord/simplex.hpp"

namespace qord {

/// Shared solver knobs. lp_tol gates the simplex phase-1 optimum, psd_tol
/// the Dykstra feasibility residual; gap_tol and max_iters control the
/// infeasible/undecided split of the alternating projections.
struct SolveOptions {
  double lp_tol = 1e-7;
  double psd_tol = 1e-6;
  double gap_tol = 1e-4;
  long max_iters = 20000;
  std::uint64_t seed = 1234;
  int restarts = 2;
  bool collect_trace = false;
};

bool is_column_stochastic(const RMatrix& m, double tol = 1e-9);

struct ObsOrder {
  Feasibility status = Feasibility::undecided;
  std::optional<RMatrix> witness;  // A(x) = sum_y M(x,y) B(y), columns sum to 1
  double residual = 0.0;           // max_x ||A(x) - sum_y M(x,y) B(y)||
  long iterations = 0;
};

/// Decides whether A is a classical post-processing (smearing) of B. Both
/// observables must live on the same dimension; outcome sets may differ.
/// Feasible answers carry a column-stochastic witness M, re-verified by
/// direct matrix arithmetic before being returned.
ObsOrder obs_leq(const Observable& a, const Observable& b,
                 const SolveOptions& opts = {});

/// Mutual smearing: obs_leq in both directions.
bool obs_equiv(const Observable& a, const Observable& b,
               const SolveOptions& opts = {});

struct ChanOrder {
  Feasibility status = Feasibility::undecided;
  std::optional<Channel> witness;  // l1 = compose(witness, l2) when feasible
  double residual = 0.0;           // Choi distance of the recomposition
  long iterations = 0;
  std::vector<double> trace;
};

/// Decides whether l1 is a concatenation of l2 with some further channel,
/// i.e. whether a channel E exists with l1 = E after l2 (in Schroedinger
/// reading: l1 = compose(E, l2)). Searches over Choi(E) with Dykstra
/// projections; infeasible is exact when no Hermitian solution exists at
/// all, heuristic (stalled gap) otherwise, and undecided is an honest third
/// answer.
ChanOrder chan_leq(const Channel& l1, const Channel& l2,
                   const SolveOptions& opts = {});

struct AChannelResult {
  Feasibility status = Feasibility::undecided;
  std::optional<Observable> witness;  // observable R on the environment
  StinespringDilation dilation;       // the V that the witness refers to
  double residual = 0.0;  // max_x ||A(x) - V*(I (x) R(x))V||
  long iterations = 0;
  std::vector<double> trace;
};

/// Decides whether lambda can arise as the unconditional state change of
/// some instrument measuring A. Solved in Radon-Nikodym coordinates: an
/// observable R on the minimal Stinespring environment of lambda with
/// A(x) = V*(I (x) R(x))V. Off-support outcomes carry R(x) = 0, which is
/// forced for a minimal dilation. The witness observable's effects are
/// aligned with A's outcome list.
AChannelResult is_A_channel(const Channel& lambda, const Observable& a,
                            const SolveOptions& opts = {});

}  // namespace qord

#endif
