#ifndef QORD_CHANNEL_HPP
#define QORD_CHANNEL_HPP

#include <vector>

#include "qord/numerics.hpp"
#include "qord/types.hpp"

namespace qord {

/// A CPTP map stored as Schroedinger-picture Kraus operators (dim_out x
/// dim_in each). The Heisenberg action is the adjoint sum; channels are
/// compared by Choi distance, never by Kraus lists.
struct Channel {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<CMatrix> kraus;
};

struct ChannelReport {
  double tp_defect = 0.0;  // ||sum K*K - I||
  double cp_defect = 0.0;  // magnitude of the most negative Choi eigenvalue
  double tp_tol = 1e-9;
  double cp_tol = 1e-8;

  bool ok() const { return tp_defect <= tp_tol && cp_defect <= cp_tol; }
};

ChannelReport validate_channel(const Channel& lambda);

/// Validates a candidate Choi matrix directly (PSD + partial-trace test).
ChannelReport validate_choi(const CMatrix& x, Index dim_in, Index dim_out);

/// Schroedinger action on a state/operator of dimension dim_in.
CMatrix apply(const Channel& lambda, const CMatrix& rho);

/// Heisenberg action on an operator of dimension dim_out.
CMatrix apply_heisenberg(const Channel& lambda, const CMatrix& c);

/// Choi matrix, input system first: sum_ij |i><j| (x) Lambda(|i><j|).
CMatrix choi(const Channel& lambda);

/// Operator-norm distance between Choi matrices; the canonical channel
/// equality metric of this library.
double choi_distance(const Channel& a, const Channel& b);

/// Minimal Kraus form from a Choi matrix; Kraus count = Choi rank at
/// kRankTol. Throws NotPsd for eigenvalues below -1e-8.
Channel kraus_from_choi(const CMatrix& x, Index dim_in, Index dim_out);

/// Composition in time order: (later o earlier) acting on states, i.e. the
/// Schroedinger map rho -> later(earlier(rho)). Kraus set is all products.
Channel compose(const Channel& later, const Channel& earlier);

Channel identity_channel(Index d);

/// Lambda_rho: trash the input (of dimension dim_in) and prepare rho.
/// Heisenberg form C -> tr[rho C] I_{dim_in}.
Channel trash_and_prepare(const CMatrix& rho, Index dim_in = -1);

/// Completely depolarizing channel with respect to sigma; same map as
/// trash_and_prepare, named for its Heisenberg reading C -> tr[sigma C] I.
Channel depolarize_to(const CMatrix& sigma, Index dim_in = -1);

/// Isometry V: dim_in -> dim_out (x) env with Lambda(C) = V*(C (x) I)V and
/// env = Choi rank (minimal).
struct StinespringDilation {
  CMatrix isometry;  // (dim_out * env_dim) x dim_in
  Index env_dim = 0;
};

StinespringDilation minimal_stinespring(const Channel& lambda);

/// Complementary channel into the minimal Stinespring environment.
Channel conjugate_channel(const Channel& lambda);

}  // namespace qord

#endif
