#ifndef QORD_DEGRADING_HPP
#define QORD_DEGRADING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qord/dilation.hpp"
#include "qord/instrument.hpp"
#include "qord/ordering.hpp"

namespace qord {

/// Per-outcome audit record of the construction: the stacked branch block c
/// with c*c = A(x), and the two isometries W, J extending c and A_hat(x)K
/// over sqrt(A(x)).
struct DegradingBlocks {
  Index outcome = 0;
  CMatrix c;
  CMatrix w;
  CMatrix j;
};

/// Proof object for "the given state change factors through the least
/// disturbing channel of its observable": a channel epsilon with
/// compose(epsilon, least_disturbing_channel(A)) equal to the instrument's
/// total channel, plus everything needed to audit how it was built.
struct DegradingCertificate {
  Channel epsilon;  // Schroedinger: dilation-space states -> output states
  double residual = 0.0;
  std::vector<DegradingBlocks> blocks;
  CMatrix anchor_state;
  NaimarkDilation dilation;
  Observable observable;
};

struct DegradeOptions {
  std::optional<CMatrix> anchor_state;  // default: maximally mixed output
  std::optional<std::uint64_t> extension_seed;  // randomized isometry kernels
  double compat_tol = 1e-8;
  double verify_tol = 1e-7;
};

/// Builds the degrading channel for an instrument. The induced observable
/// must be complete within compat_tol (NotCompatible otherwise); the result
/// is verified by Choi distance and never returned unverified
/// (VerificationFailed signals a construction bug, not a property of the
/// input).
DegradingCertificate degrade(const Instrument& instr,
                             const DegradeOptions& opts = {});

/// Channel-only route: certifies lambda as an A-channel first (NotCompatible
/// if that fails or stays undecided), rebuilds an implementing instrument
/// from the certified environment observable, and degrades that. The
/// certificate's observable is the implemented one, which matches A within
/// the solver residual; the reported residual is measured against the
/// caller's lambda.
DegradingCertificate degrade(const Channel& lambda, const Observable& a,
                             const SolveOptions& solve = {},
                             const DegradeOptions& opts = {});

/// The telescoping identity behind the remainder term: using the stored J
/// blocks, returns ||sum_x sqrt(A(x)) J_x* J_x sqrt(A(x)) - I||, which
/// vanishes exactly when every J_x is an isometry and A is complete.
double remainder_projector_defect(const DegradingCertificate& cert);

}  // namespace qord

#endif
