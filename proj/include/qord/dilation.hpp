#ifndef QORD_DILATION_HPP
#define QORD_DILATION_HPP

#include <vector>

#include "qord/instrument.hpp"
#include "qord/observable.hpp"

namespace qord {

/// Canonical Naimark dilation of an observable A on the space H (x) C^|S|,
/// S the support of A: the isometry sends psi to sum_x sqrt(A(x)) psi (x) e_x
/// and the PVM is A_hat(x) = I (x) |e_x><e_x|. Zero effects are dropped.
struct NaimarkDilation {
  Index dim = 0;                // d, the input dimension
  Index dilation_dim = 0;       // d * |support|
  std::vector<Index> outcomes;  // support outcomes, in order
  CMatrix isometry;             // dilation_dim x d
  std::vector<CMatrix> pvm;     // one projection per support outcome
};

NaimarkDilation naimark(const Observable& a);

/// The channel Lambda_A(C) = sum_x K* A_hat(x) C A_hat(x) K built on the
/// canonical dilation; Schroedinger Kraus set {A_hat(x) K}.
Channel least_disturbing_channel(const Observable& a);

/// The defining instrument of Lambda_A: branch x is {A_hat(x) K}.
Instrument least_disturbing_instrument(const Observable& a);

}  // namespace qord

#endif
