#ifndef QORD_INSTRUMENT_HPP
#define QORD_INSTRUMENT_HPP

#include <optional>
#include <vector>

#include "qord/channel.hpp"
#include "qord/observable.hpp"

namespace qord {

/// An instrument: one CP map per outcome, summing to a channel. Branches
/// store Schroedinger Kraus lists, mirroring Channel.
struct Instrument {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<std::vector<CMatrix>> branches;

  Index outcome_count() const { return static_cast<Index>(branches.size()); }
};

/// The observable measured by the instrument: A(x) = sum_i K_{x,i}* K_{x,i}.
Observable induced_observable(const Instrument& instr);

/// The unconditional state change: Kraus union of all branches.
Channel total_channel(const Instrument& instr);

/// Classical post-processing of outcomes: branch x of the result collects
/// every Kraus operator of branch y scaled by sqrt(M(x,y)). Leaves the total
/// channel unchanged and smears the induced observable by M.
Instrument postprocess_instrument(const Instrument& instr, const RMatrix& m);

/// Lueders instrument of A: branch x has the single Kraus operator sqrt(A(x)).
Instrument lueders(const Observable& a);

/// Conditional output state for outcome x. Below probability 1e-12 the state
/// is absent rather than divided out.
struct ConditionalState {
  double probability = 0.0;
  std::optional<CMatrix> state;
};

ConditionalState conditional_state(const Instrument& instr, Index x,
                                   const CMatrix& rho);

}  // namespace qord

#endif
