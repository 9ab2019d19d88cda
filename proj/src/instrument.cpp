#include "qord/instrument.hpp"

#include <cmath>

#include "qord/errors.hpp"

namespace qord {

Observable induced_observable(const Instrument& instr) {
  Observable a;
  a.dim = instr.dim_in;
  a.effects.reserve(instr.branches.size());
  for (const auto& branch : instr.branches) {
    CMatrix e = CMatrix::Zero(instr.dim_in, instr.dim_in);
    for (const CMatrix& k : branch) e += k.adjoint() * k;
    a.effects.push_back(std::move(e));
  }
  return a;
}

Channel total_channel(const Instrument& instr) {
  Channel lambda{instr.dim_in, instr.dim_out, {}};
  for (const auto& branch : instr.branches)
    lambda.kraus.insert(lambda.kraus.end(), branch.begin(), branch.end());
  return lambda;
}

Instrument postprocess_instrument(const Instrument& instr, const RMatrix& m) {
  if (m.cols() != instr.outcome_count())
    throw DimensionMismatch(
        "postprocess_instrument: M needs one column per outcome");
  Instrument out{instr.dim_in, instr.dim_out, {}};
  out.branches.resize(static_cast<size_t>(m.rows()));
  for (Index x = 0; x < m.rows(); ++x) {
    for (Index y = 0; y < m.cols(); ++y) {
      if (m(x, y) == 0.0) continue;
      const double w = std::sqrt(m(x, y));
      for (const CMatrix& k : instr.branches[static_cast<size_t>(y)])
        out.branches[static_cast<size_t>(x)].push_back(w * k);
    }
  }
  return out;
}

Instrument lueders(const Observable& a) {
  Instrument instr{a.dim, a.dim, {}};
  instr.branches.reserve(a.effects.size());
  for (const CMatrix& e : a.effects)
    instr.branches.push_back({psd_sqrt(e)});
  return instr;
}

ConditionalState conditional_state(const Instrument& instr, Index x,
                                   const CMatrix& rho) {
  if (x < 0 || x >= instr.outcome_count())
    throw DimensionMismatch("conditional_state: outcome out of range");
  CMatrix unnorm = CMatrix::Zero(instr.dim_out, instr.dim_out);
  for (const CMatrix& k : instr.branches[static_cast<size_t>(x)])
    unnorm += k * rho * k.adjoint();
  ConditionalState cs;
  cs.probability = unnorm.trace().real();
  if (cs.probability >= 1e-12) cs.state = unnorm / cs.probability;
  return cs;
}

}  // namespace qord
