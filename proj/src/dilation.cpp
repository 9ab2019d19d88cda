#include "qord/dilation.hpp"

#include "qord/errors.hpp"

namespace qord {

NaimarkDilation naimark(const Observable& a) {
  NaimarkDilation dil;
  dil.dim = a.dim;
  dil.outcomes = support(a);
  const Index n = static_cast<Index>(dil.outcomes.size());
  if (n == 0) throw Error("naimark: observable has empty support");
  dil.dilation_dim = a.dim * n;

  dil.isometry = CMatrix::Zero(dil.dilation_dim, a.dim);
  dil.pvm.reserve(static_cast<size_t>(n));
  for (Index s = 0; s < n; ++s) {
    const CMatrix root = psd_sqrt(a.effect(dil.outcomes[static_cast<size_t>(s)]));
    // Row block (i, s) of the isometry carries sqrt(A(x)); the dilation space
    // is ordered H first, outcome register second.
    for (Index i = 0; i < a.dim; ++i)
      dil.isometry.row(i * n + s) = root.row(i);

    CMatrix unit = CMatrix::Zero(n, n);
    unit(s, s) = 1.0;
    dil.pvm.push_back(tensor(cidentity(a.dim), unit));
  }
  return dil;
}

Channel least_disturbing_channel(const Observable& a) {
  const NaimarkDilation dil = naimark(a);
  Channel lambda{dil.dim, dil.dilation_dim, {}};
  for (const CMatrix& p : dil.pvm) lambda.kraus.push_back(p * dil.isometry);
  return lambda;
}

Instrument least_disturbing_instrument(const Observable& a) {
  const NaimarkDilation dil = naimark(a);
  // Branch list stays aligned with A's outcomes; zero effects get an empty
  // branch (the zero CP map) so the induced observable matches A positionally.
  Instrument instr{dil.dim, dil.dilation_dim, {}};
  instr.branches.resize(a.effects.size());
  for (size_t s = 0; s < dil.outcomes.size(); ++s)
    instr.branches[static_cast<size_t>(dil.outcomes[s])] = {dil.pvm[s] *
                                                            dil.isometry};
  return instr;
}

}  // namespace qord
