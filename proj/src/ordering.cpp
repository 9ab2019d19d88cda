#include "qord/ordering.hpp"

#include <algorithm>
#include <cmath>

#include "qord/errors.hpp"
#include "qord/numerics.hpp"

namespace qord {

namespace {

DykstraOptions dykstra_options(const SolveOptions& opts) {
  DykstraOptions d;
  d.max_iters = opts.max_iters;
  d.feas_tol = opts.psd_tol;
  d.gap_tol = opts.gap_tol;
  d.seed = opts.seed;
  d.restarts = opts.restarts;
  d.collect_trace = opts.collect_trace;
  return d;
}

}  // namespace

bool is_column_stochastic(const RMatrix& m, double tol) {
  if (m.size() == 0) return false;
  if ((m.array() < -1e-12).any()) return false;
  for (Index y = 0; y < m.cols(); ++y)
    if (std::abs(m.col(y).sum() - 1.0) > tol) return false;
  return true;
}

ObsOrder obs_leq(const Observable& a, const Observable& b,
                 const SolveOptions& opts) {
  if (a.dim != b.dim)
    throw DimensionMismatch("obs_leq: observables on different dimensions");
  const Index d = a.dim;
  const Index na = a.outcome_count();
  const Index nb = b.outcome_count();
  if (na == 0 || nb == 0)
    throw DimensionMismatch("obs_leq: empty outcome set");

  // Variables M(x,y) >= 0, flattened as x*nb + y. Each outcome x of A gives
  // the Hermitian equality sum_y M(x,y) B(y) = A(x) in hvec coordinates;
  // one row per column of M enforces stochasticity.
  const Index rows = na * hdim(d) + nb;
  const Index cols = na * nb;
  RMatrix lhs = RMatrix::Zero(rows, cols);
  RVector rhs = RVector::Zero(rows);

  std::vector<RVector> bvec;
  bvec.reserve(static_cast<size_t>(nb));
  for (Index y = 0; y < nb; ++y) bvec.push_back(hvec(b.effect(y)));

  for (Index x = 0; x < na; ++x) {
    const Index r0 = x * hdim(d);
    for (Index y = 0; y < nb; ++y)
      lhs.col(x * nb + y).segment(r0, hdim(d)) = bvec[static_cast<size_t>(y)];
    rhs.segment(r0, hdim(d)) = hvec(a.effect(x));
  }
  for (Index y = 0; y < nb; ++y) {
    const Index r = na * hdim(d) + y;
    for (Index x = 0; x < na; ++x) lhs(r, x * nb + y) = 1.0;
    rhs(r) = 1.0;
  }

  const LpResult lp = lp_feasible(lhs, rhs, opts.lp_tol);
  ObsOrder out;
  out.status = lp.status;
  out.iterations = lp.iterations;
  if (lp.status != Feasibility::feasible) {
    out.residual = lp.phase1_objective;
    return out;
  }

  RMatrix m(na, nb);
  for (Index x = 0; x < na; ++x)
    for (Index y = 0; y < nb; ++y) m(x, y) = lp.x(x * nb + y);

  // Re-verify by direct arithmetic; the LP residual is not trusted.
  double resid = 0.0;
  for (Index x = 0; x < na; ++x) {
    CMatrix mix = CMatrix::Zero(d, d);
    for (Index y = 0; y < nb; ++y) mix += Complex(m(x, y)) * b.effect(y);
    resid = std::max(resid, herm_distance(mix, a.effect(x)));
  }
  out.residual = resid;
  if (resid > opts.lp_tol || !is_column_stochastic(m, 1e-9)) {
    out.status = Feasibility::undecided;
    return out;
  }
  out.witness = std::move(m);
  return out;
}

bool obs_equiv(const Observable& a, const Observable& b,
               const SolveOptions& opts) {
  return obs_leq(a, b, opts).status == Feasibility::feasible &&
         obs_leq(b, a, opts).status == Feasibility::feasible;
}

ChanOrder chan_leq(const Channel& l1, const Channel& l2,
                   const SolveOptions& opts) {
  if (l1.dim_in != l2.dim_in)
    throw DimensionMismatch("chan_leq: channels measure different inputs");
  const Index h = l1.dim_in;
  const Index din = l2.dim_out;   // input of the sought channel E
  const Index dout = l1.dim_out;  // output of E
  const Index dd = din * dout;    // Choi dimension of E

  // E acts on Y through its Choi matrix X: E(Y) = tr_in[(Y^T (x) I) X].
  const auto eps_apply = [&](const CMatrix& x_choi,
                             const CMatrix& y) -> CMatrix {
    return partial_trace(tensor(y.transpose(), cidentity(dout)) * x_choi,
                         din, dout, Subsystem::first);
  };

  const std::vector<Index> blocks{dd};
  AffineSystem sys;
  append_map_rows(
      sys, blocks,
      [&](const std::vector<CMatrix>& v) {
        return partial_trace(v[0], din, dout, Subsystem::second);
      },
      cidentity(din));
  append_map_rows(
      sys, blocks,
      [&](const std::vector<CMatrix>& v) {
        CMatrix composed = CMatrix::Zero(h * dout, h * dout);
        for (Index i = 0; i < h; ++i)
          for (Index j = 0; j < h; ++j) {
            const CMatrix mid = qord::apply(l2, matrix_unit(h, i, j));
            composed += tensor(matrix_unit(h, i, j), eps_apply(v[0], mid));
          }
        return composed;
      },
      choi(l1));

  const DykstraResult r = psd_affine_feasible(blocks, sys,
                                              dykstra_options(opts));
  ChanOrder out;
  out.status = r.status;
  out.iterations = r.iterations;
  out.trace = r.trace;
  if (r.status != Feasibility::feasible) {
    out.residual = r.affine_residual;
    return out;
  }

  Channel e = kraus_from_choi(r.blocks[0], din, dout);
  const double resid = choi_distance(compose(e, l2), l1);
  const ChannelReport rep = validate_channel(e);
  out.residual = resid;
  if (resid > opts.psd_tol || rep.tp_defect > opts.psd_tol ||
      rep.cp_defect > opts.psd_tol) {
    out.status = Feasibility::undecided;
    return out;
  }
  out.witness = std::move(e);
  return out;
}

AChannelResult is_A_channel(const Channel& lambda, const Observable& a,
                            const SolveOptions& opts) {
  if (lambda.dim_in != a.dim)
    throw DimensionMismatch("is_A_channel: channel and observable dims");
  const StinespringDilation dil = minimal_stinespring(lambda);
  const Index env = dil.env_dim;
  const Index dout = lambda.dim_out;
  const CMatrix& v_iso = dil.isometry;

  const std::vector<Index> supp = support(a);
  const Index ns = static_cast<Index>(supp.size());
  const std::vector<Index> blocks(static_cast<size_t>(ns), env);

  AffineSystem sys;
  append_map_rows(
      sys, blocks,
      [&](const std::vector<CMatrix>& r) {
        CMatrix sum = CMatrix::Zero(env, env);
        for (const CMatrix& b : r) sum += b;
        return sum;
      },
      cidentity(env));
  for (Index s = 0; s < ns; ++s) {
    append_map_rows(
        sys, blocks,
        [&, s](const std::vector<CMatrix>& r) {
          return (v_iso.adjoint() *
                  tensor(cidentity(dout), r[static_cast<size_t>(s)]) * v_iso)
              .eval();
        },
        a.effect(supp[static_cast<size_t>(s)]));
  }

  const DykstraResult r = psd_affine_feasible(blocks, sys,
                                              dykstra_options(opts));
  AChannelResult out;
  out.status = r.status;
  out.iterations = r.iterations;
  out.trace = r.trace;
  out.dilation = dil;
  if (r.status != Feasibility::feasible) {
    out.residual = r.affine_residual;
    return out;
  }

  Observable rn;
  rn.dim = env;
  rn.effects.assign(static_cast<size_t>(a.outcome_count()),
                    CMatrix::Zero(env, env));
  for (Index s = 0; s < ns; ++s)
    rn.effects[static_cast<size_t>(supp[static_cast<size_t>(s)])] =
        r.blocks[static_cast<size_t>(s)];

  // Independent check: R must be an observable and reproduce every effect
  // of A through the dilation, including the off-support zeros.
  double resid = validate_observable(rn).completeness_defect;
  for (Index x = 0; x < a.outcome_count(); ++x) {
    const CMatrix back = v_iso.adjoint() *
                         tensor(cidentity(dout),
                                rn.effects[static_cast<size_t>(x)]) *
                         v_iso;
    resid = std::max(resid, herm_distance(back, a.effect(x)));
  }
  out.residual = resid;
  if (resid > opts.psd_tol) {
    out.status = Feasibility::undecided;
    return out;
  }
  out.witness = std::move(rn);
  return out;
}

}  // namespace qord
