#include "qord/degrading.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qord/errors.hpp"

namespace qord {

namespace {

CVector unit_vector(Index dim, Index i) {
  CVector e = CVector::Zero(dim);
  e(i) = 1.0;
  return e;
}

// Stacks the branch Kraus list into c = sum_i K_i (x) f_i on the output
// (x) C^m space, row layout (k, i) -> k*m + i, so that c*c = sum_i K_i*K_i.
CMatrix stack_branch(const std::vector<CMatrix>& branch, Index dim_in,
                     Index dim_out, Index m) {
  CMatrix c = CMatrix::Zero(dim_out * m, dim_in);
  for (size_t i = 0; i < branch.size(); ++i)
    for (Index k = 0; k < dim_out; ++k)
      c.row(k * m + static_cast<Index>(i)) = branch[i].row(k);
  return c;
}

CMatrix default_anchor(Index d) {
  return CMatrix::Identity(d, d) / Complex(static_cast<double>(d));
}

void check_anchor(const CMatrix& rho, Index d) {
  if (rho.rows() != d || rho.cols() != d)
    throw InvalidState("degrade: anchor state has the wrong dimension");
  if ((rho - rho.adjoint()).norm() > 1e-9)
    throw InvalidState("degrade: anchor state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9)
    throw InvalidState("degrade: anchor state has trace != 1");
}

}  // namespace

DegradingCertificate degrade(const Instrument& instr,
                             const DegradeOptions& opts) {
  const Index h = instr.dim_in;
  const Index k_dim = instr.dim_out;
  if (h <= 0 || k_dim <= 0 || instr.branches.empty())
    throw DimensionMismatch("degrade: empty instrument");

  const Observable a = induced_observable(instr);
  const ObservableReport rep = validate_observable(a);
  if (rep.completeness_defect > opts.compat_tol) {
    std::ostringstream msg;
    msg << "degrade: branches do not implement an observable "
        << "(completeness defect " << rep.completeness_defect << ")";
    throw NotCompatible(msg.str());
  }

  const Channel lambda = total_channel(instr);
  const NaimarkDilation dil = naimark(a);
  const Index n = static_cast<Index>(dil.outcomes.size());
  const Index hn = dil.dilation_dim;

  // Common environment size for the stacked blocks. The extension of c_x to
  // an isometry from H needs at least H rows, hence the ceil(H/K) floor.
  Index m = (h + k_dim - 1) / k_dim;
  for (Index x : dil.outcomes)
    m = std::max(m,
                 static_cast<Index>(instr.branches[static_cast<size_t>(x)]
                                        .size()));

  std::mt19937_64 rng(opts.extension_seed.value_or(0));
  std::mt19937_64* rng_ptr = opts.extension_seed ? &rng : nullptr;

  DegradingCertificate cert;
  cert.dilation = dil;
  cert.observable = a;
  cert.anchor_state =
      opts.anchor_state ? *opts.anchor_state : default_anchor(k_dim);
  check_anchor(cert.anchor_state, k_dim);

  for (Index s = 0; s < n; ++s) {
    const Index x = dil.outcomes[static_cast<size_t>(s)];
    const CMatrix& ax = a.effect(x);
    DegradingBlocks blk;
    blk.outcome = x;
    blk.c = stack_branch(instr.branches[static_cast<size_t>(x)], h, k_dim, m);
    blk.w = isometry_extend(blk.c, ax, rng_ptr);
    blk.j = isometry_extend(dil.pvm[static_cast<size_t>(s)] * dil.isometry,
                            ax, rng_ptr);
    cert.blocks.push_back(std::move(blk));
  }

  // Schroedinger Kraus operators of the Heisenberg map
  //   C -> sum_x A_hat(x) J_x W_x* (C (x) I_m) W_x J_x* A_hat(x)
  //      + tr[rho C] (I - sum_x A_hat(x) J_x J_x* A_hat(x)).
  Channel epsilon{hn, k_dim, {}};
  CMatrix coverage = CMatrix::Zero(hn, hn);
  for (Index s = 0; s < n; ++s) {
    const DegradingBlocks& blk = cert.blocks[static_cast<size_t>(s)];
    const CMatrix tail =
        blk.j.adjoint() * dil.pvm[static_cast<size_t>(s)];  // H x Hn
    coverage += tail.adjoint() * tail;
    for (Index i = 0; i < m; ++i) {
      const CMatrix front =
          tensor(cidentity(k_dim), unit_vector(m, i).adjoint());
      epsilon.kraus.push_back(front * blk.w * tail);
    }
  }

  const CMatrix g = cidentity(hn) - coverage;
  HermEig eig_g = herm_eig(g);
  HermEig eig_rho = herm_eig(cert.anchor_state);
  for (Index b = 0; b < eig_g.eigenvalues.size(); ++b) {
    const double gb = eig_g.eigenvalues(b);
    if (gb < -1e-8)
      throw VerificationFailed(
          "degrade: remainder coefficient is not positive semidefinite");
    if (gb <= 1e-14) continue;
    for (Index aix = 0; aix < eig_rho.eigenvalues.size(); ++aix) {
      const double ra = eig_rho.eigenvalues(aix);
      if (ra < -1e-9)
        throw InvalidState("degrade: anchor state is not positive");
      if (ra <= 1e-14) continue;
      epsilon.kraus.push_back(std::sqrt(gb * ra) *
                              eig_rho.eigenvectors.col(aix) *
                              eig_g.eigenvectors.col(b).adjoint());
    }
  }
  cert.epsilon = std::move(epsilon);

  const Channel lambda_a{h, hn, [&] {
                           std::vector<CMatrix> ks;
                           for (Index s = 0; s < n; ++s)
                             ks.push_back(dil.pvm[static_cast<size_t>(s)] *
                                          dil.isometry);
                           return ks;
                         }()};
  cert.residual = choi_distance(compose(cert.epsilon, lambda_a), lambda);

  const ChannelReport crep = validate_channel(cert.epsilon);
  if (!crep.ok()) {
    std::ostringstream msg;
    msg << "degrade: built map is not a channel (tp defect " << crep.tp_defect
        << ", cp defect " << crep.cp_defect << ")";
    throw VerificationFailed(msg.str());
  }
  if (cert.residual > opts.verify_tol) {
    std::ostringstream msg;
    msg << "degrade: certificate residual " << cert.residual
        << " exceeds " << opts.verify_tol;
    throw VerificationFailed(msg.str());
  }
  return cert;
}

DegradingCertificate degrade(const Channel& lambda, const Observable& a,
                             const SolveOptions& solve,
                             const DegradeOptions& opts) {
  const AChannelResult cr = is_A_channel(lambda, a, solve);
  if (cr.status != Feasibility::feasible) {
    std::ostringstream msg;
    msg << "degrade: channel could not be certified as measuring the "
        << "observable (" << to_string(cr.status) << ", residual "
        << cr.residual << ")";
    throw NotCompatible(msg.str());
  }

  const Index env = cr.dilation.env_dim;
  const Index dout = lambda.dim_out;
  const CMatrix& v_iso = cr.dilation.isometry;

  // Renormalize the witness so its effects sum to the identity exactly;
  // the solver only guarantees completeness within its residual, while the
  // instrument rebuilt below must implement an honest observable.
  std::vector<CMatrix> r_effects;
  CMatrix sum = CMatrix::Zero(env, env);
  for (const CMatrix& r : cr.witness->effects) sum += r;
  const CMatrix corr = psd_pinv_sqrt(sum);
  for (const CMatrix& r : cr.witness->effects)
    r_effects.push_back(corr * r * corr);

  Instrument instr{lambda.dim_in, dout, {}};
  instr.branches.resize(r_effects.size());
  for (size_t x = 0; x < r_effects.size(); ++x) {
    if (operator_norm(r_effects[x]) <= 1e-12) continue;
    const CMatrix lifted =
        tensor(cidentity(dout), psd_sqrt(r_effects[x])) * v_iso;
    for (Index i = 0; i < env; ++i) {
      CMatrix ki(dout, lambda.dim_in);
      for (Index k = 0; k < dout; ++k) ki.row(k) = lifted.row(k * env + i);
      if (ki.norm() > 1e-12) instr.branches[x].push_back(std::move(ki));
    }
  }

  DegradingCertificate cert = degrade(instr, opts);

  // Verify against the caller's channel, not just the rebuilt instrument.
  const Channel lambda_a{
      cert.dilation.dim, cert.dilation.dilation_dim, [&] {
        std::vector<CMatrix> ks;
        for (size_t s = 0; s < cert.dilation.pvm.size(); ++s)
          ks.push_back(cert.dilation.pvm[s] * cert.dilation.isometry);
        return ks;
      }()};
  cert.residual =
      std::max(cert.residual,
               choi_distance(compose(cert.epsilon, lambda_a), lambda));
  if (cert.residual > opts.verify_tol) {
    std::ostringstream msg;
    msg << "degrade: residual against the input channel " << cert.residual
        << " exceeds " << opts.verify_tol;
    throw VerificationFailed(msg.str());
  }
  return cert;
}

double remainder_projector_defect(const DegradingCertificate& cert) {
  const Index h = cert.dilation.dim;
  CMatrix total = CMatrix::Zero(h, h);
  for (const DegradingBlocks& blk : cert.blocks) {
    const CMatrix root =
        psd_sqrt(cert.observable.effect(blk.outcome));
    total += root * (blk.j.adjoint() * blk.j) * root;
  }
  return herm_distance(total, cidentity(h));
}

}  // namespace qord
