#include "qord/channel.hpp"

#include <algorithm>
#include <cmath>

#include "qord/errors.hpp"

namespace qord {

namespace {

void check_kraus_shapes(const Channel& lambda) {
  for (const CMatrix& k : lambda.kraus)
    if (k.rows() != lambda.dim_out || k.cols() != lambda.dim_in)
      throw DimensionMismatch("channel: Kraus operator shape mismatch");
}

}  // namespace

CMatrix apply(const Channel& lambda, const CMatrix& rho) {
  if (rho.rows() != lambda.dim_in || rho.cols() != lambda.dim_in)
    throw DimensionMismatch("apply: state dimension mismatch");
  CMatrix out = CMatrix::Zero(lambda.dim_out, lambda.dim_out);
  for (const CMatrix& k : lambda.kraus) out += k * rho * k.adjoint();
  return out;
}

CMatrix apply_heisenberg(const Channel& lambda, const CMatrix& c) {
  if (c.rows() != lambda.dim_out || c.cols() != lambda.dim_out)
    throw DimensionMismatch("apply_heisenberg: operator dimension mismatch");
  CMatrix out = CMatrix::Zero(lambda.dim_in, lambda.dim_in);
  for (const CMatrix& k : lambda.kraus) out += k.adjoint() * c * k;
  return out;
}

CMatrix choi(const Channel& lambda) {
  check_kraus_shapes(lambda);
  const Index d = lambda.dim_in, dp = lambda.dim_out;
  CMatrix x = CMatrix::Zero(d * dp, d * dp);
  // Rank-one sum over vec'd Kraus operators, v[(i,m)] = K(m,i).
  for (const CMatrix& k : lambda.kraus) {
    CVector v(d * dp);
    for (Index i = 0; i < d; ++i)
      for (Index m = 0; m < dp; ++m) v[i * dp + m] = k(m, i);
    x += v * v.adjoint();
  }
  return x;
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out)
    throw DimensionMismatch("choi_distance: channel spaces differ");
  return operator_norm(choi(a) - choi(b));
}

ChannelReport validate_channel(const Channel& lambda) {
  ChannelReport report;
  try {
    check_kraus_shapes(lambda);
  } catch (const Error&) {
    report.tp_defect = std::numeric_limits<double>::infinity();
    report.cp_defect = std::numeric_limits<double>::infinity();
    return report;
  }
  CMatrix sum = CMatrix::Zero(lambda.dim_in, lambda.dim_in);
  for (const CMatrix& k : lambda.kraus) sum += k.adjoint() * k;
  report.tp_defect = (sum - cidentity(lambda.dim_in)).norm();
  const double min_eig = herm_eig(choi(lambda)).eigenvalues.minCoeff();
  report.cp_defect = std::max(0.0, -min_eig);
  return report;
}

ChannelReport validate_choi(const CMatrix& x, Index dim_in, Index dim_out) {
  if (x.rows() != dim_in * dim_out || x.cols() != dim_in * dim_out)
    throw DimensionMismatch("validate_choi: size is not dim_in*dim_out");
  ChannelReport report;
  const double min_eig = herm_eig(x).eigenvalues.minCoeff();
  report.cp_defect = std::max(0.0, -min_eig);
  const CMatrix marginal =
      partial_trace(x, dim_in, dim_out, Subsystem::second);
  report.tp_defect = (marginal - cidentity(dim_in)).norm();
  return report;
}

Channel kraus_from_choi(const CMatrix& x, Index dim_in, Index dim_out) {
  if (x.rows() != dim_in * dim_out || x.cols() != dim_in * dim_out)
    throw DimensionMismatch("kraus_from_choi: size is not dim_in*dim_out");
  const HermEig eig = herm_eig(x);
  if (eig.eigenvalues.minCoeff() < -kPsdClampTol)
    throw NotPsd("kraus_from_choi: Choi matrix is not PSD");
  Channel lambda{dim_in, dim_out, {}};
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] <= kRankTol) continue;
    const double w = std::sqrt(eig.eigenvalues[k]);
    CMatrix op(dim_out, dim_in);
    for (Index i = 0; i < dim_in; ++i)
      for (Index m = 0; m < dim_out; ++m)
        op(m, i) = w * eig.eigenvectors(i * dim_out + m, k);
    lambda.kraus.push_back(std::move(op));
  }
  return lambda;
}

Channel compose(const Channel& later, const Channel& earlier) {
  if (later.dim_in != earlier.dim_out)
    throw DimensionMismatch("compose: dimension chain mismatch");
  Channel out{earlier.dim_in, later.dim_out, {}};
  out.kraus.reserve(later.kraus.size() * earlier.kraus.size());
  for (const CMatrix& l : later.kraus)
    for (const CMatrix& e : earlier.kraus) out.kraus.push_back(l * e);
  return out;
}

Channel identity_channel(Index d) {
  return Channel{d, d, {cidentity(d)}};
}

Channel trash_and_prepare(const CMatrix& rho, Index dim_in) {
  const Index d_out = rho.rows();
  if (rho.cols() != d_out)
    throw InvalidState("trash_and_prepare: state is not square");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.trace().imag()) > 1e-9)
    throw InvalidState("trash_and_prepare: state trace is not one");
  HermEig eig;
  try {
    eig = herm_eig(rho);
  } catch (const NotHermitian&) {
    throw InvalidState("trash_and_prepare: state is not Hermitian");
  }
  if (eig.eigenvalues.minCoeff() < -kPsdClampTol)
    throw InvalidState("trash_and_prepare: state is not PSD");
  if (dim_in < 0) dim_in = d_out;

  Channel lambda{dim_in, d_out, {}};
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double p = std::max(0.0, eig.eigenvalues[k]);
    if (p <= kRankTol) continue;
    for (Index i = 0; i < dim_in; ++i) {
      CMatrix op = CMatrix::Zero(d_out, dim_in);
      op.col(i) = std::sqrt(p) * eig.eigenvectors.col(k);
      lambda.kraus.push_back(std::move(op));
    }
  }
  return lambda;
}

Channel depolarize_to(const CMatrix& sigma, Index dim_in) {
  return trash_and_prepare(sigma, dim_in);
}

StinespringDilation minimal_stinespring(const Channel& lambda) {
  // Canonicalize through the Choi matrix so env_dim equals the Choi rank.
  const Channel minimal = kraus_from_choi(choi(lambda), lambda.dim_in,
                                          lambda.dim_out);
  const Index env = std::max<Index>(1, static_cast<Index>(minimal.kraus.size()));
  StinespringDilation dil;
  dil.env_dim = env;
  dil.isometry = CMatrix::Zero(lambda.dim_out * env, lambda.dim_in);
  for (Index i = 0; i < static_cast<Index>(minimal.kraus.size()); ++i)
    for (Index m = 0; m < lambda.dim_out; ++m)
      dil.isometry.row(m * env + i) = minimal.kraus[static_cast<size_t>(i)].row(m);
  return dil;
}

Channel conjugate_channel(const Channel& lambda) {
  const Channel minimal = kraus_from_choi(choi(lambda), lambda.dim_in,
                                          lambda.dim_out);
  const Index env = std::max<Index>(1, static_cast<Index>(minimal.kraus.size()));
  // Conjugate Kraus operators are the output-index slices of the isometry:
  // (K^c_m)(i, n) = K_i(m, n).
  Channel conj{lambda.dim_in, env, {}};
  for (Index m = 0; m < lambda.dim_out; ++m) {
    CMatrix op = CMatrix::Zero(env, lambda.dim_in);
    for (Index i = 0; i < static_cast<Index>(minimal.kraus.size()); ++i)
      op.row(i) = minimal.kraus[static_cast<size_t>(i)].row(m);
    conj.kraus.push_back(std::move(op));
  }
  return conj;
}

}  // namespace qord
