#include "qord/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qord {

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

HermEig herm_eig(const CMatrix& H) {
  if (H.rows() != H.cols())
    throw DimensionMismatch("herm_eig: matrix is not square");
  if (!all_finite(H)) throw Error("herm_eig: non-finite entries");
  const double scale = std::max(1.0, H.norm());
  if ((H - H.adjoint()).norm() > kHermTol * scale)
    throw NotHermitian("herm_eig: asymmetry exceeds tolerance");

  const CMatrix sym = 0.5 * (H + H.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("herm_eig: eigensolver did not converge");

  // Eigen sorts ascending; flip to descending.
  const Index d = H.rows();
  HermEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(d, d);
  for (Index k = 0; k < d; ++k)
    out.eigenvectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  return out;
}

namespace {

CMatrix psd_function(const CMatrix& P, double (*f)(double)) {
  const HermEig eig = herm_eig(P);
  if (eig.eigenvalues.size() > 0 &&
      eig.eigenvalues.minCoeff() < -kPsdClampTol)
    throw NotPsd("psd function: eigenvalue below -1e-8");
  RVector vals = eig.eigenvalues.cwiseMax(0.0);
  for (Index k = 0; k < vals.size(); ++k) vals[k] = f(vals[k]);
  return eig.eigenvectors * vals.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace

CMatrix psd_sqrt(const CMatrix& P) {
  return psd_function(P, +[](double x) { return std::sqrt(x); });
}

CMatrix psd_pinv_sqrt(const CMatrix& P) {
  return psd_function(P, +[](double x) {
    return x > kRankTol ? 1.0 / std::sqrt(x) : 0.0;
  });
}

double operator_norm(const CMatrix& H) {
  if (H.size() == 0) return 0.0;
  return herm_eig(H).eigenvalues.cwiseAbs().maxCoeff();
}

CMatrix isometry_extend(const CMatrix& c, const CMatrix& A,
                        std::mt19937_64* rng) {
  const Index d = A.rows();
  const Index dp = c.rows();
  if (A.cols() != d || c.cols() != d)
    throw DimensionMismatch("isometry_extend: shape mismatch");
  if (dp < d)
    throw DimensionMismatch("isometry_extend: codomain smaller than domain");
  if ((c.adjoint() * c - A).norm() > 1e-8)
    throw Inconsistent("isometry_extend: c*c differs from A");

  const HermEig eig = herm_eig(0.5 * (A + A.adjoint().eval()));
  std::vector<Index> supp, ker;
  for (Index k = 0; k < d; ++k)
    (eig.eigenvalues[k] > kRankTol ? supp : ker).push_back(k);

  // Partial isometry on the support of A.
  const CMatrix w0 = c * psd_pinv_sqrt(A);
  if (ker.empty()) return w0;

  CMatrix kernel_basis(d, static_cast<Index>(ker.size()));
  for (Index k = 0; k < kernel_basis.cols(); ++k)
    kernel_basis.col(k) = eig.eigenvectors.col(ker[k]);

  if (rng) {
    // Remix the kernel basis by a Haar-ish unitary; any orthonormal basis of
    // ker(A) yields a valid extension.
    const Index m = kernel_basis.cols();
    CMatrix g(m, m);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) g(i, j) = Complex(gauss(*rng), gauss(*rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    kernel_basis = kernel_basis * CMatrix(qr.householderQ());
  }

  // Orthonormal basis of range(w0): w0 maps supp(A) isometrically.
  const Index r = static_cast<Index>(supp.size());
  CMatrix range_basis(dp, r);
  for (Index k = 0; k < r; ++k)
    range_basis.col(k) = w0 * eig.eigenvectors.col(supp[k]);

  // Complete to a basis of C^{dp}; the orthocomplement receives ker(A).
  Eigen::HouseholderQR<CMatrix> qr(range_basis);
  const CMatrix full = qr.householderQ();
  CMatrix w = w0;
  for (Index k = 0; k < kernel_basis.cols(); ++k)
    w += full.col(r + k) * kernel_basis.col(k).adjoint();
  return w;
}

CMatrix partial_trace(const CMatrix& X, Index d1, Index d2, Subsystem which) {
  if (X.rows() != d1 * d2 || X.cols() != d1 * d2)
    throw DimensionMismatch("partial_trace: size is not d1*d2");
  if (which == Subsystem::second) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j)
        for (Index m = 0; m < d2; ++m) out(i, j) += X(i * d2 + m, j * d2 + m);
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (Index m = 0; m < d2; ++m)
    for (Index n = 0; n < d2; ++n)
      for (Index i = 0; i < d1; ++i) out(m, n) += X(i * d2 + m, i * d2 + n);
  return out;
}

CMatrix matrix_unit(Index d, Index i, Index j) {
  CMatrix u = CMatrix::Zero(d, d);
  u(i, j) = 1.0;
  return u;
}

}  // namespace qord
