#ifndef QORD_NUMERICS_HPP
#define QORD_NUMERICS_HPP

#include <optional>
#include <random>

#include "qord/errors.hpp"
#include "qord/types.hpp"

namespace qord {

// Global tolerance knobs. kRankTol is the single kernel/support split used by
// every pseudo-inverse and isometry extension.
inline constexpr double kRankTol = 1e-9;
inline constexpr double kHermTol = 1e-10;
// Eigenvalues in [-kPsdClampTol, 0) are clamped to zero; anything more
// negative is rejected as not positive semidefinite.
inline constexpr double kPsdClampTol = 1e-8;

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
struct HermEig {
  RVector eigenvalues;
  CMatrix eigenvectors;  // unitary; column k pairs with eigenvalues[k]

  CMatrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() *
           eigenvectors.adjoint();
  }
};

/// Throws NotHermitian if the asymmetry of H exceeds kHermTol (relative);
/// the input is symmetrized before decomposing.
HermEig herm_eig(const CMatrix& H);

/// Hermitian square root of a PSD matrix. Eigenvalues in [-kPsdClampTol, 0)
/// clamp to zero, more negative ones throw NotPsd.
CMatrix psd_sqrt(const CMatrix& P);

/// Pseudo-inverse square root: eigenvalues above kRankTol map to 1/sqrt,
/// the rest to zero.
CMatrix psd_pinv_sqrt(const CMatrix& P);

/// Max |eigenvalue| of a Hermitian matrix.
double operator_norm(const CMatrix& H);

/// Extends the partial isometry c * A^{+1/2} to a full isometry W with
/// W * psd_sqrt(A) = c. Requires c*c = A (within tol) and rows(c) >= dim(A);
/// ker(A) is mapped isometrically into the orthocomplement of range(c).
/// When rng is given, the kernel basis is remixed by a random unitary first,
/// realizing a different (equally valid) extension.
CMatrix isometry_extend(const CMatrix& c, const CMatrix& A,
                        std::mt19937_64* rng = nullptr);

/// Kronecker product, subsystem order first (x) second, row-major blocks.
template <typename DerivedA, typename DerivedB>
CMatrix tensor(const Eigen::MatrixBase<DerivedA>& a,
               const Eigen::MatrixBase<DerivedB>& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b;
  return out;
}

enum class Subsystem { first, second };

/// Partial trace of an operator on C^d1 (x) C^d2 over the named factor.
CMatrix partial_trace(const CMatrix& X, Index d1, Index d2, Subsystem which);

/// d x d matrix unit |i><j|.
CMatrix matrix_unit(Index d, Index i, Index j);

inline CMatrix cidentity(Index d) { return CMatrix::Identity(d, d); }

/// Frobenius distance, usable on any pair of equally sized matrices.
inline double frob_distance(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm();
}

/// Operator-norm distance between two Hermitian matrices.
inline double herm_distance(const CMatrix& a, const CMatrix& b) {
  return operator_norm(a - b);
}

bool all_finite(const CMatrix& m);

}  // namespace qord

#endif
