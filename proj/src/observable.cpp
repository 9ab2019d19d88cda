#include "qord/observable.hpp"

#include <algorithm>
#include <cmath>

#include "qord/errors.hpp"

namespace qord {

ObservableReport validate_observable(const Observable& a) {
  ObservableReport report;
  CMatrix sum = CMatrix::Zero(a.dim, a.dim);
  double min_eig = 0.0;
  for (const CMatrix& e : a.effects) {
    if (e.rows() != a.dim || e.cols() != a.dim) {
      report.psd_defect = std::numeric_limits<double>::infinity();
      report.completeness_defect = std::numeric_limits<double>::infinity();
      return report;
    }
    sum += e;
    try {
      min_eig = std::min(min_eig, herm_eig(e).eigenvalues.minCoeff());
    } catch (const Error&) {
      min_eig = -std::numeric_limits<double>::infinity();
    }
  }
  report.psd_defect = std::max(0.0, -min_eig);
  report.completeness_defect = (sum - cidentity(a.dim)).norm();
  return report;
}

std::vector<Index> support(const Observable& a) {
  std::vector<Index> out;
  for (Index x = 0; x < a.outcome_count(); ++x)
    if (a.effect(x).norm() > 1e-10) out.push_back(x);
  return out;
}

Observable smear(const Observable& b, const RMatrix& m) {
  if (m.cols() != b.outcome_count())
    throw DimensionMismatch("smear: M needs one column per outcome of B");
  Observable a;
  a.dim = b.dim;
  a.effects.reserve(static_cast<size_t>(m.rows()));
  for (Index x = 0; x < m.rows(); ++x) {
    CMatrix e = CMatrix::Zero(b.dim, b.dim);
    for (Index y = 0; y < m.cols(); ++y) e += m(x, y) * b.effect(y);
    a.effects.push_back(std::move(e));
  }
  return a;
}

Observable coin_toss(const RVector& p, Index dim) {
  if (p.size() == 0 || p.minCoeff() < -1e-12 ||
      std::abs(p.sum() - 1.0) > 1e-9)
    throw InvalidDistribution("coin_toss: p must be a probability vector");
  Observable a;
  a.dim = dim;
  for (Index x = 0; x < p.size(); ++x)
    a.effects.push_back(p[x] * cidentity(dim));
  return a;
}

Observable sharp_from_basis(const CMatrix& basis) {
  const Index d = basis.rows();
  if (basis.cols() != d)
    throw DimensionMismatch("sharp_from_basis: need d vectors of dimension d");
  if ((basis.adjoint() * basis - cidentity(d)).norm() > 1e-9)
    throw NotOrthonormal("sharp_from_basis: Gram matrix is not the identity");
  Observable a;
  a.dim = d;
  for (Index x = 0; x < d; ++x)
    a.effects.push_back(basis.col(x) * basis.col(x).adjoint());
  return a;
}

Observable permute_outcomes(const Observable& a, std::span<const Index> perm) {
  if (static_cast<Index>(perm.size()) != a.outcome_count())
    throw DimensionMismatch("permute_outcomes: permutation length mismatch");
  Observable out;
  out.dim = a.dim;
  out.effects.reserve(perm.size());
  for (Index x : perm) out.effects.push_back(a.effect(x));
  return out;
}

bool approx_equal(const Observable& a, const Observable& b, double tol) {
  if (a.dim != b.dim) return false;
  const Index n = std::max(a.outcome_count(), b.outcome_count());
  const CMatrix zero = CMatrix::Zero(a.dim, a.dim);
  for (Index x = 0; x < n; ++x) {
    const CMatrix& ea = x < a.outcome_count() ? a.effect(x) : zero;
    const CMatrix& eb = x < b.outcome_count() ? b.effect(x) : zero;
    if ((ea - eb).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace qord
