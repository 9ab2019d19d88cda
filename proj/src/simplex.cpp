#include "qord/simplex.hpp"

#include <cmath>
#include <vector>

#include "qord/errors.hpp"

namespace qord {

const char* to_string(Feasibility s) {
  switch (s) {
    case Feasibility::feasible:
      return "feasible";
    case Feasibility::infeasible:
      return "infeasible";
    default:
      return "undecided";
  }
}

LpResult lp_feasible(const RMatrix& lhs, const RVector& rhs, double tol) {
  if (lhs.rows() != rhs.size())
    throw DimensionMismatch("lp_feasible: lhs rows != rhs size");

  const Index m = lhs.rows();
  const Index n = lhs.cols();
  LpResult out;

  if (m == 0) {
    out.status = Feasibility::feasible;
    out.x = RVector::Zero(n);
    return out;
  }

  // Tableau rows 0..m-1: [A | I | b] with b >= 0 after row sign flips.
  // Row m is the phase-1 objective (cost 1 on each artificial), already
  // reduced against the artificial basis; its rhs entry stays equal to
  // minus the current objective value under plain pivoting.
  RMatrix t = RMatrix::Zero(m + 1, n + m + 1);
  for (Index i = 0; i < m; ++i) {
    const double s = rhs(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = s * lhs.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = s * rhs(i);
  }
  t.row(m) = -t.topRows(m).colwise().sum();
  t.row(m).segment(n, m).setZero();

  std::vector<Index> basis(static_cast<size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  const double enter_eps = 1e-10;
  const double pivot_eps = 1e-11;
  const long max_pivots = 200000;

  while (true) {
    Index enter = -1;
    for (Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -enter_eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Index leave = -1;
    double best = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) <= pivot_eps) continue;
      const double ratio = t(i, n + m) / t(i, enter);
      if (leave < 0 || ratio < best - 1e-14 ||
          (std::abs(ratio - best) <= 1e-14 &&
           basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)]))
      {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // no positive pivot: column cannot improve

    t.row(leave) /= t(leave, enter);
    for (Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[static_cast<size_t>(leave)] = enter;

    if (++out.iterations >= max_pivots) {
      out.phase1_objective = -t(m, n + m);
      return out;  // undecided; Bland should never get here
    }
  }

  out.phase1_objective = -t(m, n + m);
  if (out.phase1_objective > tol) {
    out.status = Feasibility::infeasible;
    return out;
  }

  out.x = RVector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index b = basis[static_cast<size_t>(i)];
    if (b < n) out.x(b) = std::max(0.0, t(i, n + m));
  }
  out.residual =
      m == 0 ? 0.0 : (lhs * out.x - rhs).cwiseAbs().maxCoeff();
  out.status = Feasibility::feasible;
  return out;
}

}  // namespace qord
