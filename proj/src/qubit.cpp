#include "qord/qubit.hpp"

#include <algorithm>
#include <cmath>

#include "qord/errors.hpp"

namespace qord {

CMatrix pauli_dot(const Vector3& v) {
  CMatrix m(2, 2);
  m(0, 0) = Complex(v(2), 0.0);
  m(0, 1) = Complex(v(0), -v(1));
  m(1, 0) = Complex(v(0), v(1));
  m(1, 1) = Complex(-v(2), 0.0);
  return m;
}

Observable qubit_observable(const Vector3& v) {
  if (v.norm() > 1.0 + 1e-12)
    throw NotAnEffect("qubit_observable: Bloch vector longer than 1");
  Observable a;
  a.dim = 2;
  const CMatrix s = pauli_dot(v);
  a.effects.push_back((cidentity(2) + s) / 2.0);
  a.effects.push_back((cidentity(2) - s) / 2.0);
  return a;
}

WeightedUnitaryMix lueders_decomposition(const Vector3& v) {
  const double n = v.norm();
  if (n > 1.0 + 1e-12)
    throw NotAnEffect("lueders_decomposition: Bloch vector longer than 1");
  WeightedUnitaryMix mix;
  if (n < 1e-12) {
    mix.identity = true;
    return mix;
  }
  mix.lambda = (1.0 + std::sqrt(std::max(0.0, 1.0 - n * n))) / 2.0;
  mix.axis = v / n;
  return mix;
}

Channel mix_channel(const WeightedUnitaryMix& mix) {
  Channel lambda{2, 2, {}};
  if (mix.identity) {
    lambda.kraus.push_back(cidentity(2));
    return lambda;
  }
  if (mix.lambda < -1e-12 || mix.lambda > 1.0 + 1e-12)
    throw InvalidDistribution("mix_channel: weight outside [0, 1]");
  if (std::abs(mix.axis.norm() - 1.0) > 1e-9)
    throw InvalidState("mix_channel: axis is not a unit vector");
  const double l = std::clamp(mix.lambda, 0.0, 1.0);
  if (l > 0.0)
    lambda.kraus.push_back(std::sqrt(l) * cidentity(2));
  if (l < 1.0)
    lambda.kraus.push_back(std::sqrt(1.0 - l) * pauli_dot(mix.axis));
  return lambda;
}

double compose_weights(double lambda, double lambda_prime) {
  return 1.0 - lambda - lambda_prime + 2.0 * lambda * lambda_prime;
}

std::optional<double> solve_intermediate_weight(double lambda, double mu) {
  if (std::abs(lambda - 0.5) < 1e-12) {
    if (std::abs(mu - 0.5) < 1e-12) return 1.0;
    throw SingularSharpness(
        "solve_intermediate_weight: a half-half mix composes to itself "
        "only");
  }
  if (mu > lambda + 1e-12) return std::nullopt;
  const double lp = (mu + lambda - 1.0) / (2.0 * lambda - 1.0);
  return std::clamp(lp, 0.5, 1.0);
}

bool qubit_order(const Vector3& w, const Vector3& v) {
  if (w.cross(v).norm() > 1e-10) return false;
  return w.norm() <= v.norm() + 1e-12;
}

double identity_weight(const Channel& lambda) {
  if (lambda.dim_in != 2 || lambda.dim_out != 2)
    throw DimensionMismatch("identity_weight: qubit channels only");
  const CMatrix x = choi(lambda);
  // <vec(I)| Choi |vec(I)> / 4, with vec(I) occupying flat slots 0 and 3.
  const Complex val = x(0, 0) + x(0, 3) + x(3, 0) + x(3, 3);
  return val.real() / 4.0;
}

}  // namespace qord
