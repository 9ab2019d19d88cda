#ifndef QORD_QUBIT_HPP
#define QORD_QUBIT_HPP

#include <optional>

#include "qord/channel.hpp"
#include "qord/observable.hpp"

namespace qord {

/// v . sigma for a real 3-vector (Pauli basis x, y, z).
CMatrix pauli_dot(const Vector3& v);

/// The binary observable with effects (I +/- v.sigma)/2; ||v|| <= 1
/// required, outcome 0 is the +v effect.
Observable qubit_observable(const Vector3& v);

/// lambda * id + (1 - lambda) * conjugation by axis.sigma. The identity
/// flag marks the degenerate v = 0 case, where no axis is defined and the
/// channel is the identity outright.
struct WeightedUnitaryMix {
  double lambda = 1.0;
  Vector3 axis = Vector3::Zero();
  bool identity = false;
};

/// Unconditional state change of the two-outcome square-root measurement of
/// qubit_observable(v), in closed form: lambda = (1 + sqrt(1 - ||v||^2))/2
/// with the unitary part conjugation by (v/||v||).sigma.
WeightedUnitaryMix lueders_decomposition(const Vector3& v);

/// Realizes a WeightedUnitaryMix as a channel with Kraus operators
/// {sqrt(lambda) I, sqrt(1-lambda) axis.sigma}.
Channel mix_channel(const WeightedUnitaryMix& mix);

/// Weight algebra of mixes along a common axis: the identity coefficient of
/// the composition, 1 - lambda - lambda' + 2 lambda lambda'.
double compose_weights(double lambda, double lambda_prime);

/// Solves compose_weights(lambda, x) = mu for x in [1/2, 1]. Empty when
/// mu > lambda (the sharper mix cannot be reached by further mixing);
/// throws SingularSharpness at lambda = 1/2 with mu != 1/2, and returns the
/// canonical 1 when both sit at 1/2.
std::optional<double> solve_intermediate_weight(double lambda, double mu);

/// Post-processing order of the Bloch family: colinear (either direction;
/// an outcome swap absorbs the sign) with ||w|| <= ||v||.
bool qubit_order(const Vector3& w, const Vector3& v);

/// Reads the identity coefficient off a qubit channel's Choi matrix:
/// exact for mixtures of the identity with traceless-unitary conjugations.
double identity_weight(const Channel& lambda);

}  // namespace qord

#endif
