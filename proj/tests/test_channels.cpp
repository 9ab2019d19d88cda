#include <doctest.h>

#include <random>

#include "qord/channel.hpp"
#include "qord/errors.hpp"
#include "support/generators.hpp"

using namespace qord;

TEST_CASE("identity channel has a rank-1 Choi matrix and acts trivially") {
  const Channel id = identity_channel(3);
  CHECK(validate_channel(id).ok());
  const CMatrix x = choi(id);
  const HermEig eig = herm_eig(x);
  CHECK(eig.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(eig.eigenvalues(1) < 1e-12);

  std::mt19937_64 rng(2);
  const CMatrix rho = gen::random_state(rng, 3);
  CHECK(frob_distance(qord::apply(id, rho), rho) < 1e-15);
}

TEST_CASE("Schroedinger and Heisenberg pictures agree on expectations") {
  std::mt19937_64 rng(13);
  const Channel lam = gen::random_channel(rng, 3, 2, 4);
  CHECK(validate_channel(lam).ok());
  const CMatrix rho = gen::random_state(rng, 3);
  const CMatrix c = gen::random_hermitian(rng, 2);
  const Complex lhs = (qord::apply(lam, rho) * c).trace();
  const Complex rhs = (rho * qord::apply_heisenberg(lam, c)).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("kraus_from_choi reproduces the channel with minimal rank") {
  std::mt19937_64 rng(17);
  const Channel lam = gen::random_channel(rng, 2, 3, 2);
  const Channel back = kraus_from_choi(choi(lam), 2, 3);
  CHECK(choi_distance(back, lam) < 1e-10);
  CHECK(back.kraus.size() == 2);  // Choi rank, not the stored list length

  // A redundant Kraus list still canonicalizes to the same map.
  Channel padded = lam;
  padded.kraus.push_back(CMatrix::Zero(3, 2));
  CHECK(choi_distance(kraus_from_choi(choi(padded), 2, 3), lam) < 1e-10);
}

TEST_CASE("kraus_from_choi rejects non-PSD input") {
  CMatrix bad = -cidentity(4);
  CHECK_THROWS_AS(kraus_from_choi(bad, 2, 2), NotPsd);
}

TEST_CASE("compose chains actions in time order") {
  std::mt19937_64 rng(29);
  const Channel first = gen::random_channel(rng, 2, 3, 2);
  const Channel second = gen::random_channel(rng, 3, 2, 3);
  const Channel chained = compose(second, first);
  CHECK(chained.dim_in == 2);
  CHECK(chained.dim_out == 2);
  const CMatrix rho = gen::random_state(rng, 2);
  CHECK(frob_distance(qord::apply(chained, rho), qord::apply(second, qord::apply(first, rho)))
        < 1e-12);
}

TEST_CASE("trash_and_prepare always outputs the prepared state") {
  std::mt19937_64 rng(41);
  const CMatrix sigma = gen::random_state(rng, 3);
  const Channel tp = trash_and_prepare(sigma, 2);
  CHECK(validate_channel(tp).ok());
  const CMatrix rho = gen::random_state(rng, 2);
  CHECK(frob_distance(qord::apply(tp, rho), sigma) < 1e-12);

  // Heisenberg form C -> tr[sigma C] I
  const CMatrix c = gen::random_hermitian(rng, 3);
  const CMatrix heis = qord::apply_heisenberg(tp, c);
  CHECK(frob_distance(heis, (sigma * c).trace() * cidentity(2)) < 1e-12);

  CHECK_THROWS_AS(trash_and_prepare(cidentity(2), 2), InvalidState);
  CHECK(choi_distance(depolarize_to(sigma, 2), tp) == 0.0);
}

TEST_CASE("minimal_stinespring reproduces the Heisenberg action") {
  std::mt19937_64 rng(53);
  const Channel lam = gen::random_channel(rng, 3, 2, 3);
  const StinespringDilation dil = minimal_stinespring(lam);
  CHECK(dil.env_dim == 3);
  CHECK(frob_distance(dil.isometry.adjoint() * dil.isometry, cidentity(3))
        < 1e-12);
  const CMatrix c = gen::random_hermitian(rng, 2);
  const CMatrix via_v = dil.isometry.adjoint() *
                        tensor(c, cidentity(dil.env_dim)) * dil.isometry;
  CHECK(frob_distance(via_v, qord::apply_heisenberg(lam, c)) < 1e-10);
}

TEST_CASE("conjugate_channel is the trace over the output factor") {
  std::mt19937_64 rng(59);
  const Channel lam = gen::random_channel(rng, 2, 3, 2);
  const StinespringDilation dil = minimal_stinespring(lam);
  const Channel conj = conjugate_channel(lam);
  CHECK(conj.dim_out == dil.env_dim);
  const CMatrix rho = gen::random_state(rng, 2);
  const CMatrix lifted = dil.isometry * rho * dil.isometry.adjoint();
  CHECK(frob_distance(qord::apply(conj, rho),
                      partial_trace(lifted, 3, dil.env_dim,
                                    Subsystem::first)) < 1e-10);
  CHECK(frob_distance(qord::apply(lam, rho),
                      partial_trace(lifted, 3, dil.env_dim,
                                    Subsystem::second)) < 1e-10);
}

TEST_CASE("validate_channel flags broken Kraus lists") {
  Channel broken{2, 2, {0.9 * cidentity(2)}};
  const ChannelReport rep = validate_channel(broken);
  CHECK(rep.tp_defect > 0.1);
  CHECK_FALSE(rep.ok());
}
