#include <doctest.h>

#include <random>

#include "qord/dilation.hpp"
#include "support/generators.hpp"

using namespace qord;

TEST_CASE("naimark: isometry, orthogonal PVM, effect reproduction") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 3;
    const Index n = 2 + trial % 4;
    const Observable a = gen::random_observable(rng, d, n);
    const NaimarkDilation dil = naimark(a);

    REQUIRE(dil.dilation_dim == d * static_cast<Index>(dil.outcomes.size()));
    CHECK(frob_distance(dil.isometry.adjoint() * dil.isometry, cidentity(d))
          < 1e-9);

    CMatrix pvm_sum = CMatrix::Zero(dil.dilation_dim, dil.dilation_dim);
    for (size_t s = 0; s < dil.pvm.size(); ++s) {
      pvm_sum += dil.pvm[s];
      for (size_t t = 0; t < dil.pvm.size(); ++t) {
        const CMatrix prod = dil.pvm[s] * dil.pvm[t];
        const double err = s == t ? frob_distance(prod, dil.pvm[s])
                                  : prod.norm();
        CHECK(err < 1e-12);
      }
    }
    CHECK(frob_distance(pvm_sum, cidentity(dil.dilation_dim)) < 1e-12);

    for (size_t s = 0; s < dil.outcomes.size(); ++s) {
      const CMatrix back =
          dil.isometry.adjoint() * dil.pvm[s] * dil.isometry;
      CHECK(frob_distance(back, a.effect(dil.outcomes[s])) < 1e-9);
    }
  }
}

TEST_CASE("naimark drops null outcomes from the dilation") {
  std::mt19937_64 rng(79);
  Observable a = gen::random_observable(rng, 3, 2);
  a.effects.push_back(CMatrix::Zero(3, 3));
  const NaimarkDilation dil = naimark(a);
  CHECK(dil.outcomes == std::vector<Index>{0, 1});
  CHECK(dil.dilation_dim == 6);
}

TEST_CASE("least disturbing channel acts as measure-and-record") {
  std::mt19937_64 rng(83);
  const Observable a = gen::random_observable(rng, 2, 3);
  const Channel lam = least_disturbing_channel(a);
  CHECK(validate_channel(lam).ok());

  // Independent formula: rho -> sum_x sqrt(A(x)) rho sqrt(A(x)) (x) P_x.
  const CMatrix rho = gen::random_state(rng, 2);
  CMatrix expected = CMatrix::Zero(6, 6);
  for (Index s = 0; s < 3; ++s) {
    const CMatrix root = psd_sqrt(a.effect(s));
    CMatrix marker = CMatrix::Zero(3, 3);
    marker(s, s) = 1.0;
    expected += tensor(root * rho * root, marker);
  }
  CHECK(frob_distance(qord::apply(lam, rho), expected) < 1e-11);
}

TEST_CASE("least disturbing instrument induces the observable") {
  std::mt19937_64 rng(89);
  const Observable a = gen::random_observable(rng, 3, 4);
  const Instrument instr = least_disturbing_instrument(a);
  CHECK(approx_equal(induced_observable(instr), a, 1e-9));
  CHECK(choi_distance(total_channel(instr), least_disturbing_channel(a))
        == 0.0);
}
