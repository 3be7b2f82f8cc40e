#include "entdist/channels.hpp"
#include "entdist/measures.hpp"
#include "helpers.hpp"

using namespace testing;

TEST_CASE("pauli channels") {
  const DensityMatrix r = random_mixed({2}, 2, 1);
  CHECK(max_abs_diff(apply(pauli_channel({1, 0, 0, 0}), r, 0).matrix(), r.matrix()) < 1e-15);
  const CMatrix deph = apply(pauli_channel({0.5, 0, 0, 0.5}), r, 0).matrix();
  CHECK(std::abs(deph(0, 1)) < 1e-15);
  CHECK(std::abs(deph(0, 0) - r.matrix()(0, 0)) < 1e-15);
  CHECK(max_abs_diff(apply(pauli_channel({0.25, 0.25, 0.25, 0.25}), r, 0).matrix(), CMatrix::Identity(2, 2) / 2.0) <
        1e-15);
  CHECK_THROWS_AS(pauli_channel({0.5, 0.5, 0.5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(pauli_channel({1.1, -0.1, 0, 0}), std::invalid_argument);
}

TEST_CASE("kraus completeness is enforced") {
  CHECK_THROWS_AS(KrausChannel(std::vector<CMatrix>{pauli(1) * 0.5}, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel(std::vector<CMatrix>{}, "empty"), std::invalid_argument);
}

TEST_CASE("measure-prepare channels") {
  const CMatrix id = CMatrix::Identity(2, 2);
  const KrausChannel deph =
      measure_prepare_channel(id, {DensityMatrix(projector(basis_ket(2, 0)), {2}), DensityMatrix(projector(basis_ket(2, 1)), {2})});
  const DensityMatrix r = random_mixed({2}, 2, 3);
  CHECK(max_abs_diff(apply(deph, r, 0).matrix(), apply(pauli_channel({0.5, 0, 0, 0.5}), r, 0).matrix()) < 1e-15);

  const DensityMatrix out = apply(deph, phi_plus(), 1);
  CHECK(max_abs_diff(out.matrix(), (projector(ket({0, 0})) + projector(ket({1, 1}))) / 2.0) < 1e-15);
  CHECK(log_negativity(out, Cut::single(0, 2)).value < 1e-12);

  CHECK_THROWS_AS(measure_prepare_channel(id, {DensityMatrix(projector(basis_ket(2, 0)), {2})}), std::invalid_argument);
}

TEST_CASE("apply on one factor") {
  const DensityMatrix r = random_mixed({2, 2}, 4, 5);
  CHECK(max_abs_diff(apply(identity_channel(2), r, 1).matrix(), r.matrix()) == 0);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const KrausChannel ch = random_channel(2, 3, rng);
    const DensityMatrix s = random_mixed({2, 2}, 3, derive_seed(9, i));
    CHECK(apply(ch, s, i % 2).matrix().trace().real() == doctest::Approx(1).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply(identity_channel(3), r, 0), std::invalid_argument);
  CHECK_THROWS_AS(apply(identity_channel(2), r, 2), std::invalid_argument);
}

TEST_CASE("composition") {
  std::mt19937_64 rng(11);
  const KrausChannel ch = random_channel(2, 2, rng);
  const KrausChannel c = compose(identity_channel(2), ch);
  CHECK(c.kraus().size() == ch.kraus().size());
  const DensityMatrix r = random_mixed({2}, 2, 12);
  CHECK(max_abs_diff(apply(c, r, 0).matrix(), apply(ch, r, 0).matrix()) < 1e-14);

  // Pauli channels compose by convolving probabilities over the Klein group.
  const std::array<double, 4> p{0.6, 0.2, 0.15, 0.05}, q{0.7, 0.1, 0.05, 0.15};
  std::array<double, 4> conv{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) conv[i ^ j] += p[i] * q[j];
  const KrausChannel pq = compose(pauli_channel(p), pauli_channel(q));
  CHECK(pq.kraus().size() == 16);
  CHECK(max_abs_diff(apply(pq, r, 0).matrix(), apply(pauli_channel(conv), r, 0).matrix()) < 1e-14);
}
