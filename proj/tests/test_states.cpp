#include "entdist/channels.hpp"
#include "entdist/measures.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace testing;

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(2, 2), {2}), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(4, 4) / 4.0, {2, 3}), std::invalid_argument);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg.diagonal() << 1.5, -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg, {2}), std::invalid_argument);
  CMatrix nan = CMatrix::Identity(2, 2) / 2.0;
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DensityMatrix(nan, {2}), std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix(CMatrix::Identity(6, 6) / 6.0, {2, 3}));
}

TEST_CASE("maximally entangled states") {
  const PureState phi = max_entangled(2);
  CHECK(phi.amplitudes()(0).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(phi.amplitudes()(3).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(phi.amplitudes()(1)) == 0);
  CHECK(max_abs_diff(phi.density().reduce({0}).matrix(), CMatrix::Identity(2, 2) / 2.0) < 1e-15);

  const PureState phi3 = max_entangled(3);
  CHECK(phi3.amplitudes().norm() == doctest::Approx(1));
  int nonzero = 0;
  for (Eigen::Index i = 0; i < 9; ++i) nonzero += std::abs(phi3.amplitudes()(i)) > 0;
  CHECK(nonzero == 3);
}

TEST_CASE("eta") {
  const DensityMatrix eta = cubitt_eta();
  CHECK(eta.matrix()(0, 7).real() == doctest::Approx(1.0 / 6));
  CHECK(eta.matrix().trace().real() == doctest::Approx(1));
  CHECK(eigvals_hermitian(partial_transpose(eta.matrix(), {2, 2, 2}, 2)).minCoeff() >= -1e-12);
  CHECK(eigvals_hermitian(partial_transpose(eta.matrix(), {2, 2, 2}, 1)).minCoeff() >= -1e-12);
  CHECK(eigvals_hermitian(partial_transpose(eta.matrix(), {2, 2, 2}, 0)).minCoeff() ==
        doctest::Approx(oracle::kEtaMinEigTA));
}

TEST_CASE("classical and separable constructors") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
  p(0, 0) = 1;
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(max_abs_diff(make_cc(p, id, id).matrix(), projector(ket({0, 0}))) < 1e-15);

  p = Eigen::MatrixXd::Identity(2, 2) / 2.0;
  const DensityMatrix cc = make_cc(p, id, id);
  const CMatrix both = measure_factor(measure_factor(cc.matrix(), {2, 2}, id, 0), {2, 2}, id, 1);
  CHECK(max_abs_diff(both, cc.matrix()) < 1e-15);

  const DensityMatrix cq = make_cq(p, id, {basis_ket(2, 0), plus()});
  CHECK(max_abs_diff(measure_factor(cq.matrix(), {2, 2}, id, 0), cq.matrix()) < 1e-12);
  CHECK(max_abs_diff(make_cq(p, id, {basis_ket(2, 0), basis_ket(2, 1)}).matrix(), cc.matrix()) < 1e-15);

  CHECK(max_abs_diff(make_separable({{1.0, {basis_ket(2, 0), basis_ket(2, 0)}}}).matrix(), projector(ket({0, 0}))) <
        1e-15);
  CHECK(log_negativity(sep_mix(), Cut::single(0, 2)).value < 1e-12);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(2, 2, 0.3);
  CHECK_THROWS_AS(make_cc(bad, id, id), std::invalid_argument);
  CMatrix skew = id;
  skew(0, 1) = 0.5;
  CHECK_THROWS_AS(make_cc(p, skew, id), std::invalid_argument);
}

TEST_CASE("random states") {
  CHECK(random_pure({2, 3}, 42).amplitudes() == random_pure({2, 3}, 42).amplitudes());
  CHECK(random_mixed({2, 2}, 3, 42).matrix() == random_mixed({2, 2}, 3, 42).matrix());
  CHECK(random_mixed({2, 2}, 3, 42).matrix() != random_mixed({2, 2}, 3, 43).matrix());
  CHECK(random_mixed({2, 2}, 1, 5).purity() == doctest::Approx(1).epsilon(1e-10));
  CHECK_THROWS_AS(random_mixed({2}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_mixed({2}, 0, 1), std::invalid_argument);

  double mean = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) mean += random_mixed({2}, 2, derive_seed(2024, i)).purity() / n;
  CHECK(mean == doctest::Approx(oracle::kInducedPurityMean).epsilon(0.025));
}
