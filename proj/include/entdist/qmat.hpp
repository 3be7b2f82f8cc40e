#pragma once

// Dense complex linear algebra over small tensor-product Hilbert spaces.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace entdist {

template <typename Scalar>
using CMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = CMatrixT<double>;
using CVector = CVectorT<double>;
using RVector = RVectorT<double>;
using Complex = std::complex<double>;

/// Tensor-factor dimensions, left to right.
using DimList = std::vector<int>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr int kMaxDim = 64;

inline int total_dim(const DimList& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

inline void validate_dims(const DimList& dims, Eigen::Index n) {
  if (dims.empty()) throw std::invalid_argument("dimension list is empty");
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("factor dimension must be >= 2, got " + std::to_string(d));
  }
  if (total_dim(dims) != n) {
    throw std::invalid_argument("factor dimensions multiply to " + std::to_string(total_dim(dims)) +
                                " but matrix dimension is " + std::to_string(n));
  }
}

namespace detail {

// Row-major digit strides: the leftmost factor is most significant.
inline std::vector<int> strides(const DimList& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

// Offsets of every multi-index over `factors` into the full index space.
inline std::vector<int> offsets(const DimList& dims, const std::vector<int>& factors) {
  const auto st = strides(dims);
  std::vector<int> out{0};
  for (int f : factors) {
    std::vector<int> next;
    next.reserve(out.size() * dims[f]);
    for (int base : out)
      for (int i = 0; i < dims[f]; ++i) next.push_back(base + i * st[f]);
    out = std::move(next);
  }
  return out;
}

inline void check_factor(const DimList& dims, int sys) {
  if (sys < 0 || sys >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("factor index " + std::to_string(sys) + " out of range for " +
                                std::to_string(dims.size()) + " factors");
  }
}

}  // namespace detail

/// Kronecker product a ⊗ b.
template <typename DA, typename DB>
auto tensor(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  if (a.size() == 0 || b.size() == 0) throw std::invalid_argument("tensor: zero-dimension operand");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Reduced operator over the factors listed in `keep` (kept in the listed order).
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, const DimList& dims, std::vector<int> keep) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace: matrix not square");
  validate_dims(dims, m.rows());
  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);
  }
  for (int k : keep) detail::check_factor(dims, k);
  if (traced.size() + keep.size() != dims.size()) throw std::invalid_argument("partial_trace: repeated factor");

  const auto kept_off = detail::offsets(dims, keep);
  const auto traced_off = detail::offsets(dims, traced);
  const auto n = static_cast<Eigen::Index>(kept_off.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Scalar acc(0);
      for (int t : traced_off) acc += m(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

/// Transposes the listed factors, leaving the others untouched.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, const DimList& dims, const std::vector<int>& systems) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_transpose: matrix not square");
  validate_dims(dims, m.rows());
  for (int s : systems) detail::check_factor(dims, s);
  std::vector<int> rest;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (std::find(systems.begin(), systems.end(), k) == systems.end()) rest.push_back(k);
  }
  const auto sys_off = detail::offsets(dims, systems);
  const auto rest_off = detail::offsets(dims, rest);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (int ra : rest_off)
    for (int rb : rest_off)
      for (int sa : sys_off)
        for (int sb : sys_off) out(ra + sb, rb + sa) = m(ra + sa, rb + sb);
  return out;
}

template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, const DimList& dims, int sys) {
  return partial_transpose(m, dims, std::vector<int>{sys});
}

/// Reorders tensor factors: factor k of the result is factor order[k] of the input.
template <typename Derived>
auto permute_factors(const Eigen::MatrixBase<Derived>& m, const DimList& dims, const std::vector<int>& order) {
  using Scalar = typename Derived::Scalar;
  validate_dims(dims, m.rows());
  if (order.size() != dims.size()) throw std::invalid_argument("permute_factors: order size mismatch");
  std::vector<int> seen(dims.size(), 0);
  for (int f : order) {
    detail::check_factor(dims, f);
    if (seen[f]++) throw std::invalid_argument("permute_factors: repeated factor");
  }
  const auto map = detail::offsets(dims, order);  // new index -> old index
  const auto n = static_cast<Eigen::Index>(map.size());
  if (m.cols() == 1) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) out(i, 0) = m(map[i], 0);
    return out;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

/// Places a local operator on factor `sys`: 1 ⊗ op ⊗ 1.
template <typename Derived>
auto embed(const Eigen::MatrixBase<Derived>& op, const DimList& dims, int sys) {
  using Scalar = typename Derived::Scalar;
  detail::check_factor(dims, sys);
  int left = 1, right = 1;
  for (int k = 0; k < sys; ++k) left *= dims[k];
  for (int k = sys + 1; k < static_cast<int>(dims.size()); ++k) right *= dims[k];
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return tensor(tensor(M::Identity(left, left), op), M::Identity(right, right));
}

template <typename Derived>
double hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct HermitianEigen {
  RVectorT<Scalar> values;   // ascending
  CMatrixT<Scalar> vectors;  // columns
};

/// Eigendecomposition of a Hermitian matrix. Inputs within kHermitianTol are symmetrized first.
template <typename Derived>
auto eig_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::RealScalar;
  const double dev = hermitian_deviation(m);
  if (!(dev <= kHermitianTol)) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian (max |m - m^dagger| = " << dev << ")";
    throw std::invalid_argument(os.str());
  }
  const CMatrixT<Scalar> sym = (m + m.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<CMatrixT<Scalar>> solver(sym);
  return HermitianEigen<Scalar>{solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
auto eigvals_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::RealScalar;
  const double dev = hermitian_deviation(m);
  if (!(dev <= kHermitianTol)) {
    std::ostringstream os;
    os << "eigvals_hermitian: matrix is not Hermitian (max |m - m^dagger| = " << dev << ")";
    throw std::invalid_argument(os.str());
  }
  const CMatrixT<Scalar> sym = (m + m.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<CMatrixT<Scalar>> solver(sym, Eigen::EigenvaluesOnly);
  return RVectorT<Scalar>(solver.eigenvalues());
}

/// Applies f to the spectrum of a Hermitian matrix.
template <typename Derived, typename F>
auto hermitian_function(const Eigen::MatrixBase<Derived>& m, F&& f) {
  const auto e = eig_hermitian(m);
  auto fv = e.values.unaryExpr(f).eval();
  return (e.vectors * fv.asDiagonal() * e.vectors.adjoint()).eval();
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix not square");
  if (hermitian_deviation(m) <= kHermitianTol) return eigvals_hermitian(m).cwiseAbs().sum();
  using Scalar = typename Derived::RealScalar;
  Eigen::JacobiSVD<CMatrixT<Scalar>> svd(m.eval());
  return svd.singularValues().sum();
}

/// Trace distance ||a - b||_1 / 2.
template <typename DA, typename DB>
double trace_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return 0.5 * trace_norm((a - b).eval());
}

/// Squared fidelity F = (Tr |sqrt(rho) sqrt(sigma)|)^2. Both arguments must be positive semidefinite.
template <typename DA, typename DB>
double fidelity(const Eigen::MatrixBase<DA>& rho, const Eigen::MatrixBase<DB>& sigma) {
  using Scalar = typename DA::RealScalar;
  if (rho.rows() != sigma.rows() || rho.rows() != rho.cols() || sigma.rows() != sigma.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const auto er = eig_hermitian(rho);
  const auto es = eigvals_hermitian(sigma);
  if (er.values.minCoeff() < -kHermitianTol || es.minCoeff() < -kHermitianTol) {
    throw std::invalid_argument("fidelity: argument is not positive semidefinite");
  }
  const Eigen::Index n = er.values.size();
  const auto& ev = er.values;
  // Pure rho: F = <psi|sigma|psi>.
  if (ev(n - 1) > 1.0 - 1e-12 && (n == 1 || ev.head(n - 1).cwiseAbs().maxCoeff() < 1e-12)) {
    const auto psi = er.vectors.col(n - 1);
    return std::clamp(std::real((psi.adjoint() * sigma * psi)(0, 0)), 0.0, 1.0);
  }
  // Eigenvalues at rounding level are zeroed so a spurious sqrt(1e-17) cannot leak into the sum.
  const auto root_of = [](const auto& e) {
    const Scalar cut = Scalar(1e-14) * std::max(Scalar(1), e.values.cwiseAbs().maxCoeff());
    const RVectorT<Scalar> sq = e.values.unaryExpr([&](Scalar x) { return x > cut ? std::sqrt(x) : Scalar(0); });
    return CMatrixT<Scalar>(e.vectors * sq.asDiagonal() * e.vectors.adjoint());
  };
  const CMatrixT<Scalar> prod = root_of(er) * root_of(eig_hermitian(sigma));
  Eigen::JacobiSVD<CMatrixT<Scalar>> svd(prod);
  const double s = svd.singularValues().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

/// Projector |v><v|.
template <typename Derived>
auto projector(const Eigen::MatrixBase<Derived>& v) {
  return (v * v.adjoint()).eval();
}

inline CMatrix pauli(int k) {
  CMatrix s = CMatrix::Zero(2, 2);
  const Complex i(0, 1);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli index must be 0..3");
  }
  return s;
}

/// Computational basis ket |k> in dimension d.
inline CVector basis_ket(int d, int k) {
  CVector v = CVector::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace entdist
