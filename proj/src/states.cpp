#include "entdist/states.hpp"

#include <sstream>
#include <stdexcept>

namespace entdist {

namespace {

void check_finite(const CMatrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

void check_probabilities(const Eigen::MatrixXd& p) {
  if ((p.array() < 0.0).any()) throw std::invalid_argument("negative probability");
  if (std::abs(p.sum() - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "probabilities sum to " << p.sum() << ", expected 1";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix mat, DimList dims, Trusted) : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("density matrix must be square");
  validate_dims(dims_, mat_.rows());
  check_finite(mat_);
  const double dev = hermitian_deviation(mat_);
  if (dev > kHermitianTol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max deviation " << dev << ")";
    throw std::invalid_argument(os.str());
  }
  mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();
}

DensityMatrix::DensityMatrix(CMatrix mat, DimList dims) : DensityMatrix(std::move(mat), std::move(dims), Trusted{}) {
  const double tr = std::real(mat_.trace());
  if (std::abs(tr - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1";
    throw std::invalid_argument(os.str());
  }
  const double lo = eigvals_hermitian(mat_).minCoeff();
  if (lo < -kStateTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lo;
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix DensityMatrix::trusted(CMatrix mat, DimList dims) {
  return DensityMatrix(std::move(mat), std::move(dims), Trusted{});
}

DensityMatrix DensityMatrix::reduce(const std::vector<int>& keep) const {
  DimList kd;
  for (int k : keep) {
    detail::check_factor(dims_, k);
    kd.push_back(dims_[k]);
  }
  return trusted(partial_trace(mat_, dims_, keep), kd);
}

PureState::PureState(CVector amplitudes, DimList dims) : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
  validate_dims(dims_, amps_.size());
  if (!amps_.allFinite()) throw std::invalid_argument("pure state has non-finite amplitudes");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "pure state norm is " << n << ", expected 1";
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix PureState::density() const { return DensityMatrix::trusted(projector(amps_), dims_); }

bool approx_equal(const DensityMatrix& a, const DensityMatrix& b, double tol) {
  if (a.dims() != b.dims()) return false;
  return trace_distance(a.matrix(), b.matrix()) < tol;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  DimList dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::trusted(tensor(a.matrix(), b.matrix()), dims);
}

DensityMatrix maximally_mixed(const DimList& dims) {
  const int n = total_dim(dims);
  return DensityMatrix(CMatrix::Identity(n, n) / double(n), dims);
}

PureState max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return PureState(v, {d, d});
}

PureState ghz() {
  CVector v = CVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureState(v, {2, 2, 2});
}

DensityMatrix cubitt_eta() {
  CMatrix m = projector(ghz().amplitudes()) / 3.0;
  for (int k : {0b001, 0b010, 0b101, 0b110}) m(k, k) += 1.0 / 6.0;
  return DensityMatrix(m, {2, 2, 2});
}

void check_orthonormal(const CMatrix& basis, const char* what) {
  if (basis.rows() != basis.cols() || basis.rows() < 2) {
    throw std::invalid_argument(std::string(what) + ": basis must be a square matrix of dimension >= 2");
  }
  const double dev = (basis.adjoint() * basis - CMatrix::Identity(basis.rows(), basis.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream os;
    os << what << ": basis is not orthonormal (max deviation " << dev << ")";
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix make_cc(const Eigen::MatrixXd& p, const CMatrix& basis_a, const CMatrix& basis_b) {
  check_orthonormal(basis_a, "make_cc");
  check_orthonormal(basis_b, "make_cc");
  if (p.rows() != basis_a.cols() || p.cols() != basis_b.cols()) {
    throw std::invalid_argument("make_cc: probability matrix shape does not match the bases");
  }
  check_probabilities(p);
  const int da = static_cast<int>(basis_a.rows()), db = static_cast<int>(basis_b.rows());
  CMatrix m = CMatrix::Zero(da * db, da * db);
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0) m += p(i, j) * projector(tensor(basis_a.col(i), basis_b.col(j)));
  return DensityMatrix(m, {da, db});
}

DensityMatrix make_cq(const Eigen::MatrixXd& p, const CMatrix& basis_a, const std::vector<CVector>& states_b) {
  check_orthonormal(basis_a, "make_cq");
  if (p.rows() != basis_a.cols() || p.cols() != static_cast<Eigen::Index>(states_b.size()) || states_b.empty()) {
    throw std::invalid_argument("make_cq: probability matrix shape does not match basis and state list");
  }
  check_probabilities(p);
  const int da = static_cast<int>(basis_a.rows());
  const int db = static_cast<int>(states_b.front().size());
  for (const auto& s : states_b) {
    if (s.size() != db || std::abs(s.norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("make_cq: states on B must be normalized and of equal dimension");
    }
  }
  CMatrix m = CMatrix::Zero(da * db, da * db);
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0) m += p(i, j) * projector(tensor(basis_a.col(i), states_b[j]));
  return DensityMatrix(m, {da, db});
}

DensityMatrix make_separable(const Ensemble& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("make_separable: empty ensemble");
  double total = 0;
  DimList dims;
  for (const auto& v : ensemble.front().locals) dims.push_back(static_cast<int>(v.size()));
  validate_dims(dims, total_dim(dims));
  for (const auto& term : ensemble) {
    if (term.probability < 0) throw std::invalid_argument("make_separable: negative probability");
    if (term.locals.size() != dims.size()) throw std::invalid_argument("make_separable: inconsistent factor count");
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (term.locals[k].size() != dims[k] || std::abs(term.locals[k].norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("make_separable: local states must be normalized with consistent dimensions");
      }
    }
    total += term.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("make_separable: probabilities do not sum to 1");

  const int n = total_dim(dims);
  CMatrix m = CMatrix::Zero(n, n);
  for (const auto& term : ensemble) {
    CVector v = term.locals.front();
    for (std::size_t k = 1; k < term.locals.size(); ++k) v = tensor(v, term.locals[k]);
    m += term.probability * projector(v);
  }
  return DensityMatrix(m, dims);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (index + 0x632be59bd9b4e019ULL));
}

CVector random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return v.normalized();
}

CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    q.col(k) *= std::abs(rk) > 0 ? rk / std::abs(rk) : Complex(1.0);
  }
  return q;
}

PureState random_pure(const DimList& dims, std::uint64_t seed) {
  validate_dims(dims, total_dim(dims));
  std::mt19937_64 rng(seed);
  return PureState(random_vector(total_dim(dims), rng), dims);
}

DensityMatrix random_mixed(const DimList& dims, int rank, std::uint64_t seed) {
  validate_dims(dims, total_dim(dims));
  const int n = total_dim(dims);
  if (rank < 1 || rank > n) {
    throw std::invalid_argument("random_mixed: rank " + std::to_string(rank) + " outside [1, " + std::to_string(n) + "]");
  }
  std::mt19937_64 rng(seed);
  const CVector big = random_vector(n * rank, rng);
  // Reshape to n x rank: system index is the row, ancilla the column.
  const CMatrix a = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      big.data(), n, rank);
  return DensityMatrix::trusted(a * a.adjoint(), dims);
}

}  // namespace entdist
