#include "entdist/channels.hpp"

#include <sstream>
#include <stdexcept>

namespace entdist {

KrausChannel::KrausChannel(std::vector<CMatrix> kraus_ops, std::string label)
    : ops_(std::move(kraus_ops)), label_(std::move(label)) {
  if (ops_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  const auto rows = ops_.front().rows(), cols = ops_.front().cols();
  if (rows < 1 || cols < 1) throw std::invalid_argument("Kraus operator has zero dimension");
  CMatrix sum = CMatrix::Zero(cols, cols);
  for (const auto& k : ops_) {
    if (k.rows() != rows || k.cols() != cols) throw std::invalid_argument("Kraus operators have inconsistent shapes");
    if (!k.allFinite()) throw std::invalid_argument("Kraus operator has non-finite entries");
    sum += k.adjoint() * k;
  }
  const double dev = (sum - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "Kraus operators are not trace preserving (max |sum K^dagger K - 1| = " << dev << ")";
    throw std::invalid_argument(os.str());
  }
}

bool KrausChannel::is_identity(double tol) const {
  if (ops_.size() != 1 || input_dim() != output_dim()) return false;
  const CMatrix& k = ops_.front();
  const Complex phase = k(0, 0);
  return (k - phase * CMatrix::Identity(k.rows(), k.cols())).cwiseAbs().maxCoeff() < tol;
}

KrausChannel identity_channel(int d) {
  if (d < 1) throw std::invalid_argument("identity_channel: d must be positive");
  return KrausChannel({CMatrix::Identity(d, d)}, "identity");
}

KrausChannel pauli_channel(const std::array<double, 4>& p) {
  double total = 0;
  for (double x : p) {
    if (!(x >= 0)) throw std::invalid_argument("pauli_channel: probabilities must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("pauli_channel: probabilities must sum to 1");
  std::vector<CMatrix> ops;
  for (int i = 0; i < 4; ++i) ops.push_back(std::sqrt(p[i]) * pauli(i));
  std::ostringstream os;
  os.precision(17);
  os << "pauli(" << p[0] << "," << p[1] << "," << p[2] << "," << p[3] << ")";
  return KrausChannel(std::move(ops), os.str());
}

KrausChannel measure_prepare_channel(const CMatrix& basis, const std::vector<DensityMatrix>& prepared) {
  check_orthonormal(basis, "measure_prepare_channel");
  if (static_cast<std::size_t>(basis.cols()) != prepared.size()) {
    throw std::invalid_argument("measure_prepare_channel: " + std::to_string(basis.cols()) + " basis vectors but " +
                                std::to_string(prepared.size()) + " prepared states");
  }
  const int d_out = prepared.front().dim();
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    if (prepared[i].dim() != d_out) throw std::invalid_argument("measure_prepare_channel: prepared dimensions differ");
    const auto e = eig_hermitian(prepared[i].matrix());
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
      if (e.values(k) < 1e-14) continue;
      ops.push_back(std::sqrt(e.values(k)) * e.vectors.col(k) * basis.col(static_cast<Eigen::Index>(i)).adjoint());
    }
  }
  return KrausChannel(std::move(ops), "measure-prepare");
}

CMatrix apply(const KrausChannel& channel, const CMatrix& rho, const DimList& dims, int sys) {
  detail::check_factor(dims, sys);
  if (dims[sys] != channel.input_dim()) {
    throw std::invalid_argument("apply: channel input dimension " + std::to_string(channel.input_dim()) +
                                " does not match factor dimension " + std::to_string(dims[sys]));
  }
  DimList out_dims = dims;
  out_dims[sys] = channel.output_dim();
  const int n_out = total_dim(out_dims);
  CMatrix out = CMatrix::Zero(n_out, n_out);
  for (const auto& k : channel.kraus()) {
    // Rectangular embedding 1 ⊗ K ⊗ 1.
    int left = 1, right = 1;
    for (int f = 0; f < sys; ++f) left *= dims[f];
    for (int f = sys + 1; f < static_cast<int>(dims.size()); ++f) right *= dims[f];
    const CMatrix big = tensor(tensor(CMatrix::Identity(left, left), k), CMatrix::Identity(right, right));
    out.noalias() += big * rho * big.adjoint();
  }
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho, int sys) {
  DimList out_dims = rho.dims();
  detail::check_factor(out_dims, sys);
  out_dims[sys] = channel.output_dim();
  if (channel.output_dim() < 2) throw std::invalid_argument("apply: channel output dimension must be >= 2");
  return DensityMatrix::trusted(apply(channel, rho.matrix(), rho.dims(), sys), out_dims);
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.input_dim() != b.output_dim()) {
    throw std::invalid_argument("compose: input dimension of the outer channel does not match output of the inner");
  }
  std::vector<CMatrix> ops;
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) {
      CMatrix k = ka * kb;
      if (k.norm() >= 1e-12) ops.push_back(std::move(k));
    }
  return KrausChannel(std::move(ops), a.label() + "*" + b.label());
}

CMatrix measure_factor(const CMatrix& rho, const DimList& dims, const CMatrix& basis, int sys) {
  detail::check_factor(dims, sys);
  if (basis.rows() != dims[sys] || basis.cols() != dims[sys]) {
    throw std::invalid_argument("measure_factor: basis dimension does not match factor");
  }
  // Rotate into the measurement basis, drop coherences on the measured digit, rotate back.
  const CMatrix u = embed(basis, dims, sys);
  CMatrix r = u.adjoint() * rho * u;
  const int stride = [&] {
    int s = 1;
    for (int f = sys + 1; f < static_cast<int>(dims.size()); ++f) s *= dims[f];
    return s;
  }();
  const int d = dims[sys];
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      if ((i / stride) % d != (j / stride) % d) r(i, j) = 0;
  return u * r * u.adjoint();
}

DensityMatrix measure_factor(const DensityMatrix& rho, const CMatrix& basis, int sys) {
  check_orthonormal(basis, "measure_factor");
  return DensityMatrix::trusted(measure_factor(rho.matrix(), rho.dims(), basis, sys), rho.dims());
}

std::array<double, 4> random_pauli_probabilities(std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::array<double, 4> p{};
  double total = 0;
  for (auto& x : p) total += (x = ex(rng));
  for (auto& x : p) x /= total;
  return p;
}

KrausChannel random_measure_prepare(int d, std::mt19937_64& rng) {
  const CMatrix basis = random_unitary(d, rng);
  std::vector<DensityMatrix> prepared;
  std::uniform_int_distribution<int> rank_dist(1, d);
  for (int i = 0; i < d; ++i) {
    prepared.push_back(random_mixed({d}, rank_dist(rng), rng()));
  }
  return measure_prepare_channel(basis, prepared);
}

KrausChannel random_channel(int d, int n_ops, std::mt19937_64& rng) {
  if (n_ops < 1) throw std::invalid_argument("random_channel: need at least one Kraus operator");
  // Columns of a Haar unitary on (n_ops * d) restricted to the first d form an isometry V; K_i = blocks of V.
  const CMatrix u = random_unitary(n_ops * d, rng);
  std::vector<CMatrix> ops;
  for (int i = 0; i < n_ops; ++i) ops.push_back(u.block(i * d, 0, d, d));
  return KrausChannel(std::move(ops), "random(" + std::to_string(n_ops) + ")");
}

}  // namespace entdist
