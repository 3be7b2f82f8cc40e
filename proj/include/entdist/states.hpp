#pragma once

#include "entdist/qmat.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace entdist {

inline constexpr double kStateTol = 1e-10;

/// A positive semidefinite, unit-trace operator with its tensor-factor structure.
class DensityMatrix {
 public:
  /// Validates Hermiticity, positivity and normalization (all within kStateTol).
  DensityMatrix(CMatrix mat, DimList dims);

  /// Skips the spectral validation; for outputs that are valid by construction
  /// (channel images, reductions). Still symmetrizes and checks the shape.
  static DensityMatrix trusted(CMatrix mat, DimList dims);

  const CMatrix& matrix() const { return mat_; }
  const DimList& dims() const { return dims_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  int factors() const { return static_cast<int>(dims_.size()); }

  DensityMatrix reduce(const std::vector<int>& keep) const;
  double purity() const { return std::real((mat_ * mat_).trace()); }

 private:
  struct Trusted {};
  DensityMatrix(CMatrix mat, DimList dims, Trusted);

  CMatrix mat_;
  DimList dims_;
};

class PureState {
 public:
  PureState(CVector amplitudes, DimList dims);

  const CVector& amplitudes() const { return amps_; }
  const DimList& dims() const { return dims_; }
  DensityMatrix density() const;

 private:
  CVector amps_;
  DimList dims_;
};

/// One term of a separable ensemble: a weight and one pure state per factor.
struct ProductTerm {
  double probability;
  std::vector<CVector> locals;
};
using Ensemble = std::vector<ProductTerm>;

/// Trace-distance equality below 1e-10.
bool approx_equal(const DensityMatrix& a, const DensityMatrix& b, double tol = kStateTol);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix maximally_mixed(const DimList& dims);

// -- named states -------------------------------------------------------------

/// (1/sqrt d) sum_i |ii>.
PureState max_entangled(int d);
/// (|000> + |111>)/sqrt 2 on factors A, B, C.
PureState ghz();
/// GHZ projector with weight 1/3 plus |001>,|010>,|101>,|110> with weight 1/6 each.
/// Separable across AB|C and AC|B, entangled across A|BC.
DensityMatrix cubitt_eta();

// -- constructors for the state-space hierarchy -------------------------------

/// Bases are unitary matrices whose columns are the basis vectors.
DensityMatrix make_cc(const Eigen::MatrixXd& p, const CMatrix& basis_a, const CMatrix& basis_b);
DensityMatrix make_cq(const Eigen::MatrixXd& p, const CMatrix& basis_a, const std::vector<CVector>& states_b);
DensityMatrix make_separable(const Ensemble& ensemble);

// -- sampling -----------------------------------------------------------------

/// Sub-seed for sample `index` of a seeded run; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

CVector random_vector(int d, std::mt19937_64& rng);
CMatrix random_unitary(int d, std::mt19937_64& rng);
PureState random_pure(const DimList& dims, std::uint64_t seed);
/// Partial trace of a Haar pure state on dims x rank ancilla.
DensityMatrix random_mixed(const DimList& dims, int rank, std::uint64_t seed);

void check_orthonormal(const CMatrix& basis, const char* what);

}  // namespace entdist
