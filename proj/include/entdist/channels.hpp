#pragma once

#include "entdist/states.hpp"

#include <array>
#include <string>
#include <vector>

namespace entdist {

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  /// Validates shapes and completeness sum K^dagger K = 1 within 1e-10.
  KrausChannel(std::vector<CMatrix> kraus_ops, std::string label);

  const std::vector<CMatrix>& kraus() const { return ops_; }
  const std::string& label() const { return label_; }
  int input_dim() const { return static_cast<int>(ops_.front().cols()); }
  int output_dim() const { return static_cast<int>(ops_.front().rows()); }

  /// True when the channel acts as the identity (single Kraus operator proportional to 1).
  bool is_identity(double tol = 1e-12) const;

 private:
  std::vector<CMatrix> ops_;
  std::string label_;
};

KrausChannel identity_channel(int d);

/// rho -> sum_i p_i sigma_i rho sigma_i with sigma_0 = 1.
KrausChannel pauli_channel(const std::array<double, 4>& p);

/// rho -> sum_i <e_i|rho|e_i> prepared_i, with the basis vectors as columns of `basis`.
KrausChannel measure_prepare_channel(const CMatrix& basis, const std::vector<DensityMatrix>& prepared);

/// Applies the channel to factor `sys`; the factor's dimension becomes the channel's output dimension.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho, int sys);
CMatrix apply(const KrausChannel& channel, const CMatrix& rho, const DimList& dims, int sys);

/// Channel performing b first, then a. Kraus operators of Frobenius norm < 1e-12 are dropped.
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

/// Von Neumann measurement of factor `sys` in the basis given by the columns of `basis`
/// (the post-measurement state without reading the outcome).
CMatrix measure_factor(const CMatrix& rho, const DimList& dims, const CMatrix& basis, int sys);
DensityMatrix measure_factor(const DensityMatrix& rho, const CMatrix& basis, int sys);

/// Random Pauli probabilities, uniform on the simplex.
std::array<double, 4> random_pauli_probabilities(std::mt19937_64& rng);
/// Random measure-and-prepare channel on dimension d: Haar basis, random mixed prepared states.
KrausChannel random_measure_prepare(int d, std::mt19937_64& rng);
/// Random channel with `n_ops` Kraus operators from a Haar isometry.
KrausChannel random_channel(int d, int n_ops, std::mt19937_64& rng);

}  // namespace entdist
