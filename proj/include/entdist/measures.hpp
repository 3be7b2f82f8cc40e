#pragma once

// Entanglement and discord quantifiers. All entropies are in bits.

#include "entdist/optimkit.hpp"
#include "entdist/states.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace entdist {

/// Bipartition of tensor factors, written e.g. "AC|B" with factors lettered A, B, C, ...
struct Cut {
  std::vector<int> left;
  std::vector<int> right;

  static Cut parse(std::string_view spec, int n_factors);
  /// Factor `k` against all others.
  static Cut single(int k, int n_factors);
  std::string str() const;
  void validate(int n_factors) const;
};

enum class BoundKind { Exact, UpperBound, LowerBound };
const char* to_string(BoundKind kind);

struct MeasureResult {
  double value = 0;
  BoundKind kind = BoundKind::Exact;
  std::string method;
  int restarts = 0;
  int iterations = 0;
  /// Estimated distance to the true value in the direction the bound is loose
  /// (Frank-Wolfe gap for the relative entropy of entanglement, 0 for exact values).
  double achieved_tol = 0;
};

/// Reorders the state so the cut's left factors come first; the result has dims {dL, dR}.
DensityMatrix bipartition(const DensityMatrix& rho, const Cut& cut);

double entropy(const CMatrix& rho);
double entropy(const DensityMatrix& rho);
/// +infinity when the support of rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double mutual_information(const DensityMatrix& rho, const Cut& cut);

MeasureResult log_negativity(const DensityMatrix& rho, const Cut& cut);
double pure_state_entanglement(const PureState& psi, const Cut& cut);
/// Same, for a density matrix that must be pure (purity within 1e-10 of 1).
double pure_state_entanglement(const DensityMatrix& rho, const Cut& cut);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);
MeasureResult eof_two_qubit(const DensityMatrix& rho);
/// Convex-roof entanglement of formation; `decomposition_size` 0 means rank^2.
MeasureResult eof_convex_roof(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg,
                              int decomposition_size = 0);
MeasureResult rel_entropy_entanglement(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg);
/// Closest separable state found for the relative entropy of entanglement. `warm` (atoms on the
/// cut's left and right factors) replaces the default start from the product of the marginals.
SeparableSolution rel_entropy_entanglement_solution(const DensityMatrix& rho, const Cut& cut,
                                                    const OptimizerConfig& cfg,
                                                    const SeparableSolution* warm = nullptr);
MeasureResult geometric_entanglement(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg);

// Discord quantifiers minimize over rank-1 projective measurements of factor `measured`.
MeasureResult rel_entropy_discord(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg);
MeasureResult geometric_discord_hs(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg);
MeasureResult discord_mutual_info(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg);
MeasureResult classical_correlations(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg);

/// |delta(AB) - E_f(BC) + S(AB) - S(A)| for a pure three-qubit state, with delta measured on A
/// by the discord optimizer and E_f from the concurrence formula.
double koashi_winter_residual(const PureState& psi_abc, const OptimizerConfig& cfg = {});

/// Binary entropy in bits.
double binary_entropy(double p);

}  // namespace entdist
