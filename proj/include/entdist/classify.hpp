#pragma once

// Membership tests for the nested classes of states: classically correlated, zero discord,
// PPT. Zero-discord and classical-correlation checks are optimization based and return the
// measurement basis that certifies a positive verdict.

#include "entdist/measures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace entdist {

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0;
};

PptResult is_ppt(const DensityMatrix& rho, const Cut& cut, double tol = 1e-10);

/// Trace distance between rho and the state after measuring factor `measured` in `basis` (columns).
double measurement_invariance(const DensityMatrix& rho, const CMatrix& basis, int measured);

struct ZeroDiscordResult {
  bool zero = false;
  /// Smallest measurement_invariance found and the basis achieving it.
  double distance = 0;
  CMatrix basis;
};

ZeroDiscordResult is_zero_discord(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg,
                                  double tol = 1e-6);

struct ClassicalResult {
  bool cc = false;
  double distance = 0;
  CMatrix basis_a;
  CMatrix basis_b;
};

/// Bipartite states only: minimizes the trace distance to Pi_A ⊗ Pi_B[rho] over both bases.
ClassicalResult is_classically_correlated(const DensityMatrix& rho, const OptimizerConfig& cfg, double tol = 1e-6);

struct CutVerdict {
  Cut cut;
  PptResult ppt;
  /// "entangled", "separable" (PPT where PPT is sufficient: 2x2 and 2x3) or "PPT (undetected)".
  std::string verdict;
};

struct ClassReport {
  DimList dims;
  std::vector<CutVerdict> cuts;
  /// Indexed by measured factor.
  std::vector<ZeroDiscordResult> zero_discord;
  /// Present for bipartite states.
  std::optional<ClassicalResult> cc;
  double ppt_tol = 0;
  double tol = 0;

  /// Violations of cc ⇒ zero discord on every side ⇒ PPT on every cut; empty when consistent.
  std::vector<std::string> hierarchy_violations() const;
};

/// Every bipartition with factor 0 on the left (one per unordered cut).
std::vector<Cut> all_cuts(int n_factors);

ClassReport classify(const DensityMatrix& rho, const OptimizerConfig& cfg, double tol = 1e-6,
                     double ppt_tol = 1e-10);

}  // namespace entdist
