#pragma once

// Direct and indirect entanglement distribution through a channel acting on the carrier C,
// and the discord bounds on the entanglement an indirect protocol can distribute.
// Tripartite states are ordered A, B, C; C is the carrier sent from A's side to B.

#include "entdist/channels.hpp"
#include "entdist/measures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace entdist {

enum class Measure { LogNegativity, Formation, RelativeEntropy, Geometric };

/// Accepts "E_n", "E_f", "E_r", "E_g" and the long names log-negativity, eof,
/// rel-ent-entanglement, geometric-entanglement.
Measure parse_measure(std::string_view name);
const char* to_string(Measure m);
/// Whether the measure is convex, so optimizing over pure inputs is exact rather than heuristic.
bool is_convex(Measure m);

/// E_f uses the concurrence formula on 2x2 cuts and the convex roof elsewhere.
MeasureResult evaluate(Measure m, const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg);

/// E(1 ⊗ Λ[sigma]) for bipartite sigma with the channel acting on the second factor.
MeasureResult direct_gain(const KrausChannel& channel, const DensityMatrix& sigma, Measure m,
                          const OptimizerConfig& cfg);

struct ProtocolOptimum {
  /// Lower bound on the supremum.
  double value = 0;
  OptResult opt;
  /// Achieving input state.
  CMatrix state;
  DimList dims;
};

/// Maximizes direct_gain over pure inputs on d_a x d_in; the maximally entangled state is the first start.
/// `inner` configures the measure evaluation inside the search. The searched quantity has the
/// achieved_tol of the maximized term subtracted, so the search cannot profit from a loose upper bound.
ProtocolOptimum optimize_direct(const KrausChannel& channel, Measure m, int d_a, const OptimizerConfig& cfg,
                                const OptimizerConfig& inner = {});

struct DistributionOutcome {
  DensityMatrix initial;
  std::string channel;
  DensityMatrix final_state;
  Measure measure = Measure::LogNegativity;
  MeasureResult before;   // AC|B on the initial state
  MeasureResult after;    // A|BC on the final state
  std::optional<MeasureResult> carrier;  // AB|C, noiseless channel only
  double gain = 0;
};

DistributionOutcome indirect_gain(const DensityMatrix& rho_abc, const KrausChannel& channel, Measure m,
                                  const OptimizerConfig& cfg);

/// Maximizes the indirect gain over states reduced from pure states on ABC ⊗ ancilla.
/// `ancilla` 0 means d_A d_B d_C. The first start is φ⁺ on AC with B in |0>.
ProtocolOptimum optimize_indirect(const KrausChannel& channel, Measure m, const DimList& dims,
                                  const OptimizerConfig& cfg, const OptimizerConfig& inner = {}, int ancilla = 0);

struct ProtocolClass {
  bool excessive = false;
  MeasureResult before;   // AC|B
  MeasureResult after;    // A|BC
  MeasureResult carrier;  // AB|C
  double guard = 0;
};

/// Noiseless protocol: excessive iff E^{A|BC} - E^{AC|B} > E^{AB|C} + guard, where the guard is
/// `guard` plus the reported tolerances of the three values.
ProtocolClass classify_protocol(const DensityMatrix& rho_abc, Measure m, const OptimizerConfig& cfg,
                                double guard = 1e-9);

struct BoundComponent {
  std::string name;
  double value = 0;
  BoundKind kind = BoundKind::Exact;
  double achieved_tol = 0;
};

struct BoundReport {
  std::string id;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  /// Allowance for optimizer error in the direction that could fake a violation.
  double tol = 0;
  bool holds = true;
  /// Slack after moving every component by its tolerance in the favourable direction;
  /// a negative value would be a certified violation.
  double worst_case_slack = 0;
  std::vector<BoundComponent> components;
};

/// E_r^{A|BC} - E_r^{AC|B} <= D_r^{C|AB}.
BoundReport check_discord_bound(const DensityMatrix& rho_abc, const OptimizerConfig& cfg);

struct SandwichReport {
  BoundReport upper;  // E^{A|BC} <= E^{AC|B} + D
  BoundReport lower;  // E^{A|BC} >= E^{AC|B} - D
  bool holds() const { return upper.holds && lower.holds; }
};
SandwichReport check_sandwich(const DensityMatrix& rho_abc, const OptimizerConfig& cfg);

/// E_r^{A|BC}(rho') - E_r^{AC|B}(rho) <= min(D_r^{C|AB}(rho), D_r^{C|AB}(rho')), rho' = 1 ⊗ Λ_C[rho].
BoundReport check_noisy_bound(const DensityMatrix& rho_abc, const KrausChannel& channel, const OptimizerConfig& cfg);

}  // namespace entdist
