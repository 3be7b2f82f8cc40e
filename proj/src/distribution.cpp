#include "entdist/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entdist {

namespace {

// Allowance for rounding in exact or tightly converged components.
constexpr double kComponentEps = 1e-9;

BoundComponent component(std::string name, const MeasureResult& r) {
  return {std::move(name), r.value, r.kind, r.achieved_tol};
}

void check_tripartite(const DensityMatrix& rho, const char* what) {
  if (rho.factors() != 3) throw std::invalid_argument(std::string(what) + ": state must have factors A, B, C");
}

CVector max_entangled_vector(int da, int db) {
  const int k = std::min(da, db);
  CVector v = CVector::Zero(da * db);
  for (int i = 0; i < k; ++i) v(i * db + i) = 1.0 / std::sqrt(static_cast<double>(k));
  return v;
}

void finish(BoundReport& rep) {
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -rep.tol;
}

}  // namespace

Measure parse_measure(std::string_view name) {
  if (name == "E_n" || name == "log-negativity") return Measure::LogNegativity;
  if (name == "E_f" || name == "eof") return Measure::Formation;
  if (name == "E_r" || name == "rel-ent-entanglement") return Measure::RelativeEntropy;
  if (name == "E_g" || name == "geometric-entanglement") return Measure::Geometric;
  throw std::invalid_argument("unknown entanglement measure '" + std::string(name) + "'");
}

const char* to_string(Measure m) {
  switch (m) {
    case Measure::LogNegativity: return "E_n";
    case Measure::Formation: return "E_f";
    case Measure::RelativeEntropy: return "E_r";
    case Measure::Geometric: return "E_g";
  }
  return "?";
}

bool is_convex(Measure m) { return m != Measure::LogNegativity; }

MeasureResult evaluate(Measure m, const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg) {
  switch (m) {
    case Measure::LogNegativity: return log_negativity(rho, cut);
    case Measure::Formation: {
      const DensityMatrix bp = bipartition(rho, cut);
      if (bp.dims()[0] == 2 && bp.dims()[1] == 2) return eof_two_qubit(bp);
      return eof_convex_roof(rho, cut, cfg);
    }
    case Measure::RelativeEntropy: return rel_entropy_entanglement(rho, cut, cfg);
    case Measure::Geometric: return geometric_entanglement(rho, cut, cfg);
  }
  throw std::invalid_argument("evaluate: unknown measure");
}

MeasureResult direct_gain(const KrausChannel& channel, const DensityMatrix& sigma, Measure m,
                          const OptimizerConfig& cfg) {
  if (sigma.factors() != 2) throw std::invalid_argument("direct_gain: input state must be bipartite");
  return evaluate(m, apply(channel, sigma, 1), Cut{{0}, {1}}, cfg);
}

ProtocolOptimum optimize_direct(const KrausChannel& channel, Measure m, int d_a, const OptimizerConfig& cfg,
                                const OptimizerConfig& inner) {
  const int d_in = channel.input_dim();
  if (d_a < 2) throw std::invalid_argument("optimize_direct: d_a must be >= 2");
  const DimList dims{d_a, d_in};
  const int n = d_a * d_in;
  auto gain = [&](const CVector& psi) {
    const MeasureResult r = direct_gain(channel, DensityMatrix::trusted(psi * psi.adjoint(), dims), m, inner);
    return r.value - r.achieved_tol;
  };
  const OptResult r =
      minimize_over_pure_states([&](const CVector& psi) { return -gain(psi); }, n, cfg, {max_entangled_vector(d_a, d_in)});
  ProtocolOptimum out;
  out.value = -r.value;
  out.opt = r;
  const CVector psi = pure_state_from_params(n, r.params);
  out.state = psi * psi.adjoint();
  out.dims = dims;
  return out;
}

DistributionOutcome indirect_gain(const DensityMatrix& rho_abc, const KrausChannel& channel, Measure m,
                                  const OptimizerConfig& cfg) {
  check_tripartite(rho_abc, "indirect_gain");
  DensityMatrix final_state = apply(channel, rho_abc, 2);
  MeasureResult before = evaluate(m, rho_abc, Cut::parse("AC|B", 3), cfg);
  MeasureResult after = evaluate(m, final_state, Cut::parse("A|BC", 3), cfg);
  std::optional<MeasureResult> carrier;
  if (channel.is_identity()) carrier = evaluate(m, rho_abc, Cut::parse("AB|C", 3), cfg);
  const double gain = after.value - before.value;
  return {rho_abc, channel.label(), std::move(final_state), m, std::move(before), std::move(after),
          std::move(carrier), gain};
}

ProtocolOptimum optimize_indirect(const KrausChannel& channel, Measure m, const DimList& dims,
                                  const OptimizerConfig& cfg, const OptimizerConfig& inner, int ancilla) {
  if (dims.size() != 3) throw std::invalid_argument("optimize_indirect: need dims for A, B, C");
  for (int d : dims) {
    if (d < 2 || d > 4) throw std::invalid_argument("optimize_indirect: factor dimensions must be in [2, 4]");
  }
  if (dims[2] != channel.input_dim()) {
    throw std::invalid_argument("optimize_indirect: channel input does not match the dimension of C");
  }
  const int dabc = total_dim(dims);
  if (ancilla == 0) ancilla = dabc;
  if (ancilla < 1) throw std::invalid_argument("optimize_indirect: ancilla dimension must be positive");
  const DimList full{dims[0], dims[1], dims[2], ancilla};
  const int n = dabc * ancilla;
  auto reduce = [&](const CVector& psi) {
    if (ancilla == 1) return DensityMatrix::trusted(CMatrix(psi * psi.adjoint()), dims);
    return DensityMatrix::trusted(partial_trace(CMatrix(psi * psi.adjoint()), full, {0, 1, 2}), dims);
  };
  auto gain = [&](const CVector& psi) {
    const DistributionOutcome o = indirect_gain(reduce(psi), channel, m, inner);
    return o.after.value - o.after.achieved_tol - o.before.value;
  };

  // φ⁺ on AC, B in |0>, ancilla in |0>.
  CVector seed = CVector::Zero(n);
  const int k = std::min(dims[0], dims[2]);
  for (int i = 0; i < k; ++i) seed(((i * dims[1]) * dims[2] + i) * ancilla) = 1.0 / std::sqrt(static_cast<double>(k));

  const OptResult r = minimize_over_pure_states([&](const CVector& psi) { return -gain(psi); }, n, cfg, {seed});
  ProtocolOptimum out;
  out.value = -r.value;
  out.opt = r;
  out.state = reduce(pure_state_from_params(n, r.params)).matrix();
  out.dims = dims;
  return out;
}

ProtocolClass classify_protocol(const DensityMatrix& rho_abc, Measure m, const OptimizerConfig& cfg, double guard) {
  check_tripartite(rho_abc, "classify_protocol");
  ProtocolClass out;
  out.before = evaluate(m, rho_abc, Cut::parse("AC|B", 3), cfg);
  out.after = evaluate(m, rho_abc, Cut::parse("A|BC", 3), cfg);
  out.carrier = evaluate(m, rho_abc, Cut::parse("AB|C", 3), cfg);
  out.guard = guard + out.before.achieved_tol + out.after.achieved_tol + out.carrier.achieved_tol;
  out.excessive = out.after.value - out.before.value > out.carrier.value + out.guard;
  return out;
}

// The entanglement values are upper bounds whose excess is at most their Frank-Wolfe gap; the
// discord is an upper bound with no certified lower side. Only an overestimated first term
// (or underestimated subtracted term) can fake a violation, so only its gap enters the tolerance.

BoundReport check_discord_bound(const DensityMatrix& rho_abc, const OptimizerConfig& cfg) {
  check_tripartite(rho_abc, "check_discord_bound");
  const MeasureResult e1 = rel_entropy_entanglement(rho_abc, Cut::parse("A|BC", 3), cfg);
  const MeasureResult e2 = rel_entropy_entanglement(rho_abc, Cut::parse("AC|B", 3), cfg);
  const MeasureResult d = rel_entropy_discord(rho_abc, 2, cfg);
  BoundReport rep;
  rep.id = "discord-bound";
  rep.lhs = e1.value - e2.value;
  rep.rhs = d.value;
  rep.tol = e1.achieved_tol + 3 * kComponentEps;
  rep.components = {component("E_r^{A|BC}", e1), component("E_r^{AC|B}", e2), component("D_r^{C|AB}", d)};
  finish(rep);
  rep.worst_case_slack = rep.slack + e1.achieved_tol;
  return rep;
}

SandwichReport check_sandwich(const DensityMatrix& rho_abc, const OptimizerConfig& cfg) {
  check_tripartite(rho_abc, "check_sandwich");
  const MeasureResult e1 = rel_entropy_entanglement(rho_abc, Cut::parse("A|BC", 3), cfg);
  const MeasureResult e2 = rel_entropy_entanglement(rho_abc, Cut::parse("AC|B", 3), cfg);
  const MeasureResult d = rel_entropy_discord(rho_abc, 2, cfg);
  const std::vector<BoundComponent> comps{component("E_r^{A|BC}", e1), component("E_r^{AC|B}", e2),
                                          component("D_r^{C|AB}", d)};
  SandwichReport out;
  out.upper.id = "sandwich-upper";
  out.upper.lhs = e1.value;
  out.upper.rhs = e2.value + d.value;
  out.upper.tol = e1.achieved_tol + 3 * kComponentEps;
  out.upper.components = comps;
  finish(out.upper);
  out.upper.worst_case_slack = out.upper.slack + e1.achieved_tol;

  // Written as E^{AC|B} - D <= E^{A|BC}: here an overestimated E^{AC|B} could fake a violation.
  out.lower.id = "sandwich-lower";
  out.lower.lhs = e2.value - d.value;
  out.lower.rhs = e1.value;
  out.lower.tol = e2.achieved_tol + 3 * kComponentEps;
  out.lower.components = comps;
  finish(out.lower);
  out.lower.worst_case_slack = out.lower.slack + e2.achieved_tol;
  return out;
}

BoundReport check_noisy_bound(const DensityMatrix& rho_abc, const KrausChannel& channel, const OptimizerConfig& cfg) {
  check_tripartite(rho_abc, "check_noisy_bound");
  const DensityMatrix out_state = apply(channel, rho_abc, 2);
  const MeasureResult e1 = rel_entropy_entanglement(out_state, Cut::parse("A|BC", 3), cfg);
  const MeasureResult e2 = rel_entropy_entanglement(rho_abc, Cut::parse("AC|B", 3), cfg);
  const MeasureResult d = rel_entropy_discord(rho_abc, 2, cfg);
  const MeasureResult d_out = rel_entropy_discord(out_state, 2, cfg);
  BoundReport rep;
  rep.id = "noisy-discord-bound";
  rep.lhs = e1.value - e2.value;
  rep.rhs = std::min(d.value, d_out.value);
  rep.tol = e1.achieved_tol + 4 * kComponentEps;
  rep.components = {component("E_r^{A|BC}(rho')", e1), component("E_r^{AC|B}(rho)", e2),
                    component("D_r^{C|AB}(rho)", d), component("D_r^{C|AB}(rho')", d_out)};
  finish(rep);
  rep.worst_case_slack = rep.slack + e1.achieved_tol;
  return rep;
}

}  // namespace entdist
