#include "entdist/classify.hpp"

#include "entdist/channels.hpp"

#include <stdexcept>

namespace entdist {

PptResult is_ppt(const DensityMatrix& rho, const Cut& cut, double tol) {
  cut.validate(static_cast<int>(rho.factors()));
  const RVector ev = eigvals_hermitian(partial_transpose(rho.matrix(), rho.dims(), cut.left));
  return {ev(0) >= -tol, ev(0)};
}

double measurement_invariance(const DensityMatrix& rho, const CMatrix& basis, int measured) {
  check_orthonormal(basis, "measurement_invariance");
  return trace_distance(rho.matrix(), measure_factor(rho.matrix(), rho.dims(), basis, measured));
}

ZeroDiscordResult is_zero_discord(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg, double tol) {
  detail::check_factor(rho.dims(), measured);
  const int d = rho.dims()[measured];
  if (d > 8) throw std::invalid_argument("is_zero_discord: measured factor dimension must be <= 8");
  const OptResult r = minimize_over_unitaries(
      [&](const CMatrix& u) {
        return trace_distance(rho.matrix(), measure_factor(rho.matrix(), rho.dims(), u, measured));
      },
      d, cfg);
  ZeroDiscordResult out;
  out.distance = r.value;
  out.basis = unitary_from_angles(d, r.params);
  out.zero = r.value < tol;
  return out;
}

ClassicalResult is_classically_correlated(const DensityMatrix& rho, const OptimizerConfig& cfg, double tol) {
  if (rho.factors() != 2) throw std::invalid_argument("is_classically_correlated: state must be bipartite");
  const int da = rho.dims()[0], db = rho.dims()[1];
  if (da > 8 || db > 8) throw std::invalid_argument("is_classically_correlated: factor dimensions must be <= 8");
  const int na = da * da, nb = db * db;
  auto split = [&](const RVector& x) {
    return std::pair<CMatrix, CMatrix>(unitary_from_angles(da, x.head(na)), unitary_from_angles(db, x.tail(nb)));
  };
  const ObjectiveFn f = [&](const RVector& x) {
    const auto [ua, ub] = split(x);
    const CMatrix m = measure_factor(measure_factor(rho.matrix(), rho.dims(), ua, 0), rho.dims(), ub, 1);
    return trace_distance(rho.matrix(), m);
  };
  const OptResult r = multistart(
      [&](int restart, std::mt19937_64& rng) {
        RVector x0 = RVector::Zero(na + nb);
        if (restart > 0) {
          std::uniform_real_distribution<double> u(-M_PI, M_PI);
          for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = u(rng);
        }
        return nelder_mead(f, x0, 0.5, cfg.max_iters, cfg.step_tol, cfg.value_tol);
      },
      cfg);
  ClassicalResult out;
  out.distance = r.value;
  std::tie(out.basis_a, out.basis_b) = split(r.params);
  out.cc = r.value < tol;
  return out;
}

std::vector<Cut> all_cuts(int n_factors) {
  if (n_factors < 2) throw std::invalid_argument("all_cuts: need at least two factors");
  std::vector<Cut> cuts;
  // Subsets of factors 1..n-1 joining factor 0 on the left; the right side must be non-empty.
  const int others = n_factors - 1;
  for (int mask = 0; mask < (1 << others) - 1; ++mask) {
    Cut c;
    c.left.push_back(0);
    for (int f = 1; f < n_factors; ++f) ((mask >> (f - 1)) & 1 ? c.left : c.right).push_back(f);
    cuts.push_back(std::move(c));
  }
  return cuts;
}

std::vector<std::string> ClassReport::hierarchy_violations() const {
  std::vector<std::string> out;
  if (cc && cc->cc) {
    for (std::size_t k = 0; k < zero_discord.size(); ++k) {
      if (!zero_discord[k].zero) out.push_back("classically correlated but discordant on factor " + std::to_string(k));
    }
  }
  for (std::size_t k = 0; k < zero_discord.size(); ++k) {
    if (!zero_discord[k].zero) continue;
    for (const auto& c : cuts) {
      if (!c.ppt.ppt) {
        out.push_back("zero discord on factor " + std::to_string(k) + " but not PPT across " + c.cut.str());
      }
    }
  }
  return out;
}

ClassReport classify(const DensityMatrix& rho, const OptimizerConfig& cfg, double tol, double ppt_tol) {
  ClassReport rep;
  rep.dims = rho.dims();
  rep.tol = tol;
  rep.ppt_tol = ppt_tol;
  const int n = static_cast<int>(rho.factors());
  for (const Cut& c : all_cuts(n)) {
    CutVerdict v{c, is_ppt(rho, c, ppt_tol), {}};
    int dl = 1, dr = 1;
    for (int f : c.left) dl *= rho.dims()[f];
    for (int f : c.right) dr *= rho.dims()[f];
    const bool sufficient = std::min(dl, dr) == 2 && std::max(dl, dr) <= 3;
    v.verdict = !v.ppt.ppt ? "entangled" : sufficient ? "separable" : "PPT (undetected)";
    rep.cuts.push_back(std::move(v));
  }
  for (int k = 0; k < n; ++k) rep.zero_discord.push_back(is_zero_discord(rho, k, cfg, tol));
  if (n == 2) rep.cc = is_classically_correlated(rho, cfg, tol);
  return rep;
}

}  // namespace entdist
