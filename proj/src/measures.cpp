#include "entdist/measures.hpp"

#include "entdist/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace entdist {

namespace {

constexpr double kZeroEig = 1e-12;
constexpr double kLn2 = 0.69314718055994530942;

double entropy_of(const RVector& eigenvalues) {
  double s = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double p = eigenvalues(i);
    if (p > kZeroEig) s -= p * std::log2(p);
  }
  return s;
}

// Entropy of a Hermitian PSD matrix without the Hermiticity check (internal, trusted inputs).
double entropy_fast(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return entropy_of(es.eigenvalues());
}

int factor_dim(const DimList& dims, const std::vector<int>& f) {
  int d = 1;
  for (int k : f) d *= dims[k];
  return d;
}

void check_measured(const DensityMatrix& rho, int measured) {
  detail::check_factor(rho.dims(), measured);
  if (rho.factors() < 2) throw std::invalid_argument("discord needs at least two factors");
  if (rho.dims()[measured] > 8) throw std::invalid_argument("measured factor dimension must be <= 8");
}

MeasureResult from_opt(const OptResult& r, BoundKind kind, std::string method) {
  MeasureResult m;
  m.value = r.value;
  m.kind = kind;
  m.method = std::move(method);
  m.restarts = r.restarts_run;
  m.iterations = r.iterations;
  return m;
}

}  // namespace

// -- cuts ---------------------------------------------------------------------

Cut Cut::parse(std::string_view spec, int n_factors) {
  Cut c;
  bool right = false;
  for (char ch : spec) {
    if (ch == '|') {
      if (right) throw std::invalid_argument("cut '" + std::string(spec) + "' has more than one '|'");
      right = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up < 'A' || up > 'Z') throw std::invalid_argument("cut '" + std::string(spec) + "': bad factor label");
    (right ? c.right : c.left).push_back(up - 'A');
  }
  if (!right) throw std::invalid_argument("cut '" + std::string(spec) + "' needs a '|'");
  c.validate(n_factors);
  return c;
}

Cut Cut::single(int k, int n_factors) {
  Cut c;
  for (int i = 0; i < n_factors; ++i) (i == k ? c.left : c.right).push_back(i);
  c.validate(n_factors);
  return c;
}

std::string Cut::str() const {
  std::string s;
  for (int k : left) s += static_cast<char>('A' + k);
  s += '|';
  for (int k : right) s += static_cast<char>('A' + k);
  return s;
}

void Cut::validate(int n_factors) const {
  if (left.empty() || right.empty()) throw std::invalid_argument("cut sides must be non-empty");
  std::vector<int> seen(static_cast<std::size_t>(std::max(n_factors, 0)), 0);
  for (const auto* side : {&left, &right})
    for (int k : *side) {
      if (k < 0 || k >= n_factors) throw std::invalid_argument("cut refers to a factor the state does not have");
      if (seen[k]++) throw std::invalid_argument("cut sides overlap");
    }
  if (static_cast<int>(left.size() + right.size()) != n_factors) {
    throw std::invalid_argument("cut does not cover every factor");
  }
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Exact: return "exact";
    case BoundKind::UpperBound: return "upper-bound";
    case BoundKind::LowerBound: return "lower-bound";
  }
  return "?";
}

DensityMatrix bipartition(const DensityMatrix& rho, const Cut& cut) {
  cut.validate(rho.factors());
  std::vector<int> order = cut.left;
  order.insert(order.end(), cut.right.begin(), cut.right.end());
  const int dl = factor_dim(rho.dims(), cut.left), dr = factor_dim(rho.dims(), cut.right);
  return DensityMatrix::trusted(permute_factors(rho.matrix(), rho.dims(), order), {dl, dr});
}

// -- entropies ----------------------------------------------------------------

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double entropy(const CMatrix& rho) { return entropy_of(eigvals_hermitian(rho)); }
double entropy(const DensityMatrix& rho) { return entropy(rho.matrix()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
  const auto es = eig_hermitian(sigma.matrix());
  const CMatrix rt = es.vectors.adjoint() * rho.matrix() * es.vectors;
  double cross = 0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double w = std::real(rt(k, k));
    if (es.values(k) > kZeroEig) {
      cross += w * std::log2(es.values(k));
    } else if (w > 1e-10) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return std::max(0.0, -entropy(rho) - cross);
}

double mutual_information(const DensityMatrix& rho, const Cut& cut) {
  cut.validate(rho.factors());
  const double sl = entropy_fast(partial_trace(rho.matrix(), rho.dims(), cut.left));
  const double sr = entropy_fast(partial_trace(rho.matrix(), rho.dims(), cut.right));
  return std::max(0.0, sl + sr - entropy_fast(rho.matrix()));
}

// -- entanglement ------------------------------------------------------------

MeasureResult log_negativity(const DensityMatrix& rho, const Cut& cut) {
  cut.validate(rho.factors());
  const CMatrix pt = partial_transpose(rho.matrix(), rho.dims(), cut.left);
  MeasureResult r;
  r.value = std::max(0.0, std::log2(trace_norm(pt)));
  r.kind = BoundKind::Exact;
  r.method = "log2 trace norm of partial transpose";
  return r;
}

double pure_state_entanglement(const PureState& psi, const Cut& cut) {
  cut.validate(static_cast<int>(psi.dims().size()));
  return entropy(partial_trace(projector(psi.amplitudes()), psi.dims(), cut.left));
}

double pure_state_entanglement(const DensityMatrix& rho, const Cut& cut) {
  if (std::abs(rho.purity() - 1.0) > 1e-10) {
    throw std::invalid_argument("pure_state_entanglement: input is mixed (purity " + std::to_string(rho.purity()) + ")");
  }
  cut.validate(rho.factors());
  return entropy(rho.reduce(cut.left));
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dims() != DimList{2, 2}) throw std::invalid_argument("concurrence: two-qubit state required");
  const CMatrix yy = tensor(pauli(2), pauli(2));
  const CMatrix flipped = yy * rho.matrix().conjugate() * yy;
  const auto e = eig_hermitian(rho.matrix());
  const RVector sq = e.values.cwiseMax(0.0).cwiseSqrt();
  const CMatrix root = e.vectors * sq.asDiagonal() * e.vectors.adjoint();
  const CMatrix inner = root * flipped * root;
  RVector lam = eigvals_hermitian(((inner + inner.adjoint()) / 2.0).eval()).cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

MeasureResult eof_two_qubit(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  MeasureResult r;
  r.value = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
  r.kind = BoundKind::Exact;
  r.method = "concurrence closed form";
  return r;
}

namespace {

// Shared convex-roof driver: h(psi) = |psi|^2 E(psi/|psi|) for the pure-state function E,
// evaluated on the dL x dR reshaped vector.
MeasureResult convex_roof(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg, int m,
                          const std::function<double(const RVector&)>& pure_value, std::string method) {
  const DensityMatrix bp = bipartition(rho, cut);
  const int dl = bp.dims()[0], dr = bp.dims()[1];
  const auto e = eig_hermitian(bp.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    if (e.values(k) > kZeroEig) support.push_back(k);
  const int r = static_cast<int>(support.size());
  CMatrix w(bp.dim(), r);
  for (int k = 0; k < r; ++k) w.col(k) = std::sqrt(e.values(support[k])) * e.vectors.col(support[k]);

  auto h = [&](const CVector& psi) {
    const double p = psi.squaredNorm();
    if (p < 1e-300) return 0.0;
    // Row-major reshape: left index major.
    const CMatrix mat = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        psi.data(), dl, dr);
    const CMatrix red = (mat * mat.adjoint()) / p;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(red, Eigen::EigenvaluesOnly);
    return p * pure_value(es.eigenvalues());
  };

  if (r == 1) {
    MeasureResult res;
    res.value = h(w.col(0));
    res.kind = BoundKind::Exact;
    res.method = method + " (pure input)";
    return res;
  }
  const int size = m > 0 ? m : r * r;
  if (size < r) throw std::invalid_argument("convex roof: decomposition size below the rank");
  const OptResult opt = minimize_convex_roof(h, w, size, cfg);
  auto res = from_opt(opt, BoundKind::UpperBound, method);
  res.value = std::max(0.0, res.value);
  return res;
}

}  // namespace

MeasureResult eof_convex_roof(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg,
                              int decomposition_size) {
  if (rho.dim() > 16) throw std::invalid_argument("eof_convex_roof: total dimension must be <= 16");
  return convex_roof(rho, cut, cfg, decomposition_size, entropy_of, "convex roof of reduced entropy");
}

MeasureResult geometric_entanglement(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg) {
  if (rho.dim() > 16) throw std::invalid_argument("geometric_entanglement: total dimension must be <= 16");
  // For pure states max |<ab|psi>|^2 is the largest Schmidt coefficient; the mixed value is its convex roof.
  auto pure = [](const RVector& schmidt) { return std::clamp(1.0 - schmidt.maxCoeff(), 0.0, 1.0); };
  auto res = convex_roof(rho, cut, cfg, 0, pure, "convex roof of 1 - max product overlap");
  res.value = std::min(res.value, 1.0);
  return res;
}

namespace {

// For a pure state the closest separable state is the Schmidt-dephased mixture and the
// optimum equals the entropy of entanglement.
SeparableSolution pure_rel_entropy_solution(const CMatrix& r, int dl, int dr) {
  const auto e = eig_hermitian(r);
  const CVector psi = e.vectors.col(e.values.size() - 1);
  CMatrix m(dl, dr);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) m(i, j) = psi(i * dr + j);
  const Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SeparableSolution out;
  out.sigma = CMatrix::Zero(dl * dr, dl * dr);
  RVector probs(svd.singularValues().size());
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    probs(k) = std::norm(svd.singularValues()(k));
    if (probs(k) < 1e-15) continue;
    ProductAtom at{svd.matrixU().col(k), svd.matrixV().col(k).conjugate()};
    const CVector v = tensor(at.a, at.b);
    out.sigma += probs(k) * v * v.adjoint();
    out.atoms.push_back(std::move(at));
    out.weights.push_back(probs(k));
  }
  out.value = entropy_of(probs);
  return out;
}

}  // namespace

SeparableSolution rel_entropy_entanglement_solution(const DensityMatrix& rho, const Cut& cut,
                                                    const OptimizerConfig& cfg, const SeparableSolution* warm) {
  if (rho.dim() > 16) throw std::invalid_argument("rel_entropy_entanglement: total dimension must be <= 16");
  const DensityMatrix bp = bipartition(rho, cut);
  const int dl = bp.dims()[0], dr = bp.dims()[1];
  const CMatrix& r = bp.matrix();
  if (!warm && std::abs(bp.purity() - 1.0) < 1e-10) return pure_rel_entropy_solution(r, dl, dr);
  const double s_rho = entropy(r);

  ConvexObjective obj;
  auto spectrum = [](const CMatrix& sigma) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es((sigma + sigma.adjoint()) / 2.0);
    RVector lam = es.eigenvalues().cwiseMax(1e-18);
    return std::pair<RVector, CMatrix>(lam, es.eigenvectors());
  };
  obj.value = [&](const CMatrix& sigma) {
    const auto [lam, vec] = spectrum(sigma);
    const CMatrix rt = vec.adjoint() * r * vec;
    double cross = 0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) cross += std::real(rt(k, k)) * std::log2(lam(k));
    return -s_rho - cross;
  };
  obj.gradient = [&](const CMatrix& sigma) {
    const auto [lam, vec] = spectrum(sigma);
    CMatrix rt = vec.adjoint() * r * vec;
    const Eigen::Index n = lam.size();
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index l = 0; l < n; ++l) {
        const double a = lam(k), b = lam(l);
        const double div = std::abs(a - b) > 1e-9 * std::max(a, b) ? (std::log(a) - std::log(b)) / (a - b) : 2.0 / (a + b);
        rt(k, l) *= -div / kLn2;
      }
    return CMatrix(vec * rt * vec.adjoint());
  };

  const double gap_tol = std::max(1e-7, cfg.value_tol);
  if (warm) {
    for (const auto& at : warm->atoms) {
      if (at.a.size() != dl || at.b.size() != dr) {
        throw std::invalid_argument("rel_entropy_entanglement: warm start does not match the cut");
      }
    }
    return minimize_convex_over_separable(obj, dl, dr, warm->atoms, warm->weights, cfg, gap_tol);
  }

  // Start from the product of the marginals, which is separable and covers the support of rho.
  const auto el = eig_hermitian(partial_trace(r, bp.dims(), {0}));
  const auto er = eig_hermitian(partial_trace(r, bp.dims(), {1}));
  std::vector<ProductAtom> atoms;
  std::vector<double> weights;
  for (Eigen::Index i = 0; i < el.values.size(); ++i)
    for (Eigen::Index j = 0; j < er.values.size(); ++j) {
      const double w = el.values(i) * er.values(j);
      if (w > 1e-15) {
        atoms.push_back({el.vectors.col(i), er.vectors.col(j)});
        weights.push_back(w);
      }
    }
  return minimize_convex_over_separable(obj, dl, dr, atoms, weights, cfg, gap_tol);
}

MeasureResult rel_entropy_entanglement(const DensityMatrix& rho, const Cut& cut, const OptimizerConfig& cfg) {
  const SeparableSolution sol = rel_entropy_entanglement_solution(rho, cut, cfg);
  MeasureResult res;
  res.value = std::max(0.0, sol.value);
  const bool pure = std::abs(rho.purity() - 1.0) < 1e-10;
  res.kind = pure ? BoundKind::Exact : BoundKind::UpperBound;
  res.method = pure ? "Schmidt dephasing (pure state)" : "conditional gradient over product mixtures";
  res.restarts = 1;
  res.iterations = sol.iterations;
  res.achieved_tol = sol.gap;
  return res;
}

// -- discord ------------------------------------------------------------------

MeasureResult rel_entropy_discord(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg) {
  check_measured(rho, measured);
  const double s = entropy_fast(rho.matrix());
  const auto objective = [&](const CMatrix& u) {
    return entropy_fast(measure_factor(rho.matrix(), rho.dims(), u, measured)) - s;
  };
  auto res = from_opt(minimize_over_unitaries(objective, rho.dims()[measured], cfg), BoundKind::UpperBound,
                      "min over projective measurements of S(rho||Pi[rho])");
  res.value = std::max(0.0, res.value);
  return res;
}

MeasureResult geometric_discord_hs(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg) {
  check_measured(rho, measured);
  const auto objective = [&](const CMatrix& u) {
    return (rho.matrix() - measure_factor(rho.matrix(), rho.dims(), u, measured)).squaredNorm();
  };
  return from_opt(minimize_over_unitaries(objective, rho.dims()[measured], cfg), BoundKind::UpperBound,
                  "min over projective measurements of Tr(rho - Pi[rho])^2");
}

namespace {

// max over projective measurements on `measured` of the post-measurement mutual information, via
// minimization of its negative.
OptResult best_measured_information(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg) {
  const Cut cut = Cut::single(measured, rho.factors());
  const double s_rest = entropy_fast(partial_trace(rho.matrix(), rho.dims(), cut.right));
  const auto objective = [&](const CMatrix& u) {
    const CMatrix post = measure_factor(rho.matrix(), rho.dims(), u, measured);
    const double s_m = entropy_fast(partial_trace(post, rho.dims(), cut.left));
    return -(s_m + s_rest - entropy_fast(post));
  };
  return minimize_over_unitaries(objective, rho.dims()[measured], cfg);
}

}  // namespace

MeasureResult discord_mutual_info(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg) {
  check_measured(rho, measured);
  const double total = mutual_information(rho, Cut::single(measured, rho.factors()));
  const OptResult best = best_measured_information(rho, measured, cfg);
  auto res = from_opt(best, BoundKind::UpperBound, "I(rho) - max over rank-1 projective measure-and-prepare");
  res.value = std::max(0.0, total + best.value);
  return res;
}

MeasureResult classical_correlations(const DensityMatrix& rho, int measured, const OptimizerConfig& cfg) {
  check_measured(rho, measured);
  const OptResult best = best_measured_information(rho, measured, cfg);
  auto res = from_opt(best, BoundKind::LowerBound, "max over rank-1 projective measurements of I(Pi[rho])");
  res.value = std::max(0.0, -best.value);
  return res;
}

double koashi_winter_residual(const PureState& psi_abc, const OptimizerConfig& cfg) {
  if (psi_abc.dims() != DimList{2, 2, 2}) throw std::invalid_argument("koashi_winter_residual: needs dims [2,2,2]");
  const DensityMatrix full = psi_abc.density();
  const DensityMatrix ab = full.reduce({0, 1});
  const DensityMatrix bc = full.reduce({1, 2});
  const double delta = discord_mutual_info(ab, 0, cfg).value;
  const double ef = eof_two_qubit(bc).value;
  return std::abs(delta - ef + entropy(ab) - entropy(full.reduce({0})));
}

}  // namespace entdist
