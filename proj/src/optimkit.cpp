#include "entdist/optimkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entdist {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("optimizer restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("optimizer max_iters must be >= 1");
  if (!(step_tol > 0) || !(value_tol > 0)) throw std::invalid_argument("optimizer tolerances must be > 0");
}

LocalResult nelder_mead(const ObjectiveFn& f, const RVector& x0, double initial_step, int max_iters, double step_tol,
                        double value_tol) {
  const Eigen::Index n = x0.size();
  auto eval = [&](const RVector& x) {
    const double v = f(x);
    if (std::isnan(v)) throw OptimizationFailure("objective returned NaN", x);
    return v;
  };
  if (n == 0) return {eval(x0), x0, 0, true};

  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, delta = 1.0 - 1.0 / dn;

  std::vector<RVector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) pts[i + 1](i) += initial_step;
  for (Eigen::Index i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<Eigen::Index> order(n + 1);
  LocalResult res;
  int it = 0;
  for (; it < max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const auto best = order.front(), worst = order.back(), second = order[n - 1];

    double diam = 0;
    for (Eigen::Index i = 0; i <= n; ++i) diam = std::max(diam, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    if (diam < step_tol && vals[worst] - vals[best] < value_tol) {
      res.converged = true;
      break;
    }

    RVector centroid = RVector::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= dn;

    const RVector xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const RVector xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RVector xc = outside ? RVector(centroid + gamma * (xr - centroid))
                               : RVector(centroid - gamma * (centroid - pts[worst]));
    const double fc = eval(xc);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = xc, vals[worst] = fc;
      continue;
    }
    // shrink
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + delta * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  res.value = vals[best];
  res.x = pts[best];
  res.iterations = it;
  return res;
}

OptResult multistart(const std::function<LocalResult(int restart, std::mt19937_64& rng)>& inner,
                     const OptimizerConfig& cfg) {
  cfg.validate();
  OptResult out;
  out.value = std::numeric_limits<double>::infinity();
  std::string last_error;
  int failures = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    try {
      const LocalResult lr = inner(r, rng);
      ++out.restarts_run;
      out.iterations += lr.iterations;
      if (lr.converged) ++out.restarts_converged;
      if (lr.value < out.value || out.best_restart < 0) {
        out.value = lr.value;
        out.params = lr.x;
        out.best_restart = r;
      }
    } catch (const OptimizationFailure& e) {
      ++failures;
      last_error = e.what();
    }
  }
  if (out.best_restart < 0) {
    throw OptimizationFailure("all " + std::to_string(failures) + " restarts failed: " + last_error);
  }
  return out;
}

CMatrix unitary_from_angles(int d, const RVector& angles) {
  if (angles.size() != d * d) throw std::invalid_argument("unitary_from_angles: need d^2 angles");
  CMatrix u = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) u(k, k) = std::polar(1.0, angles(k));
  int idx = d;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double c = std::cos(angles(idx)), s = std::sin(angles(idx));
      const Complex ph = std::polar(1.0, angles(idx + 1));
      idx += 2;
      // Right-multiply by the two-level rotation on (i, j).
      for (int r = 0; r < d; ++r) {
        const Complex ui = u(r, i), uj = u(r, j);
        u(r, i) = c * ui + std::conj(ph) * s * uj;
        u(r, j) = -ph * s * ui + c * uj;
      }
    }
  }
  return u;
}

OptResult minimize_over_unitaries(const std::function<double(const CMatrix&)>& objective, int d,
                                  const OptimizerConfig& cfg) {
  if (d < 1) throw std::invalid_argument("minimize_over_unitaries: d must be positive");
  const ObjectiveFn f = [&](const RVector& x) { return objective(unitary_from_angles(d, x)); };
  return multistart(
      [&](int restart, std::mt19937_64& rng) {
        RVector x0 = RVector::Zero(d * d);
        if (restart > 0) {
          std::uniform_real_distribution<double> u(-M_PI, M_PI);
          for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = u(rng);
        }
        return nelder_mead(f, x0, 0.5, cfg.max_iters, cfg.step_tol, cfg.value_tol);
      },
      cfg);
}

CVector pure_state_from_params(int d, const RVector& params) {
  if (params.size() != 2 * d) throw std::invalid_argument("pure_state_from_params: need 2d parameters");
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(params(2 * i), params(2 * i + 1));
  const double n = v.norm();
  if (n < 1e-300) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / n;
}

RVector params_from_pure_state(const CVector& psi) {
  RVector p(2 * psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    p(2 * i) = psi(i).real();
    p(2 * i + 1) = psi(i).imag();
  }
  return p;
}

OptResult minimize_over_pure_states(const std::function<double(const CVector&)>& objective, int d,
                                    const OptimizerConfig& cfg, const std::vector<CVector>& seeds) {
  const ObjectiveFn f = [&](const RVector& x) { return objective(pure_state_from_params(d, x)); };
  return multistart(
      [&](int restart, std::mt19937_64& rng) {
        RVector x0 = restart < static_cast<int>(seeds.size()) ? params_from_pure_state(seeds[restart].normalized())
                                                              : params_from_pure_state(random_vector(d, rng));
        return nelder_mead(f, x0, 0.25, cfg.max_iters, cfg.step_tol, cfg.value_tol);
      },
      cfg);
}

CMatrix separable_mixture_from_params(int dA, int dB, int K, const RVector& params) {
  const int per = 2 * dA + 2 * dB;
  if (params.size() != K * (1 + per)) throw std::invalid_argument("separable_mixture_from_params: wrong size");
  const RVector logits = params.head(K);
  const double mx = logits.maxCoeff();
  const RVector q = (logits.array() - mx).exp().matrix();
  const double z = q.sum();
  CMatrix sigma = CMatrix::Zero(dA * dB, dA * dB);
  for (int k = 0; k < K; ++k) {
    const RVector blk = params.segment(K + k * per, per);
    const CVector a = pure_state_from_params(dA, blk.head(2 * dA));
    const CVector b = pure_state_from_params(dB, blk.tail(2 * dB));
    sigma += (q(k) / z) * projector(tensor(a, b));
  }
  return sigma;
}

OptResult minimize_over_separable_mixtures(const std::function<double(const CMatrix&)>& objective, int dA, int dB,
                                           int K, const OptimizerConfig& cfg) {
  if (K < 1) throw std::invalid_argument("minimize_over_separable_mixtures: K must be >= 1");
  const int per = 2 * dA + 2 * dB;
  const ObjectiveFn f = [&](const RVector& x) { return objective(separable_mixture_from_params(dA, dB, K, x)); };
  return multistart(
      [&](int, std::mt19937_64& rng) {
        RVector x0(K * (1 + per));
        std::normal_distribution<double> g(0.0, 1.0);
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = g(rng);
        x0.head(K).setZero();
        return nelder_mead(f, x0, 0.3, cfg.max_iters, cfg.step_tol, cfg.value_tol);
      },
      cfg);
}

// -- conditional gradients over the separable set -----------------------------

namespace {

double expectation(const CMatrix& g, const CVector& v) { return std::real(v.dot(g * v)); }

// (<a| ⊗ 1) G (|a> ⊗ 1)
CMatrix contract_left(const CMatrix& g, const CVector& a, int dA, int dB) {
  CMatrix out = CMatrix::Zero(dB, dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j) out += std::conj(a(i)) * a(j) * g.block(i * dB, j * dB, dB, dB);
  return out;
}

// (1 ⊗ <b|) G (1 ⊗ |b>)
CMatrix contract_right(const CMatrix& g, const CVector& b, int dA, int dB) {
  CMatrix out(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j) out(i, j) = b.dot(g.block(i * dB, j * dB, dB, dB) * b);
  return out;
}

std::pair<CVector, double> lowest(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) / 2.0);
  return {es.eigenvectors().col(0), es.eigenvalues()(0)};
}

}  // namespace

std::pair<ProductAtom, double> min_product_expectation(const CMatrix& g, int dA, int dB,
                                                       const std::vector<CVector>& warm_a, int random_starts,
                                                       std::mt19937_64& rng) {
  std::vector<CVector> starts = warm_a;
  for (int k = 0; k < random_starts; ++k) starts.push_back(random_vector(dA, rng));
  ProductAtom best{basis_ket(dA, 0), basis_ket(dB, 0)};
  double best_val = std::numeric_limits<double>::infinity();
  for (CVector a : starts) {
    CVector b;
    double val = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 40; ++it) {
      auto [bv, vb] = lowest(contract_left(g, a, dA, dB));
      b = bv;
      auto [av, va] = lowest(contract_right(g, b, dA, dB));
      a = av;
      const bool done = val - va < 1e-12 * (1.0 + std::abs(va));
      val = va;
      if (done) break;
    }
    if (val < best_val) {
      best_val = val;
      best = {a, b};
    }
  }
  return {best, best_val};
}

SeparableSolution minimize_convex_over_separable(const ConvexObjective& objective, int dA, int dB,
                                                 std::vector<ProductAtom> atoms, std::vector<double> weights,
                                                 const OptimizerConfig& cfg, double gap_tol) {
  cfg.validate();
  if (atoms.empty() || atoms.size() != weights.size()) {
    throw std::invalid_argument("minimize_convex_over_separable: need matching non-empty atoms and weights");
  }
  const int n = dA * dB;
  std::vector<CVector> vecs;
  for (auto& at : atoms) {
    if (at.a.size() != dA || at.b.size() != dB) throw std::invalid_argument("atom dimension mismatch");
    at.a.normalize();
    at.b.normalize();
    vecs.push_back(tensor(at.a, at.b));
  }
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& w : weights) w /= wsum;

  auto build = [&] {
    CMatrix s = CMatrix::Zero(n, n);
    for (std::size_t k = 0; k < vecs.size(); ++k) s.noalias() += weights[k] * vecs[k] * vecs[k].adjoint();
    return s;
  };
  auto remove = [&](std::size_t k) {
    atoms.erase(atoms.begin() + static_cast<long>(k));
    vecs.erase(vecs.begin() + static_cast<long>(k));
    weights.erase(weights.begin() + static_cast<long>(k));
  };

  std::mt19937_64 rng(cfg.seed);
  CMatrix sigma = build();
  double fval = objective.value(sigma);
  if (std::isnan(fval)) throw OptimizationFailure("objective returned NaN at the initial point");
  CVector last_oracle_a = atoms.front().a;
  SeparableSolution out;
  double gap = std::numeric_limits<double>::infinity();

  // Gradient steps on the atom vectors themselves with weights fixed; Frank-Wolfe alone creeps
  // along the curved boundary of the separable set.
  double eta = 0.5;
  auto polish = [&](int steps) {
    for (int s = 0; s < steps; ++s) {
      const CMatrix g = objective.gradient(sigma);
      std::vector<CVector> da(vecs.size()), db(vecs.size());
      double norm2 = 0;
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        const CVector h = g * vecs[k];
        CVector ga = CVector::Zero(dA), gb = CVector::Zero(dB);
        for (int i = 0; i < dA; ++i)
          for (int j = 0; j < dB; ++j) {
            ga(i) += std::conj(atoms[k].b(j)) * h(i * dB + j);
            gb(j) += std::conj(atoms[k].a(i)) * h(i * dB + j);
          }
        da[k] = -2 * weights[k] * (ga - atoms[k].a * atoms[k].a.dot(ga));
        db[k] = -2 * weights[k] * (gb - atoms[k].b * atoms[k].b.dot(gb));
        norm2 += da[k].squaredNorm() + db[k].squaredNorm();
      }
      if (norm2 < 1e-24) return;
      bool moved = false;
      for (int tries = 0; tries < 8 && !moved; ++tries) {
        std::vector<ProductAtom> trial_atoms(atoms.size());
        std::vector<CVector> trial_vecs(vecs.size());
        CMatrix ts = CMatrix::Zero(n, n);
        for (std::size_t k = 0; k < vecs.size(); ++k) {
          trial_atoms[k] = {(atoms[k].a + eta * da[k]).normalized(), (atoms[k].b + eta * db[k]).normalized()};
          trial_vecs[k] = tensor(trial_atoms[k].a, trial_atoms[k].b);
          ts.noalias() += weights[k] * trial_vecs[k] * trial_vecs[k].adjoint();
        }
        const double tv = objective.value(ts);
        if (tv < fval - 1e-4 * eta * norm2) {
          atoms = std::move(trial_atoms);
          vecs = std::move(trial_vecs);
          sigma = std::move(ts);
          fval = tv;
          eta *= 2;
          moved = true;
        } else {
          eta /= 4;
        }
      }
      if (!moved) return;
    }
  };

  int it = 0;
  for (;; ++it) {
    if (it > 0 && it % 5 == 0) polish(10);
    const CMatrix g = objective.gradient(sigma);
    std::vector<double> scores(vecs.size());
    for (std::size_t k = 0; k < vecs.size(); ++k) scores[k] = expectation(g, vecs[k]);

    std::vector<std::size_t> by_weight(vecs.size());
    std::iota(by_weight.begin(), by_weight.end(), 0);
    std::sort(by_weight.begin(), by_weight.end(), [&](auto x, auto y) { return weights[x] > weights[y]; });
    std::vector<CVector> warm{last_oracle_a};
    for (std::size_t k = 0; k < std::min<std::size_t>(3, by_weight.size()); ++k) warm.push_back(atoms[by_weight[k]].a);
    auto [fw_atom, fw_score] = min_product_expectation(g, dA, dB, warm, 4, rng);

    double inner = 0;
    for (std::size_t k = 0; k < vecs.size(); ++k) inner += weights[k] * scores[k];
    gap = std::max(0.0, inner - fw_score);
    if (gap <= gap_tol) {
      // Before declaring convergence, search much harder for a better product state.
      std::tie(fw_atom, fw_score) = min_product_expectation(g, dA, dB, warm, 64, rng);
      gap = std::max(0.0, inner - fw_score);
    }
    last_oracle_a = fw_atom.a;
    if (gap <= gap_tol || it >= cfg.max_iters) break;

    const auto away = static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
    const auto local = static_cast<std::size_t>(std::min_element(scores.begin(), scores.end()) - scores.begin());
    const double local_gap = scores[away] - scores[local];

    std::size_t to;
    if (local_gap >= gap && away != local) {
      to = local;
    } else {
      const CVector v = tensor(fw_atom.a, fw_atom.b);
      to = vecs.size();
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        if (std::norm(vecs[k].dot(v)) > 1.0 - 1e-13) {
          to = k;
          break;
        }
      }
      if (to == vecs.size()) {
        atoms.push_back(fw_atom);
        vecs.push_back(v);
        weights.push_back(0.0);
        scores.push_back(fw_score);
      }
    }
    if (to == away) break;  // no descent direction left

    const CMatrix dir = vecs[to] * vecs[to].adjoint() - vecs[away] * vecs[away].adjoint();
    const double gmax = weights[away];
    auto slope = [&](double t) { return std::real((objective.gradient(sigma + t * dir) * dir).trace()); };

    // The objective is convex along the segment: find the root of the slope by Illinois regula falsi.
    double step = gmax;
    double lo = 0, hi = gmax;
    double slo = scores[to] - scores[away], shi = slope(gmax);
    // Near a rank drop the slope blows up; pull the bracket in until it is finite.
    for (int k = 0; k < 60 && !std::isfinite(shi); ++k) shi = slope(hi *= 0.5);
    if (!std::isfinite(shi)) shi = 0, hi = 0;
    if (shi > 0 && slo < 0) {
      int side = 0;
      for (int k = 0; k < 40; ++k) {
        const double t = (lo * shi - hi * slo) / (shi - slo);
        const double st = slope(t);
        if (std::abs(st) < 1e-13 || hi - lo < 1e-14 * gmax) {
          lo = hi = t;
          break;
        }
        if (st > 0) {
          hi = t, shi = st;
          if (side == -1) slo /= 2;
          side = -1;
        } else {
          lo = t, slo = st;
          if (side == 1) shi /= 2;
          side = 1;
        }
      }
      step = 0.5 * (lo + hi);
    } else if (shi <= 0 && slo < 0) {
      step = hi;
    } else if (slo >= 0) {
      step = 0;
    }
    double trial = objective.value(sigma + step * dir);
    for (int k = 0; k < 30 && step > 0 && !(trial <= fval); ++k) trial = objective.value(sigma + (step *= 0.5) * dir);
    if (step <= 0 || !(trial <= fval + 1e-15 * std::abs(fval))) {
      // Flat or rounding-dominated segment; keep the current point.
      if (to != away && weights[to] == 0.0) remove(to);
      break;
    }
    weights[to] += step;
    if (step >= gmax) {
      remove(away);
    } else {
      weights[away] -= step;
    }
    sigma = build();
    fval = objective.value(sigma);
  }

  out.value = fval;
  out.gap = gap;
  out.sigma = sigma;
  out.atoms = std::move(atoms);
  out.weights = std::move(weights);
  out.iterations = it;
  return out;
}

// -- convex roof ----------------------------------------------------------------

OptResult minimize_convex_roof(const std::function<double(const CVector&)>& h, const CMatrix& w, int m,
                               const OptimizerConfig& cfg) {
  const int r = static_cast<int>(w.cols());
  if (r < 1 || m < r) throw std::invalid_argument("minimize_convex_roof: need m >= rank >= 1");

  return multistart(
      [&](int restart, std::mt19937_64& rng) {
        CMatrix u = CMatrix::Zero(m, r);
        if (restart == 0) {
          u.topRows(r) = CMatrix::Identity(r, r);
        } else {
          u = random_unitary(m, rng).leftCols(r);
        }
        CMatrix rows = u * w.transpose();  // m x d, row i is psi_i
        std::vector<double> vals(m);
        for (int i = 0; i < m; ++i) vals[i] = h(rows.row(i).transpose());

        LocalResult lr;
        const int max_sweeps = std::max(1, cfg.max_iters / 20);
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
          double gain = 0;
          for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
              const CVector pi = rows.row(i).transpose(), pj = rows.row(j).transpose();
              if (pi.squaredNorm() + pj.squaredNorm() < 1e-24) continue;
              auto rotated = [&](const RVector& x, CVector& ni, CVector& nj) {
                const double c = std::cos(x(0)), s = std::sin(x(0));
                const Complex ph = std::polar(1.0, x(1));
                ni = c * pi + s * ph * pj;
                nj = -s * std::conj(ph) * pi + c * pj;
              };
              const ObjectiveFn pair = [&](const RVector& x) {
                CVector ni, nj;
                rotated(x, ni, nj);
                return h(ni) + h(nj);
              };
              const double base = vals[i] + vals[j];
              const LocalResult sub = nelder_mead(pair, RVector::Zero(2), 0.4, 60, 1e-6, 1e-12);
              if (sub.value < base - 1e-13) {
                CVector ni, nj;
                rotated(sub.x, ni, nj);
                rows.row(i) = ni.transpose();
                rows.row(j) = nj.transpose();
                vals[i] = h(ni);
                vals[j] = h(nj);
                gain += base - (vals[i] + vals[j]);
              }
            }
          }
          lr.iterations = sweep + 1;
          if (gain < cfg.value_tol) {
            lr.converged = true;
            break;
          }
        }
        lr.value = std::accumulate(vals.begin(), vals.end(), 0.0);
        lr.x = params_from_pure_state(Eigen::Map<const CVector>(rows.data(), rows.size()));
        return lr;
      },
      cfg);
}

}  // namespace entdist
