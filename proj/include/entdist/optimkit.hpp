#pragma once

// Derivative-free multi-start optimization over measurement bases, pure states and
// separable mixtures, plus a conditional-gradient solver for convex objectives on
// the separable set.

#include "entdist/states.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace entdist {

struct OptimizerConfig {
  int restarts = 20;
  int max_iters = 2000;
  double step_tol = 1e-7;
  double value_tol = 1e-8;
  std::uint64_t seed = 12345;

  void validate() const;
};

/// Optimizer results are heuristic: minimizations give upper bounds, maximizations lower bounds.
struct OptResult {
  double value = 0;
  RVector params;
  int restarts_converged = 0;
  int restarts_run = 0;
  int iterations = 0;
  int best_restart = -1;
  bool certified = false;
};

class OptimizationFailure : public std::runtime_error {
 public:
  OptimizationFailure(const std::string& what, RVector params = {})
      : std::runtime_error(what), params_(std::move(params)) {}
  const RVector& params() const { return params_; }

 private:
  RVector params_;
};

/// Result of one local search.
struct LocalResult {
  double value = 0;
  RVector x;
  int iterations = 0;
  bool converged = false;
};

using ObjectiveFn = std::function<double(const RVector&)>;

/// Nelder-Mead simplex minimization with dimension-adaptive coefficients.
/// Stops when the simplex diameter is below step_tol and the value spread below value_tol,
/// or after max_iters iterations. A NaN objective value raises OptimizationFailure.
LocalResult nelder_mead(const ObjectiveFn& f, const RVector& x0, double initial_step, int max_iters, double step_tol,
                        double value_tol);

/// Runs cfg.restarts seeded starts (restart r draws from derive_seed(cfg.seed, r)) and keeps the best.
/// Failed restarts are skipped; fails only when every restart fails.
OptResult multistart(const std::function<LocalResult(int restart, std::mt19937_64& rng)>& inner,
                     const OptimizerConfig& cfg);

/// d x d unitary from d^2 angles: diagonal phases times a product of two-level rotations.
/// All-zero angles give the identity.
CMatrix unitary_from_angles(int d, const RVector& angles);

/// Minimizes objective(U) over d x d unitaries. Restart 0 starts at the identity.
OptResult minimize_over_unitaries(const std::function<double(const CMatrix&)>& objective, int d,
                                  const OptimizerConfig& cfg);

/// Normalized pure state from 2d real parameters (real and imaginary parts).
CVector pure_state_from_params(int d, const RVector& params);
RVector params_from_pure_state(const CVector& psi);

/// Minimizes objective(psi) over unit vectors of dimension d; `seeds` are used as the first starts.
OptResult minimize_over_pure_states(const std::function<double(const CVector&)>& objective, int d,
                                    const OptimizerConfig& cfg, const std::vector<CVector>& seeds = {});

/// sigma = sum_k q_k |a_k><a_k| ⊗ |b_k><b_k| from K*(1 + 2 dA + 2 dB) parameters;
/// q_k is a softmax of the first K parameters.
CMatrix separable_mixture_from_params(int dA, int dB, int K, const RVector& params);

/// Nelder-Mead search over K-term product mixtures. Every candidate is separable by construction.
OptResult minimize_over_separable_mixtures(const std::function<double(const CMatrix&)>& objective, int dA, int dB,
                                           int K, const OptimizerConfig& cfg);

// -- convex objectives over the separable set --------------------------------

struct ProductAtom {
  CVector a;
  CVector b;
};

struct ConvexObjective {
  std::function<double(const CMatrix&)> value;
  /// Hermitian G with d/dt value(sigma + t D) = Re Tr(G D).
  std::function<CMatrix(const CMatrix&)> gradient;
};

struct SeparableSolution {
  double value = 0;
  /// Frank-Wolfe duality gap at the returned point; value - gap is a lower bound on the
  /// optimum whenever the product-state oracle found the global minimizer.
  double gap = 0;
  CMatrix sigma;
  std::vector<ProductAtom> atoms;
  std::vector<double> weights;
  int iterations = 0;
};

/// Minimizes a convex objective over separable states on dA x dB with blended pairwise
/// conditional gradients. The linear oracle min <ab|G|ab> is solved by alternating
/// eigenvector updates from several starts. `initial` atoms/weights must form a state.
SeparableSolution minimize_convex_over_separable(const ConvexObjective& objective, int dA, int dB,
                                                 std::vector<ProductAtom> initial, std::vector<double> weights,
                                                 const OptimizerConfig& cfg, double gap_tol);

/// Best product vector for min <a⊗b|G|a⊗b>; exposed for testing.
std::pair<ProductAtom, double> min_product_expectation(const CMatrix& g, int dA, int dB,
                                                       const std::vector<CVector>& warm_a, int random_starts,
                                                       std::mt19937_64& rng);

// -- convex-roof decompositions ----------------------------------------------

/// Minimizes sum_i h(psi_i) over decompositions psi_i = sum_k U_ik w_k, with `w` holding the
/// subnormalized eigenvectors sqrt(lambda_k)|k> as columns and U an m x r isometry.
/// `h` receives unnormalized vectors and must be homogeneous of degree 2 in the norm
/// (h(psi) = |psi|^2 E(psi/|psi|)). Optimized by sweeps of two-level rotations.
OptResult minimize_convex_roof(const std::function<double(const CVector&)>& h, const CMatrix& w, int m,
                               const OptimizerConfig& cfg);

}  // namespace entdist
