// simulate.hpp — orbit hit times against target neighborhoods, density
// pipelines, window-coverage diagnostics, and the deterministic parallel
// experiment runner.
//
// Two orbit engines:
//  * weights path: coefficient t of B_w^l Z is Z_{t+l} W(t+l)/W(t); the
//    per-l scan walks t upward with a rigorous suffix bound on the
//    remaining tail, so every hit/miss decision is exact and costs a few
//    terms on average.
//  * adapted path: for operators P_k(B_w(k)) the orbit is evaluated through
//    the adapted-basis shift identity on the blocks operator k owns
//    (exact and stable); contributions of foreign blocks cannot be computed
//    at double precision (iterated application amplifies rounding by the
//    operator's spectral radius), so they are bounded rigorously instead:
//    a hit is declared only when mainDist + bound < eps, a miss only when
//    mainDist - bound > eps, and the bound is reported with each record.
//    Inside the scored windows the bound is many orders below eps whenever
//    the interleave base m clears the geometric growth threshold.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fhsim/adapted_basis.hpp"
#include "fhsim/arith.hpp"
#include "fhsim/core.hpp"
#include "fhsim/randvec.hpp"
#include "fhsim/shift_ops.hpp"
#include "fhsim/weights.hpp"

namespace fhsim {

// Fraction of windows [m^n, gamma m^n], n in R_k with n_lo <= n <= n_hi,
// containing at least one hit.
double window_coverage(const std::vector<std::uint64_t>& hits, std::uint64_t m,
                       std::uint64_t gamma, int k, std::uint64_t n_lo, std::uint64_t n_hi);

// All c_00 vectors with degree <= max_degree and coefficients drawn from
// coeff_grid, deduplicated, zero vector included. Rejects grids generating
// more than 10^4 candidates.
std::vector<SparseVec> default_target_grid(const SpaceConfig& space, std::uint64_t max_degree,
                                           const std::vector<Scalar>& coeff_grid);

// ---------------------------------------------------------------------------

struct OperatorSpec {
    WeightFamily family;
    std::optional<PolynomialSpec> poly;  // present: the operator is P(B_w)
};

struct HitDecision {
    bool hit = false;
    bool ambiguous = false;  // |distance - eps| below the noise bound
    double distance = 0.0;   // main-term distance (exact on the weights path)
    double noise = 0.0;      // rigorous bound on unevaluated contributions
};

// weights-path engine: operator = B_w, Z in log-coordinate form
class WeightOrbitEngine {
  public:
    WeightOrbitEngine(WeightFamily op_family, const RandomVector& Z, const SpaceConfig& space,
                      std::uint64_t horizon);

    HitDecision decide(std::uint64_t l, const SparseVec& target, double eps) const;
    std::vector<std::uint64_t> hit_times(const SparseVec& target, double eps,
                                         std::uint64_t horizon) const;
    double distance(std::uint64_t l, const SparseVec& target, double rel_tol = 1e-12) const;

  private:
    SpaceConfig space_;
    std::uint64_t j_min_ = 0, j_max_ = 0;
    std::vector<double> gm_, ph_;       // log|Z_j| + logW(j), arg Z_j + argW(j)
    std::vector<double> L_, Phi_;       // logW(t) over scan depth
    std::vector<double> sufmax_gm_;     // suffix max of gm_
    std::vector<double> tailT_;         // sum_{t'>t} e^{-p L(t')} (+ family tail)
};

// adapted-path engine for operator k over a common_poly vector
class AdaptedOrbitEngine {
  public:
    AdaptedOrbitEngine(std::size_t op_index, const RandomVector& Z, const SpaceConfig& space,
                       std::uint64_t horizon);

    HitDecision decide(std::uint64_t l, const std::vector<Scalar>& target_in_basis,
                       double eps) const;
    std::vector<std::uint64_t> hit_times(const SparseVec& target, double eps,
                                         std::uint64_t horizon,
                                         double* max_window_noise = nullptr,
                                         std::uint64_t* ambiguous = nullptr) const;
    double noise_bound(std::uint64_t l) const;  // foreign blocks + basis tails

    const AdaptedBasis& basis() const { return *basis_; }

  private:
    std::size_t op_index_;
    SpaceConfig space_;
    std::uint64_t m_ = 0, horizon_ = 0, j_max_ = 0;
    std::shared_ptr<const AdaptedBasis> basis_;
    std::size_t s_cut_ = 0, t_cut_ = 0;
    std::vector<std::vector<double>> beta_;  // beta_[t][s], t <= t_cut, t <= s <= s_cut
    std::vector<Scalar> own_x_;              // X_j on own blocks, 0 elsewhere (index j)
    double max_abs_x_ = 0.0;
    // cross-block transfer bound, one entry per foreign basis i:
    //   ||Pi_k^l u_j^(i)|| <= rho_i^j * A_i^l * g_i  with
    //   A_i = sum_s |lambda_s^(k)| x_i^s (x_i = C_k/C_i for constant families,
    //   sup|w(k)| as the general fallback) and g_i the l_p column factor
    struct ForeignBound {
        std::vector<double> log_suffix;  // log sum_{j'>=j, basis i} |X_j'| rho_i^{j'}
        double log_rate = 0.0;           // log A_i
        double log_g = 0.0;              // log g_i
    };
    std::vector<ForeignBound> foreign_;  // indexed by basis, own index unused
};

// ---------------------------------------------------------------------------

struct Experiment {
    std::vector<OperatorSpec> operators;
    RandomVectorSpec vector_spec;
    std::vector<WeightFamily> vec_families;  // weight-form constructions
    std::vector<std::shared_ptr<const AdaptedBasis>> vec_bases;  // common_poly
    std::vector<SparseVec> targets;
    std::vector<double> epsilons;
    std::uint64_t horizon = 1000;
    std::vector<std::uint64_t> seeds;
    SpaceConfig space{2.0};
    std::uint64_t burn_in = 0;  // 0: max(100, horizon/100) clipped to horizon/10
    int parallelism = 1;
    bool force = false;                     // skip the truncation-tail gate
    std::uint64_t coverage_n_lo = 1, coverage_n_hi = 4;
    bool distance_traces = false;  // sample per-n distances into the records
};

struct HitRecord {
    std::size_t op_index = 0, target_index = 0;
    double eps = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> hits;
    DensityEstimate density;
    double coverage = 0.0;
    double noise_bound = 0.0;     // max rigorous noise over scored windows
    std::uint64_t ambiguous = 0;  // decisions blocked by the noise band
    std::vector<std::pair<std::uint64_t, double>> distance_trace;  // sampled (n, distance)
};

// Cartesian product over (operator, target, eps, seed); the vector for seed s
// is built with master seed mix_seed(spec.master_seed, s), shared by every
// operator/target/eps cell of that seed. Results are written into fixed
// slots, so outputs are identical for any parallelism degree.
std::vector<HitRecord> run_experiment(const Experiment& exp);

// gamma * m^{n*+1} with n* the largest block reached by the horizon.
std::uint64_t default_j_max(std::uint64_t m, std::uint64_t gamma, std::uint64_t horizon);

}  // namespace fhsim
