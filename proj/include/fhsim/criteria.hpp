// criteria.hpp — checkers for the existence criteria (geometric-growth,
// general R_n(k,l) summability, the power/geometric corollaries, the
// polynomial-family criterion, the point-spectrum corollary) and the
// non-existence series tests with divergence-witness search.
//
// Every verdict is evidence-carrying: binding probe points, term traces and
// remainder estimates are serialized so reports can be audited. Numeric
// verdicts never claim proof; convergence/divergence language follows the
// series-verdict conventions of the weights module.

#pragma once

#include <optional>
#include <vector>

#include "json.hpp"

#include "fhsim/arith.hpp"
#include "fhsim/core.hpp"
#include "fhsim/shift_ops.hpp"
#include "fhsim/weights.hpp"

namespace fhsim {

struct CriterionVerdict {
    std::string criterion;
    std::string status;  // "pass" | "fail" | "rejected" | series statuses
    bool pass = false;
    nlohmann::json parameters;
    nlohmann::json evidence;

    nlohmann::json to_json() const {
        return {{"criterion", criterion},
                {"status", status},
                {"pass", pass},
                {"parameters", parameters},
                {"evidence", evidence}};
    }
};

// ---------------------------------------------------------------------------
// Geometric-growth criterion: a reference weight omega with
//  (i)  sum |W^omega_k|^{-p} < infinity,
//  (ii) |omega_n..omega_{n+m}| <= C eta^m |w_n(i)..w_{n+m}(i)|,
//  (iii) C^{-1} M^{-m} <= |w_n(i)..w_{n+m}(i)| <= C M^m,
// probed over n in [0, probe_n], m in [1, probe_m] (products use the
// literal index convention with w_0 := 1).
// ---------------------------------------------------------------------------
struct GeometricCriterionConfig {
    WeightFamily omega;
    double eta = 0.5;  // in (0,1)
    double M = 2.0;    // > 1
    double C = 1.0;    // > 0
};

CriterionVerdict check_geometric(const std::vector<WeightFamily>& families,
                                 const GeometricCriterionConfig& config,
                                 const SpaceConfig& space, std::uint64_t probe_n,
                                 std::uint64_t probe_m);

// ---------------------------------------------------------------------------
// General criterion: summability of sup_l R_n(k,l) with
//   R_n(k,l) = sum_{j=floor(alpha_l)+1}^{m^{n+1}-l-1} |W_j(k)|^{-p}
//            + sum_{j>=m^{n+1}} |W_j(k) / (W_{j-l}(k) inf_i |W_j(i)|)|^p.
// ---------------------------------------------------------------------------
struct GeneralCriterionConfig {
    std::uint64_t m = 4;
    std::uint64_t gamma = 2;
    AlphaFamily alpha = AlphaFamily::plain_log();
    double eps_tilde = 0.5;          // for the alpha growth condition
    std::vector<double> C_k, tau_k;  // decay-hypothesis constants; fitted when empty
};

struct RnValue {
    double log_value = kNegInf;  // log R_n(k,l)
    double value = 0.0;          // exp, may overflow to inf
    double remainder_log = kNegInf;  // second-sum geometric remainder estimate
    bool inconclusive = false;       // tail terms non-decreasing at the cap
};

// l must lie in [m^n, gamma m^n]; k is a 0-based family index.
RnValue rn_kl(const std::vector<WeightFamily>& families, std::size_t k, std::uint64_t n,
              std::uint64_t l, const GeneralCriterionConfig& config, const SpaceConfig& space,
              std::uint64_t tail_cap);

// sup over l is exact for n <= 3 (subsampled above 4096 interval points) and
// endpoint + geometric subgrid (l_samples points) for larger n.
CriterionVerdict check_general(const std::vector<WeightFamily>& families,
                               const GeneralCriterionConfig& config, const SpaceConfig& space,
                               std::uint64_t n_max, std::uint64_t l_samples);

// Power-products corollary: |W_n(k)| comparable to n^{beta_k}, beta_k >= a > 1/p.
CriterionVerdict check_power_corollary(const std::vector<double>& betas,
                                       const SpaceConfig& space);

// Constant-weights corollary: lambda_k in [a, b], 1 < a <= b; recommends
// gamma = 2 and m >= max(2 gamma + 1, gamma log b / log a + 1).
CriterionVerdict check_geometric_corollary(const std::vector<double>& lambdas,
                                           const SpaceConfig& space);

// Polynomial-family criterion: margins >= 1 + delta, limsup |w_n(k)| <= C,
// sum_j (inf_k |W_j(k)|)^{-p} convergent, inf_k |W_n(k)| > 0 over the probe.
CriterionVerdict check_poly_common(const std::vector<PolynomialSpec>& polys,
                                   const std::vector<WeightFamily>& families, double delta,
                                   const SpaceConfig& space, std::uint64_t probe);

// Point-spectrum corollary: for each P_k scan r in [a, |lambda_1^{(k)}|)
// maximizing (|l1| r^{d-1} - sum_{i>=2} |l_i| r^{d-i}) / r^d; pass iff all
// maxima clear 1 + delta for a common delta > 0.
CriterionVerdict check_spectrum_corollary(const WeightFamily& family,
                                          const std::vector<PolynomialSpec>& polys, double a,
                                          double b, const SpaceConfig& space,
                                          std::uint64_t grid);

// ---------------------------------------------------------------------------
// Non-existence: series sum_l |W^w_{m_l}|^p / (|W^v_{m_l}|^p |W^w_{m_l-n_l}|^p).
// Divergence along every admissible (m_l, n_l) kills FHC(B_v) cap HC(B_w);
// a necessary condition for common FHC is a summable witness at arbitrarily
// small ratio bounds, so the search scans small theta only.
// ---------------------------------------------------------------------------
struct NonexistenceWitness {
    std::vector<std::uint64_t> m_l, n_l;  // strictly increasing
    double ratio_min = 0.0, ratio_max = 0.0;
    double theta = 0.0;       // n_l = floor(theta m_l) when geometric
    std::uint64_t base = 0;   // m_l = base^l when geometric
    std::vector<double> log_terms;
};

NonexistenceWitness make_geometric_witness(double theta, std::uint64_t base, std::size_t L);

// log of each series term; exp may overflow, logs are the stable currency.
std::vector<double> nonexistence_log_terms(const WeightFamily& v, const WeightFamily& w,
                                           const NonexistenceWitness& witness,
                                           const SpaceConfig& space);

inline const std::vector<double> kDefaultThetaGrid{0.5, 0.25, 0.125};
inline const std::vector<std::uint64_t> kDefaultBaseGrid{2, 3};

// Returns the first (theta, base) whose term trace is eventually (from
// l <= L/2 on) strictly increasing with final log-term >= log(1e6); declared
// divergence evidence, never proof.
std::optional<NonexistenceWitness> search_divergence_witness(
    const WeightFamily& v, const WeightFamily& w, const SpaceConfig& space,
    const std::vector<double>& theta_grid = kDefaultThetaGrid,
    const std::vector<std::uint64_t>& base_grid = kDefaultBaseGrid, std::size_t L = 30);

}  // namespace fhsim
