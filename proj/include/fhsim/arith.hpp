// arith.hpp — 2-adic block machinery and density estimation.
//
// psi(n) = v_2(n) + 1 assigns block n to operator psi(n); the preimages
// R_k = {n : psi(n) = k} = {2^{k-1}(2j+1)} partition the positive integers,
// consecutive elements of R_k differ by 2^k, and dens(R_k) = 2^{-k}.
// Block boundaries are powers of the interleaving base m; floor(log j / log m)
// is always computed by integer power comparison, never by floating-point log
// (which misplaces exact powers).

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fhsim/core.hpp"

namespace fhsim {

// psi(n) = v_2(n) + 1; n = 0 rejected.
int psi(std::uint64_t n);

// The set  union_{n in R_k} [m^n, gamma*m^n]  intersected with [1, N],
// enumerated exactly. Requires 2 <= gamma < m.
std::vector<std::uint64_t> r_k_window_union(int k, std::uint64_t m, std::uint64_t gamma,
                                            std::uint64_t N);

struct BlockIndex {
    std::uint64_t n;  // floor(log j / log m), by power-table comparison
    int k;            // psi(n)
};

// Requires j >= m >= 2.
BlockIndex block_index(std::uint64_t j, std::uint64_t m);

// Table of powers m^0, m^1, ... while they fit in uint64.
std::vector<std::uint64_t> power_table(std::uint64_t m, std::uint64_t limit);

struct DensityEstimate {
    std::uint64_t horizon = 0;
    std::uint64_t burn_in = 0;
    double running_min_ratio = 0.0;  // min over n in [burn_in, horizon] of #(A cap [1,n]) / n
    double final_ratio = 0.0;
    std::uint64_t final_count = 0;
};

std::uint64_t default_burn_in(std::uint64_t horizon);  // max(100, horizon/100)

// A as a sorted hit list; burn_in < horizon.
DensityEstimate density_estimate(const std::vector<std::uint64_t>& hits, std::uint64_t horizon,
                                 std::uint64_t burn_in);
// A as a predicate over [1, horizon].
DensityEstimate density_estimate(const std::function<bool(std::uint64_t)>& member,
                                 std::uint64_t horizon, std::uint64_t burn_in);

// CSV trace "n,count,ratio" sampled at `points` geometric checkpoints.
std::string density_trace_csv(const std::vector<std::uint64_t>& hits, std::uint64_t horizon,
                              std::size_t points = 256);

// ---------------------------------------------------------------------------
// alpha sequences for the general criterion: increasing, alpha_l -> infinity,
// sum_{l<=k} alpha_l = O(k^2 / (log k)^{1+eps~}).
// ---------------------------------------------------------------------------
enum class AlphaKind { log_power, custom };

struct AlphaFamily {
    AlphaKind kind = AlphaKind::log_power;
    double sigma = 1.0;  // alpha_l = (log l)^sigma
    std::function<double(std::uint64_t)> fn;

    static AlphaFamily log_power(double sigma_);
    static AlphaFamily plain_log() { return log_power(1.0); }
    static AlphaFamily custom(std::function<double(std::uint64_t)> f);

    double alpha(std::uint64_t l) const;
};

struct AlphaVerdict {
    bool pass = false;
    bool analytic = false;
    std::string evidence;
    // checkpoints of (sum_{l<=k} alpha_l) (log k)^{1+eps~} / k^2 at doubling k
    std::vector<double> ratio_trace;
    // the derived consequence (log n) alpha_n / n at the same checkpoints
    std::vector<double> limit_trace;
};

// Rejects (throws) if alpha is not increasing over the probe; horizon >= 100.
AlphaVerdict alpha_condition_check(const AlphaFamily& alpha, double eps_tilde,
                                   std::uint64_t horizon);

}  // namespace fhsim
