// randvec.hpp — deterministic samplers and the explicit random-vector
// constructions:
//   single      Z = sum_{j>=1} X_j W_j^{-1} e_j            (one operator)
//   common_weights  Z = sum_{j>=m} X_j / W_j(family(psi(floor(log j/log m)))) e_j
//   common_poly     Z = sum_{j>=m} X_j u_j^(family(psi(...)))
// Coefficients are a pure function of (master_seed, j): draws are counter
// based, so construction order and thread count never change the vector,
// and J_max can be extended without re-drawing the prefix.
//
// The block-to-operator assignment psi runs over all positive integers; a
// finite list of size F is mapped k -> ((k-1) mod F) + 1, which keeps every
// family owning infinitely many blocks with the R_k spacing.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fhsim/adapted_basis.hpp"
#include "fhsim/arith.hpp"
#include "fhsim/core.hpp"
#include "fhsim/weights.hpp"

namespace fhsim {

enum class DistKind { standard_complex_gaussian, custom_iid };

struct DistributionSpec {
    DistKind kind = DistKind::standard_complex_gaussian;
    // custom_iid: declared E|X|^p at exponent moment_exponent
    double moment_exponent = 2.0;
    double moment_value = 1.0;
    std::function<Scalar(std::uint64_t seed, std::uint64_t j)> sampler;  // custom draws
    std::function<double(double)> tail_log_prob;  // declared log P(|X| >= r), optional

    static DistributionSpec standard_complex_gaussian() { return DistributionSpec{}; }
    static DistributionSpec custom(std::function<Scalar(std::uint64_t, std::uint64_t)> s,
                                   double moment_exp, double moment_val);

    // E|X|^p; analytic for the gaussian (|X|^2 ~ Exp(1), so E|X|^p = Gamma(p/2+1)),
    // declared for custom distributions (exponent must match).
    double moment(double p) const;
};

// Deterministic counter-based draw: same (seed, j) always gives the same
// scalar. Standard complex gaussian has independent re/im parts of variance
// 1/2 (E|X|^2 = 1), drawn as sqrt(-log U1) e^{2 pi i U2}.
Scalar sample_X(const DistributionSpec& dist, std::uint64_t master_seed, std::uint64_t j);

// 64-bit mixing used for per-cell seed derivation (stable across platforms).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

struct DecayVerdict {
    bool pass = false;
    bool analytic = false;
    std::string evidence;
    std::vector<std::pair<double, double>> trace;  // (r, (log r)^{1+beta} P(|X|>=r))
};

// Decay condition: limsup_r (log r)^{1+beta} P(|X| >= r) < infinity.
// Gaussian passes analytically; declared tails are evaluated symbolically on
// r-doublings; otherwise empirical tails over `trials` draws.
DecayVerdict decay_condition_check(const DistributionSpec& dist, double beta,
                                   std::uint64_t trials);

// m >= max(2 gamma, gamma (4 log M - log eta) / |log eta|) + 1, the geometric
// criterion's block base. Returned as ceil(max(...)) + 1.
std::uint64_t select_m_geometric(std::uint64_t gamma, double M, double eta);

// m > max(2 gamma, gamma log((1+eta) C) / (-log rho)) for the polynomial
// construction; returned as ceil(max(...)) + 1.
std::uint64_t select_m_poly(std::uint64_t gamma, double C, double rho, double eta_slack);

enum class Construction { single, common_weights, common_poly };

struct RandomVectorSpec {
    DistributionSpec dist;
    std::uint64_t master_seed = 1;
    std::uint64_t j_max = 0;  // 0 = unset; run_experiment substitutes its default
    std::uint64_t m = 3;       // interleave base (common constructions)
    std::uint64_t gamma = 2;   // window factor
    Construction construction = Construction::single;
    std::function<Scalar(std::uint64_t)> force_X;  // test hook: deterministic coefficients

    Scalar draw(std::uint64_t j) const {
        return force_X ? force_X(j) : sample_X(dist, master_seed, j);
    }
};

struct TailBound {
    double bound_expectation = 0.0;   // bound on E ||tail beyond J_max||_p
    std::vector<double> per_operator; // per-family tail pieces
};

// A constructed random vector. Coefficients are kept in log-magnitude form:
// common-weights coefficients underflow doubles long before the dynamics
// stop mattering. For the polynomial construction the u-basis coefficients
// X_j and the per-index basis assignment are retained as well; orbit engines
// need the construction structure, not just e-coordinates.
struct RandomVector {
    RandomVectorSpec spec;
    std::vector<std::pair<std::uint64_t, LogMag>> coords;  // e-coordinates, ascending index
    TailBound tail;
    std::vector<std::string> warnings;

    // common constructions: 0-based family index owning index j
    std::size_t family_count = 1;
    std::size_t family_of_index(std::uint64_t j) const;

    // common_poly only
    std::vector<Scalar> u_coeffs;  // X_j, j = m..j_max (index j - m)
    std::vector<std::shared_ptr<const AdaptedBasis>> bases;

    // best-effort double rendering of the e-coordinates
    SparseVec render() const;
    double log_lp_norm(const SpaceConfig& space) const;
};

// Single-operator vector sum_j X_j W_j^{-1} e_j; rejects non-FHC families
// unless allow_non_fhc is set (forced builds carry an infinite tail bound).
RandomVector build_Z_single(const WeightFamily& family, const RandomVectorSpec& spec,
                            const SpaceConfig& space, bool allow_non_fhc = false);

// Block-interleaved vector over a finite family list. Hypothesis failures
// (non-FHC families) are attached as warnings, not errors; criteria verdicts
// live in the criteria module.
RandomVector build_Z_common_weights(const std::vector<WeightFamily>& families,
                                    const RandomVectorSpec& spec, const SpaceConfig& space);

// Block-interleaved vector over adapted bases. Bases must cover the
// numerically live range: either K >= j_max or C_w rho^{K+1}/(1-rho) below 1e-16.
RandomVector build_Z_common_poly(std::vector<std::shared_ptr<const AdaptedBasis>> bases,
                                 const RandomVectorSpec& spec, const SpaceConfig& space);

}  // namespace fhsim
