// shift_ops.hpp — weighted backward shifts B_w, their powers and polynomials,
// truncated operators, and polynomial admissibility.
//
// B_w e_0 = 0, B_w e_n = w_n e_{n-1}. Powers are applied in one pass through
// logW differences (never by n repeated single shifts): coefficient t of
// B_w^n v equals v_{t+n} * exp(logW(t+n) - logW(t)).

#pragma once

#include <vector>

#include "fhsim/core.hpp"
#include "fhsim/weights.hpp"

namespace fhsim {

// P(z) = sum_{i=1}^d lambda_i z^i; no constant term, lambda_1 != 0, d <= 32.
struct PolynomialSpec {
    std::vector<Scalar> coeffs;  // lambda_1 .. lambda_d

    explicit PolynomialSpec(std::vector<Scalar> c);
    std::size_t degree() const { return coeffs.size(); }
    Scalar lambda(std::size_t i) const { return coeffs.at(i - 1); }  // 1-based
};

struct Admissibility {
    double margin = 0.0;  // |lambda_1| - sum_{i>=2} |lambda_i|
    bool admissible = false;
};

// Admissible iff |lambda_1| > sum_{i>=2} |lambda_i| (margin > 0).
Admissibility admissibility(const PolynomialSpec& P);

struct ShiftOperator {
    WeightFamily weights;
};

// One-pass B_w^n. n = 0 is the identity. Double-precision path; magnitudes
// must stay in double range (log-domain variant below otherwise).
SparseVec apply_shift_power(const ShiftOperator& op, std::uint64_t n, const SparseVec& v,
                            const SpaceConfig& space);

// sum_i lambda_i B_w^i v, each power's image materialized then merged.
SparseVec apply_polynomial(const PolynomialSpec& P, const ShiftOperator& op, const SparseVec& v,
                           const SpaceConfig& space);

// Log-domain dense variants on coefficient arrays (index t -> coefficient),
// used where weight products leave double range.
std::vector<LogMag> apply_shift_power_log(const ShiftOperator& op, std::uint64_t n,
                                          const std::vector<LogMag>& coeffs);
std::vector<LogMag> apply_polynomial_log(const PolynomialSpec& P, const ShiftOperator& op,
                                         const std::vector<LogMag>& coeffs);

// Truncated operator T_n(B[u]^n) for the weight basis u_k = e_k / W_k:
//   T_n(sum X_k u_k) = sum_{k=0}^n X_{k+n} u_k.
// Requires coefficients up to index 2n.
SparseVec truncated_apply_weight_basis(const std::vector<Scalar>& X, std::uint64_t n,
                                       const WeightFamily& family);

}  // namespace fhsim
