#include "fhsim/shift_ops.hpp"

#include <cmath>

namespace fhsim {

PolynomialSpec::PolynomialSpec(std::vector<Scalar> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw std::invalid_argument("PolynomialSpec: degree must be >= 1");
    if (coeffs.size() > 32) throw std::invalid_argument("PolynomialSpec: degree bound is 32");
    while (coeffs.size() > 1 && coeffs.back() == Scalar{0.0, 0.0}) coeffs.pop_back();
    // lambda_1 = 0 is allowed structurally (e.g. P = z^3 for plain application);
    // admissibility and basis construction reject it through the margin.
}

Admissibility admissibility(const PolynomialSpec& P) {
    double margin = std::abs(P.coeffs[0]);
    for (std::size_t i = 1; i < P.coeffs.size(); ++i) margin -= std::abs(P.coeffs[i]);
    return Admissibility{margin, margin > 0.0};
}

SparseVec apply_shift_power(const ShiftOperator& op, std::uint64_t n, const SparseVec& v,
                            const SpaceConfig& /*space*/) {
    if (n == 0) return v;
    std::vector<SparseVec::Entry> out;
    out.reserve(v.support_size());
    for (const auto& e : v.entries()) {
        if (e.index < n) continue;
        std::uint64_t t = e.index - n;
        LogMag ratio = lm_div(logW(op.weights, e.index), logW(op.weights, t));
        out.push_back({t, e.value * ratio.to_scalar()});
    }
    return SparseVec::from_entries(std::move(out));
}

SparseVec apply_polynomial(const PolynomialSpec& P, const ShiftOperator& op, const SparseVec& v,
                           const SpaceConfig& space) {
    SparseVec acc;
    for (std::size_t i = 1; i <= P.degree(); ++i) {
        Scalar li = P.lambda(i);
        if (li == Scalar{0.0, 0.0}) continue;
        acc = vec_axpy(li, apply_shift_power(op, i, v, space), acc);
    }
    return acc;
}

std::vector<LogMag> apply_shift_power_log(const ShiftOperator& op, std::uint64_t n,
                                          const std::vector<LogMag>& coeffs) {
    if (n >= coeffs.size()) return {};
    std::vector<LogMag> out(coeffs.size() - n);
    for (std::size_t t = 0; t + n < coeffs.size(); ++t) {
        const LogMag& c = coeffs[t + n];
        if (c.is_zero()) continue;
        out[t] = lm_mul(c, lm_div(logW(op.weights, t + n), logW(op.weights, t)));
    }
    return out;
}

std::vector<LogMag> apply_polynomial_log(const PolynomialSpec& P, const ShiftOperator& op,
                                         const std::vector<LogMag>& coeffs) {
    std::size_t d = P.degree();
    std::size_t out_len = coeffs.size() > 1 ? coeffs.size() - 1 : 0;
    std::vector<LogMag> out(out_len);
    std::vector<LogMag> terms;
    for (std::size_t t = 0; t < out_len; ++t) {
        terms.clear();
        for (std::size_t i = 1; i <= d; ++i) {
            if (t + i >= coeffs.size()) break;
            const LogMag& c = coeffs[t + i];
            if (c.is_zero()) continue;
            LogMag term = lm_mul(c, lm_div(logW(op.weights, t + i), logW(op.weights, t)));
            terms.push_back(lm_scale(term, P.lambda(i)));
        }
        out[t] = lm_sum(terms);
    }
    return out;
}

SparseVec truncated_apply_weight_basis(const std::vector<Scalar>& X, std::uint64_t n,
                                       const WeightFamily& family) {
    if (X.size() < 2 * n + 1)
        throw std::out_of_range("truncated_apply_weight_basis: need coefficients up to index 2n");
    std::vector<SparseVec::Entry> out;
    out.reserve(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        Scalar c = X[k + n] * lm_div(LogMag::one(), logW(family, k)).to_scalar();
        out.push_back({k, c});
    }
    return SparseVec::from_entries(std::move(out));
}

}  // namespace fhsim
