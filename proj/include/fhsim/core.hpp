// core.hpp — scalars, finite-support vectors, l_p norms, log-domain magnitudes.
//
// Everything here works on the complex sequence space l_p, 1 <= p < infinity.
// Weight partial products W_n = w_1...w_n can grow like e^{log^2 n} or lambda^n,
// far outside IEEE double range over the horizons we simulate, so magnitudes
// are carried as (log|z|, arg z) pairs wherever long products appear.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fhsim {

using Scalar = std::complex<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// The ambient space l_p. Only 1 <= p < infinity is meaningful here.
struct SpaceConfig {
    double p = 2.0;

    explicit SpaceConfig(double p_ = 2.0) : p(p_) {
        if (!(p >= 1.0) || !std::isfinite(p))
            throw std::invalid_argument("SpaceConfig: requires 1 <= p < infinity");
    }
};

// ---------------------------------------------------------------------------
// LogMag: a complex number stored as (log|z|, arg z). log_abs == -inf encodes
// exact zero (phase meaningless, kept 0). Safe for magnitudes far beyond
// double range.
// ---------------------------------------------------------------------------
struct LogMag {
    double log_abs = kNegInf;
    double phase = 0.0;

    static LogMag zero() { return LogMag{}; }
    static LogMag one() { return LogMag{0.0, 0.0}; }

    static LogMag from_scalar(Scalar z) {
        double a = std::abs(z);
        if (a == 0.0) return zero();
        return LogMag{std::log(a), std::arg(z)};
    }
    static LogMag from_real(double x) {
        if (x == 0.0) return zero();
        return LogMag{std::log(std::abs(x)), x < 0.0 ? std::acos(-1.0) : 0.0};
    }

    bool is_zero() const { return log_abs == kNegInf; }

    // Best-effort double rendering; underflows to 0 and overflows to inf.
    Scalar to_scalar() const {
        if (is_zero()) return Scalar{0.0, 0.0};
        return std::polar(std::exp(log_abs), phase);
    }
    double abs() const { return is_zero() ? 0.0 : std::exp(log_abs); }
};

inline LogMag lm_mul(LogMag a, LogMag b) {
    if (a.is_zero() || b.is_zero()) return LogMag::zero();
    return LogMag{a.log_abs + b.log_abs, a.phase + b.phase};
}
inline LogMag lm_div(LogMag a, LogMag b) {
    if (b.is_zero()) throw std::domain_error("lm_div: division by zero magnitude");
    if (a.is_zero()) return LogMag::zero();
    return LogMag{a.log_abs - b.log_abs, a.phase - b.phase};
}
inline LogMag lm_scale(LogMag a, Scalar s) { return lm_mul(a, LogMag::from_scalar(s)); }

// Sum of log-domain terms, evaluated against the largest magnitude so the
// intermediate complex accumulator stays O(1). Exact cancellation through
// the polar representation leaves a residue of order 1e-16 of the largest
// term; only a literally zero accumulator maps to the zero value.
LogMag lm_sum(const std::vector<LogMag>& terms);

// ---------------------------------------------------------------------------
// SparseVec: finite-support element of l_p as a sorted association list.
// Invariants: indices strictly increasing, all stored coefficients nonzero.
// Pruning is exact-zero only; epsilon pruning would corrupt tail accounting.
// ---------------------------------------------------------------------------
class SparseVec {
  public:
    struct Entry {
        std::uint64_t index;
        Scalar value;
    };

    SparseVec() = default;

    // Builds from arbitrary (index, value) pairs: sorts, merges duplicates by
    // addition, prunes exact zeros.
    static SparseVec from_entries(std::vector<Entry> entries);

    static SparseVec unit(std::uint64_t index, Scalar value = Scalar{1.0, 0.0}) {
        return from_entries({{index, value}});
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }

    // max support index; throws on the zero vector
    std::uint64_t degree() const {
        if (entries_.empty()) throw std::domain_error("SparseVec::degree: zero vector");
        return entries_.back().index;
    }

    Scalar at(std::uint64_t index) const;  // 0 when outside support

    bool operator==(const SparseVec& o) const;

  private:
    std::vector<Entry> entries_;
};

// (sum |x_n|^p)^{1/p}; 0 for empty support. Terms are accumulated in
// descending magnitude order with Neumaier compensation: orbit distances mix
// magnitudes spanning many decades.
double lp_norm(const SparseVec& v, const SpaceConfig& space);

// a*x + y with exact-zero pruning.
SparseVec vec_axpy(Scalar a, const SparseVec& x, const SparseVec& y);

inline SparseVec vec_sub(const SparseVec& x, const SparseVec& y) {
    return vec_axpy(Scalar{-1.0, 0.0}, y, x);
}

double lp_distance(const SparseVec& x, const SparseVec& y, const SpaceConfig& space);

// Textual form: one "index value_re value_im" triple per line, ascending.
std::string format_sparse_vec(const SparseVec& v);
SparseVec parse_sparse_vec(const std::string& text);
void write_sparse_vec(std::ostream& os, const SparseVec& v);

// Compensated (Neumaier) summation of a term list, descending-magnitude order.
double compensated_sum_desc(std::vector<double> terms);

}  // namespace fhsim
