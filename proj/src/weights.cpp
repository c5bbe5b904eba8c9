#include "fhsim/weights.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace fhsim {

namespace {

// running Neumaier compensation for long monotone-term sums
struct CompSum {
    double sum = 0.0, comp = 0.0;
    void add(double t) {
        double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    double value() const { return sum + comp; }
};

// prefix logW table for explicit families, built once at construction
std::shared_ptr<const std::vector<LogMag>> build_prefix(const std::vector<Scalar>& w) {
    auto out = std::make_shared<std::vector<LogMag>>();
    out->reserve(w.size() + 1);
    out->push_back(LogMag::one());
    LogMag acc = LogMag::one();
    for (const auto& wi : w) {
        if (wi == Scalar{0.0, 0.0})
            throw std::invalid_argument("WeightFamily: explicit weight is zero");
        acc = lm_mul(acc, LogMag::from_scalar(wi));
        out->push_back(acc);
    }
    return out;
}

}  // namespace

WeightFamily WeightFamily::constant(double lam) {
    if (!(lam > 0.0)) throw std::invalid_argument("constant family: lambda must be > 0");
    WeightFamily f;
    f.kind = WeightKind::constant;
    f.lambda = lam;
    return f;
}

WeightFamily WeightFamily::power(double beta) {
    WeightFamily f;
    f.kind = WeightKind::power;
    f.beta = beta;
    return f;
}

WeightFamily WeightFamily::ratio_power(double eps, const SpaceConfig& space) {
    WeightFamily f;
    f.kind = WeightKind::ratio_power;
    f.eps = eps;
    f.ratio_exp = (1.0 + eps) / space.p;
    return f;
}

WeightFamily WeightFamily::exp_log_power(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("exp_log_power family: eps must be > 0");
    WeightFamily f;
    f.kind = WeightKind::exp_log_power;
    f.eps = eps;
    return f;
}

WeightFamily WeightFamily::explicit_list(std::vector<Scalar> w) {
    for (const auto& wi : w)
        if (wi == Scalar{0.0, 0.0})
            throw std::invalid_argument("explicit family: weights must be nonzero");
    WeightFamily f;
    f.kind = WeightKind::explicit_list;
    f.weights = std::move(w);
    f.explicit_prefix = build_prefix(f.weights);
    return f;
}

WeightFamily WeightFamily::custom(std::function<LogMag(std::uint64_t)> logw) {
    WeightFamily f;
    f.kind = WeightKind::custom_logw;
    f.logw_fn = std::move(logw);
    return f;
}

std::string WeightFamily::kind_name() const {
    switch (kind) {
        case WeightKind::constant: return "constant";
        case WeightKind::power: return "power";
        case WeightKind::ratio_power: return "ratio_power";
        case WeightKind::exp_log_power: return "exp_log_power";
        case WeightKind::explicit_list: return "explicit";
        case WeightKind::custom_logw: return "custom_logW";
    }
    return "?";
}

LogMag logW(const WeightFamily& family, std::uint64_t n) {
    if (n == 0) return LogMag::one();
    switch (family.kind) {
        case WeightKind::constant:
            return LogMag{static_cast<double>(n) * std::log(family.lambda), 0.0};
        case WeightKind::power:
            return LogMag{family.beta * std::log(static_cast<double>(n)), 0.0};
        case WeightKind::ratio_power:
            return LogMag{family.ratio_exp * std::log(static_cast<double>(n + 1)), 0.0};
        case WeightKind::exp_log_power: {
            if (n == 1) return LogMag::one();
            double ln = std::log(static_cast<double>(n));
            return LogMag{std::pow(ln, 1.0 + family.eps), 0.0};
        }
        case WeightKind::explicit_list: {
            const auto& pre = *family.explicit_prefix;
            if (n >= pre.size())
                throw std::out_of_range("logW: explicit family shorter than requested index");
            return pre[n];
        }
        case WeightKind::custom_logw:
            return family.logw_fn(n);
    }
    throw std::logic_error("logW: bad kind");
}

LogMag log_weight(const WeightFamily& family, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("log_weight: weights are indexed from 1");
    return lm_div(logW(family, n), logW(family, n - 1));
}

LogMag log_prod_range(const WeightFamily& family, std::uint64_t a, std::uint64_t b) {
    if (a == 0) a = 1;  // w_0 := 1 by convention
    if (a > b) return LogMag::one();
    return lm_div(logW(family, b), logW(family, a - 1));
}

std::string to_string(SeriesStatus s) {
    switch (s) {
        case SeriesStatus::converges_analytic: return "converges_analytic";
        case SeriesStatus::converges_numeric: return "converges_numeric";
        case SeriesStatus::diverges_witness: return "diverges_witness";
        case SeriesStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// sum_{j>=1} (j+off)^{-s} with an integral bracket on the remainder; the
// midpoint is returned, the bracket width shrinks like N^{-s}
double zeta_like(double s, double off, double* err_out = nullptr) {
    CompSum acc;
    std::uint64_t N = 1 << 16;
    double lo = 0, hi = 0;
    std::uint64_t j = 1;
    for (;;) {
        for (; j <= N; ++j) acc.add(std::pow(static_cast<double>(j) + off, -s));
        double nn = static_cast<double>(N) + off;
        hi = std::pow(nn, 1.0 - s) / (s - 1.0);
        lo = std::pow(nn + 1.0, 1.0 - s) / (s - 1.0);
        if (hi - lo <= 1e-13 * (acc.value() + lo) || N >= (1u << 26)) break;
        N *= 2;
    }
    if (err_out) *err_out = (hi - lo) / 2;
    return acc.value() + (lo + hi) / 2;
}

SeriesVerdict converge_analytic(double sum, double p, std::string how) {
    SeriesVerdict v;
    v.status = SeriesStatus::converges_analytic;
    v.value = std::pow(sum, 1.0 / p);
    v.evidence = std::move(how);
    return v;
}

SeriesVerdict diverge(std::string witness) {
    SeriesVerdict v;
    v.status = SeriesStatus::diverges_witness;
    v.witness = std::move(witness);
    return v;
}

}  // namespace

SeriesVerdict fhc_constant(const WeightFamily& family, const SpaceConfig& space) {
    const double p = space.p;
    switch (family.kind) {
        case WeightKind::constant: {
            double lam = family.lambda;
            if (lam <= 1.0)
                return diverge("terms |W_j|^{-p} = lambda^{-jp} >= 1 for all j (lambda <= 1)");
            return converge_analytic(1.0 / (std::pow(lam, p) - 1.0), p,
                                     "geometric series, sum = 1/(lambda^p - 1)");
        }
        case WeightKind::power: {
            double s = family.beta * p;
            if (s <= 1.0) return diverge("p-series exponent beta*p <= 1");
            return converge_analytic(zeta_like(s, 0.0), p, "p-series with integral tail bracket");
        }
        case WeightKind::ratio_power: {
            double s = family.ratio_exp * p;  // = 1 + eps
            if (s <= 1.0) return diverge("telescoped exponent (1+eps) <= 1");
            return converge_analytic(zeta_like(s, 1.0), p,
                                     "telescoping |W_n| = (n+1)^{(1+eps)/p}, p-series");
        }
        case WeightKind::exp_log_power: {
            // terms e^{-p (log j)^{1+eps}}, j >= 2, plus the j=1 term 1
            CompSum acc;
            acc.add(1.0);  // |W_1| = 1
            double term = 1.0;
            std::uint64_t j = 2;
            for (; j <= (1u << 22); ++j) {
                term = std::exp(-p * std::pow(std::log(static_cast<double>(j)), 1.0 + family.eps));
                acc.add(term);
                if (term < 1e-17 * acc.value() &&
                    p * (1.0 + family.eps) * std::pow(std::log(static_cast<double>(j)), family.eps) > 3.0)
                    break;
            }
            // once the local decay exponent exceeds 3, tail <= term * j / 2
            return converge_analytic(acc.value() + term * static_cast<double>(j) / 2.0, p,
                                     "super-polynomial decay of e^{-p log^{1+eps} j}");
        }
        case WeightKind::explicit_list: {
            SeriesVerdict v;
            v.status = SeriesStatus::inconclusive;
            CompSum acc;
            for (std::uint64_t j = 1; j < family.explicit_prefix->size(); ++j)
                acc.add(std::exp(-p * logW(family, j).log_abs));
            v.evidence = "finite explicit family: series undetermined beyond the list";
            v.value.reset();
            v.witness.clear();
            return v;
        }
        case WeightKind::custom_logw: {
            // numeric doubling rule on partial sums
            CompSum acc;
            std::uint64_t N = 1 << 10;
            double prev = 0.0;
            int stable = 0;
            std::uint64_t j = 1;
            double min_term = std::numeric_limits<double>::infinity();
            double max_term = 0.0;
            while (N <= (1u << 22)) {
                for (; j <= N; ++j) {
                    double t = std::exp(-p * logW(family, j).log_abs);
                    min_term = std::min(min_term, t);
                    max_term = std::max(max_term, t);
                    acc.add(t);
                }
                double S = acc.value();
                if (prev > 0.0 && std::abs(S - prev) <= 1e-10 * S)
                    ++stable;
                else
                    stable = 0;
                if (stable >= 2) {
                    SeriesVerdict v;
                    v.status = SeriesStatus::converges_numeric;
                    v.value = std::pow(S, 1.0 / p);
                    v.evidence = "partial sums stable at two consecutive doublings";
                    return v;
                }
                prev = S;
                N *= 2;
            }
            if (min_term > 1e-6)
                return diverge("terms bounded below by " + std::to_string(min_term) +
                               " over j <= 2^22");
            SeriesVerdict v;
            v.status = SeriesStatus::inconclusive;
            v.evidence = "doubling rule not satisfied by j = 2^22";
            return v;
        }
    }
    throw std::logic_error("fhc_constant: bad kind");
}

double fhc_series_tail(const WeightFamily& family, const SpaceConfig& space, std::uint64_t J) {
    const double p = space.p;
    switch (family.kind) {
        case WeightKind::constant: {
            double r = std::pow(family.lambda, -p);
            if (r >= 1.0) return std::numeric_limits<double>::infinity();
            return std::pow(r, static_cast<double>(J + 1)) / (1.0 - r);
        }
        case WeightKind::power: {
            double s = family.beta * p;
            if (s <= 1.0) return std::numeric_limits<double>::infinity();
            // upper bound: integral comparison from J
            return std::pow(static_cast<double>(J), 1.0 - s) / (s - 1.0);
        }
        case WeightKind::ratio_power: {
            double s = family.ratio_exp * p;
            if (s <= 1.0) return std::numeric_limits<double>::infinity();
            return std::pow(static_cast<double>(J + 1), 1.0 - s) / (s - 1.0);
        }
        default: {
            // numeric: sum until terms are negligible, then a conservative
            // geometric extrapolation from the last observed ratio
            CompSum acc;
            double last = 0.0, prevterm = 0.0;
            std::uint64_t limit =
                family.kind == WeightKind::explicit_list
                    ? static_cast<std::uint64_t>(family.weights.size())
                    : J + (1u << 20);
            for (std::uint64_t j = J + 1; j <= limit; ++j) {
                prevterm = last;
                last = std::exp(-p * logW(family, j).log_abs);
                acc.add(last);
                if (last < 1e-18 * std::max(acc.value(), 1e-300) && j > J + 16) break;
            }
            double rem = 0.0;
            if (family.kind != WeightKind::explicit_list && prevterm > 0.0 && last < prevterm) {
                double r = last / prevterm;
                rem = 2.0 * last * r / (1.0 - r);
            }
            return acc.value() + rem;
        }
    }
}

BoundedReport bounded_check(const WeightFamily& family, std::uint64_t probe_horizon) {
    if (probe_horizon < 1) throw std::invalid_argument("bounded_check: probe_horizon >= 1");
    BoundedReport r;
    switch (family.kind) {
        case WeightKind::constant:
            r = {true, true, family.lambda, family.lambda};
            return r;
        case WeightKind::power: {
            // w_1 = 1, w_n = (n/(n-1))^beta -> 1; sup at n = 2 for beta > 0
            double sup = family.beta >= 0.0 ? std::max(1.0, std::pow(2.0, family.beta)) : 1.0;
            r = {true, true, sup, 1.0};
            return r;
        }
        case WeightKind::ratio_power: {
            double w1 = std::pow(2.0, family.ratio_exp);
            r = {true, true, family.ratio_exp >= 0.0 ? w1 : 1.0, 1.0};
            return r;
        }
        case WeightKind::exp_log_power: {
            // w_n = e^{log^{1+eps} n - log^{1+eps}(n-1)} -> 1; finite max early on
            double sup = 1.0;
            for (std::uint64_t n = 2; n <= std::max<std::uint64_t>(probe_horizon, 1024); ++n) {
                double w = std::exp(log_weight(family, n).log_abs);
                sup = std::max(sup, w);
                if (n > 64 && w < sup * 0.5) break;
            }
            r = {true, true, sup, 1.0};
            return r;
        }
        default: {
            double sup = 0.0;
            std::uint64_t limit = family.kind == WeightKind::explicit_list
                                      ? std::min<std::uint64_t>(probe_horizon, family.weights.size())
                                      : probe_horizon;
            double tail_max = 0.0;
            for (std::uint64_t n = 1; n <= limit; ++n) {
                double w = std::exp(log_weight(family, n).log_abs);
                sup = std::max(sup, w);
                if (n > limit / 2) tail_max = std::max(tail_max, w);
            }
            r = {true, false, sup, tail_max};
            return r;
        }
    }
}

double point_spectrum_radius(const WeightFamily& family, const SpaceConfig& /*space*/,
                             std::uint64_t window_lo, std::uint64_t window_hi) {
    if (window_lo < 1 || window_hi < window_lo)
        throw std::invalid_argument("point_spectrum_radius: empty window");
    if (family.kind == WeightKind::constant) return family.lambda;
    double inv = 0.0;  // max of |W_n|^{-1/n}
    std::uint64_t limit = family.kind == WeightKind::explicit_list
                              ? std::min<std::uint64_t>(window_hi, family.weights.size())
                              : window_hi;
    // geometric subsample keeps large windows cheap without missing the sup
    std::uint64_t n = window_lo;
    while (n <= limit) {
        inv = std::max(inv, std::exp(-logW(family, n).log_abs / static_cast<double>(n)));
        std::uint64_t step = std::max<std::uint64_t>(1, n / 64);
        n += step;
    }
    return 1.0 / inv;
}

}  // namespace fhsim
