#include "fhsim/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

namespace fhsim {

int psi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("psi: n must be >= 1");
    return std::countr_zero(n) + 1;
}

std::vector<std::uint64_t> power_table(std::uint64_t m, std::uint64_t limit) {
    if (m < 2) throw std::invalid_argument("power_table: m >= 2");
    std::vector<std::uint64_t> pw{1};
    while (pw.back() <= limit / m) pw.push_back(pw.back() * m);
    return pw;
}

std::vector<std::uint64_t> r_k_window_union(int k, std::uint64_t m, std::uint64_t gamma,
                                            std::uint64_t N) {
    if (k < 1) throw std::invalid_argument("r_k_window_union: k >= 1");
    if (gamma < 2 || gamma >= m)
        throw std::invalid_argument("r_k_window_union: need 2 <= gamma < m");
    std::vector<std::uint64_t> out;
    auto pw = power_table(m, N);
    // n in R_k with m^n <= N; n runs over 2^{k-1}(2j+1)
    std::uint64_t step = 1ull << k;
    for (std::uint64_t n = 1ull << (k - 1); n < pw.size(); n += step) {
        std::uint64_t lo = pw[n];
        std::uint64_t hi = std::min(N, gamma <= N / pw[n] ? gamma * pw[n] : N);
        for (std::uint64_t j = lo; j <= hi; ++j) out.push_back(j);
    }
    return out;
}

BlockIndex block_index(std::uint64_t j, std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("block_index: m >= 2");
    if (j < m) throw std::invalid_argument("block_index: j >= m required");
    std::uint64_t n = 0, pw = 1;
    while (pw <= j / m) {
        pw *= m;
        ++n;
    }
    // now pw = m^n <= j < m^{n+1}
    return BlockIndex{n, psi(n)};
}

std::uint64_t default_burn_in(std::uint64_t horizon) {
    return std::max<std::uint64_t>(100, horizon / 100);
}

DensityEstimate density_estimate(const std::vector<std::uint64_t>& hits, std::uint64_t horizon,
                                 std::uint64_t burn_in) {
    if (burn_in >= horizon) throw std::invalid_argument("density_estimate: burn_in < horizon");
    DensityEstimate d;
    d.horizon = horizon;
    d.burn_in = burn_in;
    d.running_min_ratio = 1.0;
    std::uint64_t count = 0;
    std::size_t idx = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        while (idx < hits.size() && hits[idx] == n) {
            ++count;
            ++idx;
        }
        if (n >= burn_in)
            d.running_min_ratio =
                std::min(d.running_min_ratio, static_cast<double>(count) / static_cast<double>(n));
    }
    d.final_count = count;
    d.final_ratio = static_cast<double>(count) / static_cast<double>(horizon);
    return d;
}

DensityEstimate density_estimate(const std::function<bool(std::uint64_t)>& member,
                                 std::uint64_t horizon, std::uint64_t burn_in) {
    if (burn_in >= horizon) throw std::invalid_argument("density_estimate: burn_in < horizon");
    DensityEstimate d;
    d.horizon = horizon;
    d.burn_in = burn_in;
    d.running_min_ratio = 1.0;
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        if (member(n)) ++count;
        if (n >= burn_in)
            d.running_min_ratio =
                std::min(d.running_min_ratio, static_cast<double>(count) / static_cast<double>(n));
    }
    d.final_count = count;
    d.final_ratio = static_cast<double>(count) / static_cast<double>(horizon);
    return d;
}

std::string density_trace_csv(const std::vector<std::uint64_t>& hits, std::uint64_t horizon,
                              std::size_t points) {
    std::string out = "n,count,ratio\n";
    if (horizon == 0) return out;
    std::vector<std::uint64_t> checkpoints;
    double step = std::pow(static_cast<double>(horizon), 1.0 / static_cast<double>(points));
    double x = 1.0;
    for (std::size_t i = 0; i < points; ++i) {
        x *= step;
        std::uint64_t n = std::min<std::uint64_t>(horizon, static_cast<std::uint64_t>(x));
        if (checkpoints.empty() || n > checkpoints.back()) checkpoints.push_back(n);
    }
    if (checkpoints.empty() || checkpoints.back() != horizon) checkpoints.push_back(horizon);
    std::size_t idx = 0;
    std::uint64_t count = 0;
    char buf[80];
    for (std::uint64_t n : checkpoints) {
        while (idx < hits.size() && hits[idx] <= n) {
            ++count;
            ++idx;
        }
        std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g\n", static_cast<unsigned long long>(n),
                      static_cast<unsigned long long>(count),
                      static_cast<double>(count) / static_cast<double>(n));
        out += buf;
    }
    return out;
}

AlphaFamily AlphaFamily::log_power(double sigma_) {
    if (!(sigma_ > 0.0)) throw std::invalid_argument("AlphaFamily: sigma > 0");
    AlphaFamily a;
    a.kind = AlphaKind::log_power;
    a.sigma = sigma_;
    return a;
}

AlphaFamily AlphaFamily::custom(std::function<double(std::uint64_t)> f) {
    AlphaFamily a;
    a.kind = AlphaKind::custom;
    a.fn = std::move(f);
    return a;
}

double AlphaFamily::alpha(std::uint64_t l) const {
    if (l == 0) throw std::invalid_argument("alpha: l >= 1");
    if (kind == AlphaKind::log_power) return std::pow(std::log(static_cast<double>(l)), sigma);
    return fn(l);
}

AlphaVerdict alpha_condition_check(const AlphaFamily& alpha, double eps_tilde,
                                   std::uint64_t horizon) {
    if (horizon < 100) throw std::invalid_argument("alpha_condition_check: horizon >= 100");
    if (!(eps_tilde > 0.0)) throw std::invalid_argument("alpha_condition_check: eps_tilde > 0");

    AlphaVerdict v;
    // monotonicity probe (alpha must increase; probed from l = 2 since
    // (log 1)^sigma = 0 is the conventional start)
    double prev = alpha.alpha(2);
    for (std::uint64_t l = 3; l <= std::min<std::uint64_t>(horizon, 1 << 16); ++l) {
        double a = alpha.alpha(l);
        if (a < prev) throw std::invalid_argument("alpha_condition_check: alpha not increasing");
        prev = a;
    }

    double sum = 0.0;
    std::uint64_t next_checkpoint = 128;
    for (std::uint64_t l = 2; l <= horizon; ++l) {
        sum += alpha.alpha(l);
        if (l == next_checkpoint || l == horizon) {
            double k = static_cast<double>(l);
            v.ratio_trace.push_back(sum * std::pow(std::log(k), 1.0 + eps_tilde) / (k * k));
            v.limit_trace.push_back(std::log(k) * alpha.alpha(l) / k);
            if (l == next_checkpoint) next_checkpoint *= 2;
        }
    }

    if (alpha.kind == AlphaKind::log_power && alpha.sigma >= 1.0) {
        v.pass = true;
        v.analytic = true;
        v.evidence = "log_power(sigma): partial sums ~ k (log k)^sigma, ratio -> 0";
        return v;
    }
    // numeric: the ratio must not keep growing across the probed doublings
    double first = v.ratio_trace.front();
    double last = v.ratio_trace.back();
    bool monotone_up = true;
    for (std::size_t i = 1; i < v.ratio_trace.size(); ++i)
        if (v.ratio_trace[i] <= v.ratio_trace[i - 1]) monotone_up = false;
    if (monotone_up && last > 1.2 * first) {
        v.pass = false;
        v.evidence = "ratio grows across all probed doublings";
    } else if (last <= first * 1.05) {
        v.pass = true;
        v.evidence = "ratio non-increasing over probed doublings";
    } else {
        v.pass = false;
        v.evidence = "ratio trend unresolved over the probe window";
    }
    return v;
}

}  // namespace fhsim
