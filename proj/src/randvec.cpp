#include "fhsim/randvec.hpp"

#include <algorithm>
#include <cmath>

namespace fhsim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// uniform in (0,1), never 0 or 1
double to_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

DistributionSpec DistributionSpec::custom(
    std::function<Scalar(std::uint64_t, std::uint64_t)> s, double moment_exp, double moment_val) {
    DistributionSpec d;
    d.kind = DistKind::custom_iid;
    d.sampler = std::move(s);
    d.moment_exponent = moment_exp;
    d.moment_value = moment_val;
    return d;
}

double DistributionSpec::moment(double p) const {
    if (kind == DistKind::standard_complex_gaussian) return std::tgamma(p / 2.0 + 1.0);
    if (p != moment_exponent)
        throw std::invalid_argument("DistributionSpec: declared moment exponent mismatch");
    return moment_value;
}

Scalar sample_X(const DistributionSpec& dist, std::uint64_t master_seed, std::uint64_t j) {
    if (dist.kind == DistKind::custom_iid) {
        if (!dist.sampler) throw std::invalid_argument("custom distribution has no sampler");
        return dist.sampler(master_seed, j);
    }
    std::uint64_t h = splitmix64(master_seed ^ splitmix64(j * kGolden + 1));
    double u1 = to_unit(h);
    double u2 = to_unit(splitmix64(h ^ kGolden));
    double r = std::sqrt(-std::log(u1));
    return std::polar(r, 2.0 * std::acos(-1.0) * u2);
}

DecayVerdict decay_condition_check(const DistributionSpec& dist, double beta,
                                   std::uint64_t trials) {
    if (!(beta > 0.0)) throw std::invalid_argument("decay_condition_check: beta > 0");
    DecayVerdict v;
    if (dist.kind == DistKind::standard_complex_gaussian) {
        v.pass = true;
        v.analytic = true;
        v.evidence = "gaussian tail: (log r)^{1+beta} e^{-r^2} -> 0";
        for (double r = 2.0; r <= 64.0; r *= 2.0)
            v.trace.push_back({r, std::pow(std::log(r), 1.0 + beta) * std::exp(-r * r)});
        return v;
    }
    if (dist.tail_log_prob) {
        // declared tail, evaluated on r-doublings up to 2^40
        double first_knee = -1.0, last = 0.0;
        for (double r = 2.0; r <= std::pow(2.0, 40.0); r *= 2.0) {
            double val = std::pow(std::log(r), 1.0 + beta) * std::exp(dist.tail_log_prob(r));
            v.trace.push_back({r, val});
            last = val;
            if (first_knee < 0.0 && v.trace.size() >= 4) first_knee = val;
        }
        v.analytic = true;
        v.pass = last <= first_knee * (1.0 + 1e-9);
        v.evidence = v.pass ? "declared tail: trace nonincreasing beyond the knee"
                            : "declared tail: (log r)^{1+beta} P(|X|>=r) grows";
        return v;
    }
    // empirical tails
    if (trials == 0) throw std::invalid_argument("decay_condition_check: trials > 0");
    std::vector<double> mags(trials);
    for (std::uint64_t t = 0; t < trials; ++t) mags[t] = std::abs(sample_X(dist, 0xdecau, t));
    std::sort(mags.begin(), mags.end());
    double knee = -1.0, last = 0.0;
    for (double r = 2.0; r <= mags.back() * 2.0; r *= 2.0) {
        auto it = std::lower_bound(mags.begin(), mags.end(), r);
        double tailp = static_cast<double>(mags.end() - it) / static_cast<double>(trials);
        double val = std::pow(std::log(r), 1.0 + beta) * tailp;
        v.trace.push_back({r, val});
        last = val;
        if (knee < 0.0 && v.trace.size() >= 2) knee = val;
    }
    v.pass = last <= std::max(knee, 1e-12);
    v.evidence = "empirical tail trace over r-doublings";
    return v;
}

std::uint64_t select_m_geometric(std::uint64_t gamma, double M, double eta) {
    if (gamma < 2) throw std::invalid_argument("select_m_geometric: gamma >= 2");
    if (!(M > 1.0)) throw std::invalid_argument("select_m_geometric: M > 1");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("select_m_geometric: eta in (0,1)");
    double expr = static_cast<double>(gamma) * (4.0 * std::log(M) - std::log(eta)) /
                  std::abs(std::log(eta));
    double mx = std::max(static_cast<double>(2 * gamma), expr);
    return static_cast<std::uint64_t>(std::ceil(mx)) + 1;
}

std::uint64_t select_m_poly(std::uint64_t gamma, double C, double rho, double eta_slack) {
    if (gamma < 2) throw std::invalid_argument("select_m_poly: gamma >= 2");
    if (!(C >= 1.0)) throw std::invalid_argument("select_m_poly: C >= 1");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("select_m_poly: rho in (0,1)");
    if (!(eta_slack > 0.0)) throw std::invalid_argument("select_m_poly: eta_slack > 0");
    double expr =
        static_cast<double>(gamma) * std::log((1.0 + eta_slack) * C) / (-std::log(rho));
    double mx = std::max(static_cast<double>(2 * gamma), expr);
    return static_cast<std::uint64_t>(std::ceil(mx)) + 1;
}

std::size_t RandomVector::family_of_index(std::uint64_t j) const {
    if (spec.construction == Construction::single) return 0;
    int k = block_index(j, spec.m).k;
    return static_cast<std::size_t>((k - 1) % static_cast<int>(family_count));
}

SparseVec RandomVector::render() const {
    std::vector<SparseVec::Entry> entries;
    entries.reserve(coords.size());
    for (const auto& [j, c] : coords) {
        Scalar z = c.to_scalar();
        if (z == Scalar{0.0, 0.0}) continue;  // underflow flushes to zero
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("RandomVector::render: coefficient overflows double range");
        entries.push_back({j, z});
    }
    return SparseVec::from_entries(std::move(entries));
}

double RandomVector::log_lp_norm(const SpaceConfig& space) const {
    double m = kNegInf;
    for (const auto& [j, c] : coords) m = std::max(m, c.log_abs);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (const auto& [j, c] : coords)
        if (!c.is_zero()) s += std::exp(space.p * (c.log_abs - m));
    return m + std::log(s) / space.p;
}

RandomVector build_Z_single(const WeightFamily& family, const RandomVectorSpec& spec,
                            const SpaceConfig& space, bool allow_non_fhc) {
    if (spec.j_max == 0) throw std::invalid_argument("build_Z_single: j_max unset");
    auto verdict = fhc_constant(family, space);
    if (!verdict.value && !allow_non_fhc)
        throw std::invalid_argument("build_Z_single: family is not FHC (C_w diverges)");
    RandomVector out;
    out.spec = spec;
    if (!verdict.value)
        out.warnings.push_back("family is not FHC: " + to_string(verdict.status));
    out.family_count = 1;
    out.coords.reserve(spec.j_max);
    for (std::uint64_t j = 1; j <= spec.j_max; ++j) {
        Scalar x = spec.draw(j);
        if (x == Scalar{0.0, 0.0}) continue;
        LogMag lw = logW(family, j);
        out.coords.push_back({j, LogMag{std::log(std::abs(x)) - lw.log_abs,
                                        std::arg(x) - lw.phase}});
    }
    double tail_p = fhc_series_tail(family, space, spec.j_max);
    out.tail.bound_expectation =
        std::pow(spec.dist.moment(space.p) * tail_p, 1.0 / space.p);
    out.tail.per_operator = {tail_p};
    return out;
}

RandomVector build_Z_common_weights(const std::vector<WeightFamily>& families,
                                    const RandomVectorSpec& spec, const SpaceConfig& space) {
    if (families.empty()) throw std::invalid_argument("build_Z_common_weights: no families");
    if (spec.j_max == 0) throw std::invalid_argument("build_Z_common_weights: j_max unset");
    if (!(spec.m >= spec.gamma + 1 && spec.gamma + 1 >= 3 && spec.j_max >= spec.m))
        throw std::invalid_argument(
            "build_Z_common_weights: need J_max >= m >= gamma+1 >= 3");
    RandomVector out;
    out.spec = spec;
    out.family_count = families.size();
    for (std::size_t i = 0; i < families.size(); ++i) {
        auto v = fhc_constant(families[i], space);
        if (!v.value)
            out.warnings.push_back("family " + std::to_string(i + 1) +
                                   " is not FHC: " + to_string(v.status));
    }
    out.coords.reserve(spec.j_max - spec.m + 1);
    for (std::uint64_t j = spec.m; j <= spec.j_max; ++j) {
        Scalar x = spec.draw(j);
        if (x == Scalar{0.0, 0.0}) continue;
        const auto& fam = families[out.family_of_index(j)];
        LogMag lw = logW(fam, j);
        out.coords.push_back({j, LogMag{std::log(std::abs(x)) - lw.log_abs,
                                        std::arg(x) - lw.phase}});
    }
    double worst_tail = 0.0;
    for (const auto& f : families) {
        double t = fhc_series_tail(f, space, spec.j_max);
        out.tail.per_operator.push_back(t);
        worst_tail = std::max(worst_tail, t);
    }
    out.tail.bound_expectation = std::pow(spec.dist.moment(space.p) * worst_tail, 1.0 / space.p);
    return out;
}

RandomVector build_Z_common_poly(std::vector<std::shared_ptr<const AdaptedBasis>> bases,
                                 const RandomVectorSpec& spec, const SpaceConfig& /*space*/) {
    if (bases.empty()) throw std::invalid_argument("build_Z_common_poly: no bases");
    if (spec.j_max == 0) throw std::invalid_argument("build_Z_common_poly: j_max unset");
    if (!(spec.m >= spec.gamma + 1 && spec.gamma + 1 >= 3 && spec.j_max >= spec.m))
        throw std::invalid_argument("build_Z_common_poly: need J_max >= m >= gamma+1 >= 3");

    double rho_max = 0.0, cw_max = 0.0;
    for (const auto& b : bases) {
        rho_max = std::max(rho_max, b->rho());
        cw_max = std::max(cw_max, b->cw());
    }
    for (const auto& b : bases) {
        double live = std::log(b->cw()) +
                      static_cast<double>(b->K() + 1) * std::log(b->rho()) -
                      std::log(1.0 - b->rho());
        if (b->K() < spec.j_max && live > std::log(1e-16))
            throw std::out_of_range(
                "build_Z_common_poly: basis too short for J_max (live norm mass beyond K)");
    }

    RandomVector out;
    out.spec = spec;
    out.family_count = bases.size();
    out.bases = std::move(bases);
    out.u_coeffs.resize(spec.j_max - spec.m + 1);
    for (std::uint64_t j = spec.m; j <= spec.j_max; ++j) out.u_coeffs[j - spec.m] = spec.draw(j);

    // e-coordinate rendering: coefficient at e_t sums X_j beta^{(b_j)}_{t,j}
    // over j >= t; truncated where the beta bound makes terms negligible
    std::uint64_t t_cap = 0;
    {
        double logrho = std::log(rho_max);
        double need = std::log(1e-18);
        while (std::log(cw_max) + static_cast<double>(t_cap) * logrho > need &&
               t_cap < spec.j_max)
            ++t_cap;
    }
    std::vector<LogMag> terms;
    const double log_rho_max = std::log(rho_max);
    for (std::uint64_t t = 0; t <= t_cap; ++t) {
        terms.clear();
        double max_log = kNegInf;
        for (std::uint64_t j = std::max<std::uint64_t>(t, spec.m); j <= spec.j_max; ++j) {
            // the beta bound rho^j/W_t makes contributions monotone-small in j;
            // stop once the bound sits 20 decades under the largest term
            if (max_log != kNegInf &&
                std::log(cw_max) + static_cast<double>(j) * log_rho_max < max_log - 46.0)
                break;
            const auto& basis = *out.bases[out.family_of_index(j)];
            if (j > basis.K()) continue;  // numerically void beyond (checked above)
            Scalar x = out.u_coeffs[j - spec.m];
            if (x == Scalar{0.0, 0.0}) continue;
            LogMag b = basis.beta(t, j);
            if (b.is_zero()) continue;
            LogMag term = lm_scale(b, x);
            max_log = std::max(max_log, term.log_abs);
            terms.push_back(term);
        }
        LogMag c = lm_sum(terms);
        if (!c.is_zero()) out.coords.push_back({t, c});
    }

    // E ||tail beyond J_max||_p <= E|X| * C_max * sum_{j>J} rho^j
    double logtail = std::log(spec.dist.moment(1.0) * cw_max) +
                     static_cast<double>(spec.j_max + 1) * std::log(rho_max) -
                     std::log(1.0 - rho_max);
    out.tail.bound_expectation = std::exp(logtail);
    for (const auto& b : out.bases)
        out.tail.per_operator.push_back(
            std::exp(std::log(spec.dist.moment(1.0) * b->cw()) +
                     static_cast<double>(spec.j_max + 1) * std::log(b->rho()) -
                     std::log(1.0 - b->rho())));
    return out;
}

}  // namespace fhsim
