#include "fhsim/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace fhsim {

namespace {

// log-domain accumulator for sums of positive terms
struct LogAccum {
    double max_log = kNegInf;
    double s = 0.0;
    void add(double lg) {
        if (lg == kNegInf) return;
        if (lg > max_log) {
            s = max_log == kNegInf ? 1.0 : s * std::exp(max_log - lg) + 1.0;
            max_log = lg;
        } else {
            s += std::exp(lg - max_log);
        }
    }
    double log_total() const { return s == 0.0 ? kNegInf : max_log + std::log(s); }
};

std::optional<std::uint64_t> u64_pow(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 62) / base) return std::nullopt;
        r *= base;
    }
    return r;
}

std::vector<std::uint64_t> probe_points(std::uint64_t lo, std::uint64_t hi,
                                        std::uint64_t dense_limit) {
    std::vector<std::uint64_t> pts;
    std::uint64_t n = lo;
    for (; n <= hi && n < lo + dense_limit; ++n) pts.push_back(n);
    while (n <= hi) {
        pts.push_back(n);
        n += std::max<std::uint64_t>(1, n / 8);
    }
    if (pts.empty() || pts.back() != hi) pts.push_back(hi);
    return pts;
}

double log_inf_W(const std::vector<WeightFamily>& families, std::uint64_t j) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& f : families) lo = std::min(lo, logW(f, j).log_abs);
    return lo;
}

}  // namespace

CriterionVerdict check_geometric(const std::vector<WeightFamily>& families,
                                 const GeometricCriterionConfig& config,
                                 const SpaceConfig& space, std::uint64_t probe_n,
                                 std::uint64_t probe_m) {
    if (!(config.eta > 0.0 && config.eta < 1.0))
        throw std::invalid_argument("check_geometric: eta in (0,1) required");
    if (!(config.M > 1.0)) throw std::invalid_argument("check_geometric: M > 1 required");
    if (!(config.C > 0.0)) throw std::invalid_argument("check_geometric: C > 0 required");
    if (probe_n == 0 || probe_m == 0)
        throw std::invalid_argument("check_geometric: empty probe");

    CriterionVerdict out;
    out.criterion = "geometric_criterion";
    out.parameters = {{"eta", config.eta}, {"M", config.M}, {"C", config.C},
                      {"omega", config.omega.kind_name()}, {"probe_n", probe_n},
                      {"probe_m", probe_m}};

    // (i) reference weight is FHC
    auto vi = fhc_constant(config.omega, space);
    bool pass_i = vi.value.has_value();

    bool all_constant = config.omega.kind == WeightKind::constant;
    for (const auto& f : families) all_constant = all_constant && f.kind == WeightKind::constant;

    const double logC = std::log(config.C);
    const double logEta = std::log(config.eta);
    const double logM = std::log(config.M);

    auto npts = probe_points(0, probe_n, 64);
    auto mpts = probe_points(1, probe_m, 64);

    // (ii) and (iii) over the probe grid, recording the binding triple
    double worst_ii = kNegInf;
    nlohmann::json bind_ii, bind_iii;
    double worst_iii = kNegInf;  // max over both sides of (log excess)
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const auto& fam = families[fi];
        for (auto n : npts) {
            for (auto mm : mpts) {
                double lw = log_prod_range(fam, n, n + mm).log_abs;
                double lo = log_prod_range(config.omega, n, n + mm).log_abs;
                double md = static_cast<double>(mm);
                double ii_excess = lo - md * logEta - lw - logC;
                if (ii_excess > worst_ii) {
                    worst_ii = ii_excess;
                    bind_ii = {{"family", fi + 1}, {"n", n}, {"m", mm},
                               {"log_excess", ii_excess}};
                }
                double up = lw - (logC + md * logM);
                double dn = (-logC - md * logM) - lw;
                double side = std::max(up, dn);
                if (side > worst_iii) {
                    worst_iii = side;
                    bind_iii = {{"family", fi + 1}, {"n", n}, {"m", mm},
                                {"side", up > dn ? "upper" : "lower"},
                                {"log_excess", side}};
                }
            }
        }
    }
    bool pass_ii = worst_ii <= 1e-12;
    bool pass_iii = worst_iii <= 1e-12;

    out.pass = pass_i && pass_ii && pass_iii;
    out.status = out.pass ? "pass" : "fail";
    out.evidence = {{"i", {{"status", to_string(vi.status)},
                           {"C_omega", vi.value ? *vi.value : 0.0}}},
                    {"ii", {{"pass", pass_ii}, {"binding", bind_ii}}},
                    {"iii", {{"pass", pass_iii}, {"binding", bind_iii}}},
                    {"analytic_constants", all_constant}};
    return out;
}

RnValue rn_kl(const std::vector<WeightFamily>& families, std::size_t k, std::uint64_t n,
              std::uint64_t l, const GeneralCriterionConfig& config, const SpaceConfig& space,
              std::uint64_t tail_cap) {
    if (k >= families.size()) throw std::out_of_range("rn_kl: family index");
    auto mn = u64_pow(config.m, n), mn1 = u64_pow(config.m, n + 1);
    if (!mn || !mn1) throw std::overflow_error("rn_kl: m^n overflows");
    if (l < *mn || l > config.gamma * *mn)
        throw std::invalid_argument("rn_kl: l outside [m^n, gamma m^n]");

    const auto& fam = families[k];
    const double p = space.p;
    LogAccum acc;

    // first sum: j = floor(alpha_l)+1 .. m^{n+1}-l-1
    std::uint64_t j0 = static_cast<std::uint64_t>(std::floor(config.alpha.alpha(l))) + 1;
    std::uint64_t j1 = *mn1 >= l + 1 ? *mn1 - l - 1 : 0;
    for (std::uint64_t j = j0; j <= j1; ++j) acc.add(-p * logW(fam, j).log_abs);

    // second sum: j >= m^{n+1} up to the cap, with a geometric remainder
    // estimate from the trailing terms
    RnValue out;
    std::uint64_t cap = std::max<std::uint64_t>(tail_cap, *mn1 + 64);
    std::vector<double> trail;  // rolling window of the last 12 term logs
    for (std::uint64_t j = *mn1; j <= cap; ++j) {
        double t = p * (logW(fam, j).log_abs - logW(fam, j - l).log_abs - log_inf_W(families, j));
        acc.add(t);
        trail.push_back(t);
        if (trail.size() > 12) trail.erase(trail.begin());
        if (t < acc.log_total() - 60.0 && j > *mn1 + 32) break;
    }
    if (trail.size() >= 2) {
        double steps = static_cast<double>(trail.size() - 1);
        double r = std::exp((trail.back() - trail.front()) / steps);
        if (r >= 1.0) {
            out.inconclusive = true;  // tail terms non-decreasing at the cap
        } else {
            out.remainder_log = trail.back() + std::log(r / (1.0 - r));
            acc.add(out.remainder_log);
        }
    }
    out.log_value = acc.log_total();
    out.value = std::exp(out.log_value);
    return out;
}

CriterionVerdict check_general(const std::vector<WeightFamily>& families,
                               const GeneralCriterionConfig& config, const SpaceConfig& space,
                               std::uint64_t n_max, std::uint64_t l_samples) {
    CriterionVerdict out;
    out.criterion = "general_criterion";
    out.parameters = {{"m", config.m}, {"gamma", config.gamma}, {"n_max", n_max},
                      {"l_samples", l_samples}, {"p", space.p},
                      {"eps_tilde", config.eps_tilde}};
    if (config.gamma < 2 || config.gamma >= config.m)
        throw std::invalid_argument("check_general: need 2 <= gamma < m");

    // alpha growth condition first
    AlphaVerdict av = alpha_condition_check(config.alpha, config.eps_tilde, 1 << 17);
    if (!av.pass) {
        out.status = "rejected";
        out.pass = false;
        out.evidence = {{"stage", "alpha_condition"}, {"detail", av.evidence}};
        return out;
    }

    // decay hypothesis |W_n(k)|^{-p} <= C_k n^{-1} (log(n+1))^{-(1+p/2+tau_k)};
    // constants are fitted over the probe window when not supplied, and the
    // fit quality is reported rather than asserted asymptotically
    const double p = space.p;
    const std::uint64_t probe = 1 << 12;
    std::vector<double> Ck = config.C_k, tk = config.tau_k;
    bool fitted = Ck.empty();
    if (tk.empty()) tk.assign(families.size(), 0.5);
    if (tk.size() != families.size())
        throw std::invalid_argument("check_general: tau_k size mismatch");
    nlohmann::json decay_rows = nlohmann::json::array();
    for (std::size_t i = 0; i < families.size(); ++i) {
        double need = kNegInf;
        std::uint64_t worst_n = 1;
        for (std::uint64_t n = 1; n <= probe; ++n) {
            double envelope = -std::log(static_cast<double>(n)) -
                              (1.0 + p / 2.0 + tk[i]) *
                                  std::log(std::log(static_cast<double>(n) + 1.0));
            double c = -p * logW(families[i], n).log_abs - envelope;
            if (c > need) {
                need = c;
                worst_n = n;
            }
        }
        double c_need = std::exp(need);
        if (fitted) {
            Ck.push_back(c_need);
        } else if (c_need > Ck[i] * (1.0 + 1e-9)) {
            out.status = "rejected";
            out.pass = false;
            out.evidence = {{"stage", "decay_hypothesis"}, {"family", i + 1},
                            {"violating_n", worst_n}, {"needed_C", c_need},
                            {"declared_C", Ck[i]}};
            return out;
        }
        decay_rows.push_back({{"family", i + 1}, {"tau", tk[i]}, {"C", Ck[i]},
                              {"binding_n", worst_n}});
    }

    // per-family sup traces over n
    nlohmann::json fam_traces = nlohmann::json::array();
    bool any_inconclusive = false;
    bool all_converge = true;
    for (std::size_t k = 0; k < families.size(); ++k) {
        std::vector<double> trace_log;
        nlohmann::json rows = nlohmann::json::array();
        LogAccum series;
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            auto mn = u64_pow(config.m, n);
            auto mn1 = u64_pow(config.m, n + 1);
            if (!mn || !mn1) break;
            std::uint64_t lo = *mn, hi = config.gamma * *mn;
            std::vector<std::uint64_t> ls;
            bool exact = n <= 3 && hi - lo + 1 <= 4096;
            if (exact) {
                for (std::uint64_t l = lo; l <= hi; ++l) ls.push_back(l);
            } else {
                // endpoints + geometric subgrid
                ls.push_back(lo);
                double ratio = static_cast<double>(hi) / static_cast<double>(lo);
                for (std::uint64_t s = 1; s + 1 < l_samples; ++s) {
                    double f = std::pow(ratio, static_cast<double>(s) /
                                                   static_cast<double>(l_samples - 1));
                    std::uint64_t l = static_cast<std::uint64_t>(static_cast<double>(lo) * f);
                    if (l > ls.back() && l < hi) ls.push_back(l);
                }
                ls.push_back(hi);
            }
            double sup_log = kNegInf;
            std::uint64_t sup_l = lo;
            std::uint64_t cap = std::max<std::uint64_t>(*mn1 * 4, *mn1 + (1u << 17));
            for (auto l : ls) {
                RnValue rv = rn_kl(families, k, n, l, config, space, cap);
                any_inconclusive = any_inconclusive || rv.inconclusive;
                if (rv.log_value > sup_log) {
                    sup_log = rv.log_value;
                    sup_l = l;
                }
            }
            trace_log.push_back(sup_log);
            series.add(sup_log);
            rows.push_back({{"n", n}, {"sup_log_Rn", sup_log}, {"sup_l", sup_l},
                            {"l_grid", exact ? "exact" : "subgrid"}});
        }
        // geometric-ratio convergence rule: the sup trace must be eventually
        // decreasing with the last ratio bounded away from 1; the remainder
        // extrapolation is attached as evidence, not asserted
        bool converges = false;
        std::string detail;
        double rem_log = kNegInf;
        if (trace_log.size() >= 3) {
            std::size_t n0 = trace_log.size() - 1;
            while (n0 > 0 && trace_log[n0 - 1] > trace_log[n0]) --n0;
            bool eventually_dec = n0 + 2 < trace_log.size();
            double r = std::exp(trace_log.back() - trace_log[trace_log.size() - 2]);
            if (eventually_dec && r <= 0.95) {
                converges = true;
                rem_log = trace_log.back() + std::log(r / (1.0 - r));
                detail = "trace decreasing, last ratio " + std::to_string(r);
            } else if (eventually_dec) {
                detail = "trace decreasing but ratio " + std::to_string(r) +
                         " too close to 1";
            } else {
                detail = "sup trace not eventually decreasing";
            }
        } else {
            detail = "too few blocks probed";
        }
        all_converge = all_converge && converges;
        fam_traces.push_back({{"family", k + 1}, {"rows", rows},
                              {"log_series_sum", series.log_total()},
                              {"log_remainder_estimate", rem_log},
                              {"converges", converges}, {"detail", detail}});
    }

    out.pass = all_converge && !any_inconclusive;
    out.status = out.pass ? "converges_numeric" : (any_inconclusive ? "inconclusive" : "fail");
    out.evidence = {{"decay", decay_rows}, {"decay_fitted", fitted},
                    {"families", fam_traces}, {"alpha", av.evidence},
                    {"inconclusive_tails", any_inconclusive}};
    return out;
}

CriterionVerdict check_power_corollary(const std::vector<double>& betas,
                                       const SpaceConfig& space) {
    if (betas.empty()) throw std::invalid_argument("check_power_corollary: empty betas");
    CriterionVerdict out;
    out.criterion = "power_corollary";
    double a = *std::min_element(betas.begin(), betas.end());
    out.parameters = {{"betas", betas}, {"p", space.p}};
    out.pass = a > 1.0 / space.p;
    out.status = out.pass ? "pass" : "fail";
    out.evidence = {{"a", a}, {"threshold", 1.0 / space.p}};
    if (out.pass) {
        double sigma = 1.0 / (space.p * a - 1.0) + 0.1;
        out.evidence["sigma_recommended"] = sigma;
    }
    return out;
}

CriterionVerdict check_geometric_corollary(const std::vector<double>& lambdas,
                                           const SpaceConfig& space) {
    if (lambdas.empty()) throw std::invalid_argument("check_geometric_corollary: empty lambdas");
    CriterionVerdict out;
    out.criterion = "geometric_corollary";
    double a = *std::min_element(lambdas.begin(), lambdas.end());
    double b = *std::max_element(lambdas.begin(), lambdas.end());
    out.parameters = {{"lambdas", lambdas}, {"p", space.p}};
    out.pass = a > 1.0;
    out.status = out.pass ? "pass" : "fail";
    out.evidence = {{"a", a}, {"b", b}};
    if (out.pass) {
        const std::uint64_t gamma = 2;
        double expr = static_cast<double>(gamma) * std::log(b) / std::log(a) + 1.0;
        std::uint64_t m = static_cast<std::uint64_t>(
            std::ceil(std::max(static_cast<double>(2 * gamma + 1), expr)));
        out.evidence["gamma"] = gamma;
        out.evidence["m"] = m;
    }
    return out;
}

CriterionVerdict check_poly_common(const std::vector<PolynomialSpec>& polys,
                                   const std::vector<WeightFamily>& families, double delta,
                                   const SpaceConfig& space, std::uint64_t probe) {
    if (polys.size() != families.size())
        throw std::invalid_argument("check_poly_common: polys and families must align");
    if (!(delta > 0.0)) throw std::invalid_argument("check_poly_common: delta > 0");
    CriterionVerdict out;
    out.criterion = "poly_common";
    out.parameters = {{"delta", delta}, {"p", space.p}, {"probe", probe}};

    // margins >= 1 + delta
    nlohmann::json margins = nlohmann::json::array();
    bool margins_ok = true;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        auto a = admissibility(polys[i]);
        margins.push_back({{"poly", i + 1}, {"margin", a.margin}});
        margins_ok = margins_ok && a.margin >= 1.0 + delta;
    }

    // limsup |w_n(k)| <= C
    double C = 1.0;
    for (const auto& f : families)
        C = std::max(C, bounded_check(f, probe).limsup_estimate);

    // sum_j (inf_k |W_j(k)|)^{-p} by the doubling rule (closed form is the
    // min-lambda geometric series when all families are constant)
    bool inf_positive = true;
    SeriesStatus inf_status;
    double inf_value = 0.0;
    {
        bool all_const = true;
        double min_lam = std::numeric_limits<double>::infinity();
        for (const auto& f : families) {
            all_const = all_const && f.kind == WeightKind::constant;
            if (f.kind == WeightKind::constant) min_lam = std::min(min_lam, f.lambda);
        }
        if (all_const) {
            if (min_lam > 1.0) {
                inf_status = SeriesStatus::converges_analytic;
                inf_value = std::pow(std::pow(min_lam, space.p) - 1.0, -1.0);
            } else {
                inf_status = SeriesStatus::diverges_witness;
            }
        } else {
            // head summed exactly; if one family attains the inf throughout a
            // wide tail window, its analytic tail finishes the series
            const std::uint64_t J0 = 1 << 12;
            LogAccum head;
            inf_status = SeriesStatus::inconclusive;
            for (std::uint64_t j = 1; j <= J0 && inf_positive; ++j) {
                double li = log_inf_W(families, j);
                if (!std::isfinite(li)) inf_positive = false;
                else head.add(-space.p * li);
            }
            if (inf_positive) {
                auto argmin = [&](std::uint64_t j) {
                    std::size_t best = 0;
                    double lo = std::numeric_limits<double>::infinity();
                    for (std::size_t i = 0; i < families.size(); ++i) {
                        double v = logW(families[i], j).log_abs;
                        if (v < lo) {
                            lo = v;
                            best = i;
                        }
                    }
                    return best;
                };
                std::size_t dom = argmin(J0);
                bool stable = true;
                for (std::uint64_t j = J0; j <= (1u << 22); j += std::max<std::uint64_t>(1, j / 8))
                    if (argmin(j) != dom) stable = false;
                if (stable) {
                    double tail = fhc_series_tail(families[dom], space, J0);
                    if (std::isfinite(tail)) {
                        inf_status = SeriesStatus::converges_numeric;
                        inf_value = std::exp(head.log_total()) + tail;
                    } else {
                        inf_status = SeriesStatus::diverges_witness;
                    }
                }
            }
        }
    }

    // inf_k |W_n(k)| > 0 over the probe (always true for nonzero weights;
    // probes custom families for vanishing products)
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(probe, 1 << 12); ++n)
        if (!std::isfinite(log_inf_W(families, n))) inf_positive = false;

    bool series_ok = inf_status == SeriesStatus::converges_analytic ||
                     inf_status == SeriesStatus::converges_numeric;
    out.pass = margins_ok && series_ok && inf_positive;
    out.status = out.pass ? "pass" : "fail";
    out.evidence = {{"margins", margins}, {"margins_ok", margins_ok},
                    {"limsup_C", C},
                    {"inf_series", {{"status", to_string(inf_status)}, {"value", inf_value}}},
                    {"inf_positive", inf_positive}};
    if (out.pass) out.evidence["rho"] = 1.0 / (1.0 + delta);
    return out;
}

CriterionVerdict check_spectrum_corollary(const WeightFamily& family,
                                          const std::vector<PolynomialSpec>& polys, double a,
                                          double b, const SpaceConfig& space,
                                          std::uint64_t grid) {
    if (grid < 10) throw std::invalid_argument("check_spectrum_corollary: grid >= 10");
    double r_pw = point_spectrum_radius(family, space, 1, 1 << 14);
    if (!(a > 1.0 / r_pw))
        throw std::invalid_argument("check_spectrum_corollary: a must exceed 1/r_{p,w}");

    CriterionVerdict out;
    out.criterion = "spectrum_corollary";
    out.parameters = {{"a", a}, {"b", b}, {"grid", grid}, {"p", space.p}};
    nlohmann::json rows = nlohmann::json::array();
    double min_max_margin = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t idx = 0; idx < polys.size(); ++idx) {
        const auto& P = polys[idx];
        double l1 = std::abs(P.coeffs[0]);
        if (!(a <= l1 && l1 <= b)) {
            ok = false;
            rows.push_back({{"poly", idx + 1}, {"error", "|lambda_1| outside [a,b]"}});
            continue;
        }
        std::size_t d = P.degree();
        double best = -std::numeric_limits<double>::infinity(), best_r = a;
        for (std::uint64_t g = 0; g < grid; ++g) {
            double r = a + (l1 - a) * (static_cast<double>(g) + 0.5) /
                               static_cast<double>(grid);
            // (|l1| r^{d-1} - sum_{i>=2} |l_i| r^{d-i}) / r^d
            double num = l1 * std::pow(r, static_cast<double>(d - 1));
            for (std::size_t i = 2; i <= d; ++i)
                num -= std::abs(P.lambda(i)) * std::pow(r, static_cast<double>(d - i));
            double margin = num / std::pow(r, static_cast<double>(d));
            if (margin > best) {
                best = margin;
                best_r = r;
            }
        }
        rows.push_back({{"poly", idx + 1}, {"r", best_r}, {"margin", best}});
        min_max_margin = std::min(min_max_margin, best);
    }
    double delta = min_max_margin - 1.0;
    out.pass = ok && delta > 0.0;
    out.status = out.pass ? "pass" : "fail";
    out.evidence = {{"r_pw", r_pw}, {"witnesses", rows}, {"delta", out.pass ? delta : 0.0}};
    return out;
}

NonexistenceWitness make_geometric_witness(double theta, std::uint64_t base, std::size_t L) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("make_geometric_witness: theta in (0,1)");
    if (base < 2) throw std::invalid_argument("make_geometric_witness: base >= 2");
    NonexistenceWitness w;
    w.theta = theta;
    w.base = base;
    std::uint64_t m = 1;
    for (std::size_t l = 1; l <= L; ++l) {
        if (m > (std::uint64_t{1} << 62) / base) break;
        m *= base;
        std::uint64_t n = static_cast<std::uint64_t>(theta * static_cast<double>(m));
        if (n < 1) n = 1;
        if (n >= m) n = m - 1;
        w.m_l.push_back(m);
        w.n_l.push_back(n);
    }
    w.ratio_min = std::numeric_limits<double>::infinity();
    w.ratio_max = 0.0;
    for (std::size_t i = 0; i < w.m_l.size(); ++i) {
        double r = static_cast<double>(w.n_l[i]) / static_cast<double>(w.m_l[i]);
        w.ratio_min = std::min(w.ratio_min, r);
        w.ratio_max = std::max(w.ratio_max, r);
    }
    return w;
}

std::vector<double> nonexistence_log_terms(const WeightFamily& v, const WeightFamily& w,
                                           const NonexistenceWitness& witness,
                                           const SpaceConfig& space) {
    if (witness.m_l.size() != witness.n_l.size())
        throw std::invalid_argument("nonexistence_log_terms: malformed witness");
    std::vector<double> out;
    out.reserve(witness.m_l.size());
    for (std::size_t i = 0; i < witness.m_l.size(); ++i) {
        std::uint64_t m = witness.m_l[i], n = witness.n_l[i];
        if (n >= m) throw std::invalid_argument("nonexistence_log_terms: n_l < m_l required");
        double lg = space.p * (logW(w, m).log_abs - logW(v, m).log_abs -
                               logW(w, m - n).log_abs);
        out.push_back(lg);
    }
    return out;
}

std::optional<NonexistenceWitness> search_divergence_witness(
    const WeightFamily& v, const WeightFamily& w, const SpaceConfig& space,
    const std::vector<double>& theta_grid, const std::vector<std::uint64_t>& base_grid,
    std::size_t L) {
    if (theta_grid.empty() || base_grid.empty())
        throw std::invalid_argument("search_divergence_witness: empty grids");
    for (double theta : theta_grid) {
        for (auto base : base_grid) {
            auto witness = make_geometric_witness(theta, base, L);
            if (witness.m_l.size() < 4) continue;
            auto logs = nonexistence_log_terms(v, w, witness, space);
            // eventually (from l0 <= L/2) strictly increasing, final >= log 1e6
            std::size_t l0 = logs.size() - 1;
            while (l0 > 0 && logs[l0 - 1] < logs[l0]) --l0;
            if (l0 <= logs.size() / 2 && logs.back() >= std::log(1e6)) {
                witness.log_terms = std::move(logs);
                return witness;
            }
        }
    }
    return std::nullopt;
}

}  // namespace fhsim
