#include "fhsim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

namespace fhsim {

namespace {

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t horizon, std::size_t points) {
    std::vector<std::uint64_t> out;
    double step = std::pow(static_cast<double>(horizon), 1.0 / static_cast<double>(points));
    double x = 1.0;
    for (std::size_t i = 0; i < points; ++i) {
        x *= step;
        std::uint64_t n = std::min<std::uint64_t>(horizon, static_cast<std::uint64_t>(x));
        if (n >= 1 && (out.empty() || n > out.back())) out.push_back(n);
    }
    if (out.empty() || out.back() != horizon) out.push_back(horizon);
    return out;
}

double logaddexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double window_coverage(const std::vector<std::uint64_t>& hits, std::uint64_t m,
                       std::uint64_t gamma, int k, std::uint64_t n_lo, std::uint64_t n_hi) {
    if (k < 1 || m < 2 || gamma < 2 || gamma >= m || n_lo > n_hi)
        throw std::invalid_argument("window_coverage: invalid window parameters");
    std::uint64_t total = 0, covered = 0;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        if (psi(n) != k) continue;
        std::uint64_t lo = 1;
        bool overflow = false;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (lo > (std::uint64_t{1} << 62) / m) {
                overflow = true;
                break;
            }
            lo *= m;
        }
        if (overflow) break;
        std::uint64_t hi = gamma * lo;
        ++total;
        auto it = std::lower_bound(hits.begin(), hits.end(), lo);
        if (it != hits.end() && *it <= hi) ++covered;
    }
    if (total == 0) return 0.0;
    return static_cast<double>(covered) / static_cast<double>(total);
}

std::vector<SparseVec> default_target_grid(const SpaceConfig& /*space*/,
                                           std::uint64_t max_degree,
                                           const std::vector<Scalar>& coeff_grid) {
    if (coeff_grid.empty()) throw std::invalid_argument("default_target_grid: empty grid");
    double combos = std::pow(static_cast<double>(coeff_grid.size()),
                             static_cast<double>(max_degree + 1));
    if (combos > 1e4) throw std::invalid_argument("default_target_grid: grid exceeds 10^4");
    std::vector<SparseVec> out;
    std::set<std::string> seen;
    std::vector<std::size_t> digits(max_degree + 1, 0);
    std::uint64_t total = static_cast<std::uint64_t>(combos);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rem = c;
        std::vector<SparseVec::Entry> entries;
        for (std::uint64_t d = 0; d <= max_degree; ++d) {
            Scalar v = coeff_grid[rem % coeff_grid.size()];
            rem /= coeff_grid.size();
            if (v != Scalar{0.0, 0.0}) entries.push_back({d, v});
        }
        auto vec = SparseVec::from_entries(std::move(entries));
        auto key = format_sparse_vec(vec);
        if (seen.insert(key).second) out.push_back(std::move(vec));
    }
    if (seen.insert(format_sparse_vec(SparseVec{})).second) out.push_back(SparseVec{});
    return out;
}

// ---------------------------------------------------------------------------
// weights-path engine
// ---------------------------------------------------------------------------

WeightOrbitEngine::WeightOrbitEngine(WeightFamily op_family, const RandomVector& Z,
                                     const SpaceConfig& space, std::uint64_t horizon)
    : space_(space) {
    j_max_ = Z.spec.j_max;
    if (Z.coords.empty()) {
        j_min_ = 1;
    } else {
        j_min_ = Z.coords.front().first;
    }
    gm_.assign(j_max_ + 2, kNegInf);
    ph_.assign(j_max_ + 2, 0.0);
    std::uint64_t depth = j_max_ + 1;
    L_.resize(depth + 1);
    Phi_.resize(depth + 1);
    for (std::uint64_t t = 0; t <= depth; ++t) {
        LogMag lw = logW(op_family, t);
        L_[t] = lw.log_abs;
        Phi_[t] = lw.phase;
    }
    for (const auto& [j, c] : Z.coords) {
        if (j > j_max_) continue;
        gm_[j] = c.log_abs + L_[j];
        ph_[j] = c.phase + Phi_[j];
    }
    sufmax_gm_.assign(j_max_ + 2, kNegInf);
    for (std::uint64_t j = j_max_ + 1; j-- > 0;)
        sufmax_gm_[j] = std::max(gm_[j], j + 1 <= j_max_ + 1 ? sufmax_gm_[j + 1] : kNegInf);
    // tailT_[t] = sum_{t' > t} e^{-p L(t')} plus the analytic family tail
    tailT_.assign(depth + 1, 0.0);
    double beyond = fhc_series_tail(op_family, space_, depth);
    double acc = std::isfinite(beyond) ? beyond : std::numeric_limits<double>::infinity();
    tailT_[depth] = acc;
    for (std::uint64_t t = depth; t-- > 0;) {
        acc += std::exp(-space_.p * L_[t + 1]);
        tailT_[t] = acc;
    }
    (void)horizon;
}

HitDecision WeightOrbitEngine::decide(std::uint64_t l, const SparseVec& target,
                                      double eps) const {
    const double p = space_.p;
    const double budget = std::pow(eps, p);
    std::uint64_t deg_h = target.empty() ? 0 : target.degree();
    bool has_h = !target.empty();

    double partial = 0.0;
    HitDecision out;
    std::uint64_t t = 0;
    for (;;) {
        std::uint64_t j = t + l;
        bool in_range = j <= j_max_;
        bool in_h = has_h && t <= deg_h;
        if (!in_range && !in_h) {
            out.hit = partial < budget;
            break;
        }
        double g = in_range ? gm_[j] : kNegInf;
        double term;
        Scalar ht = in_h ? target.at(t) : Scalar{0.0, 0.0};
        if (ht == Scalar{0.0, 0.0}) {
            term = g == kNegInf ? 0.0 : std::exp(p * (g - L_[t]));
        } else {
            Scalar coef =
                g == kNegInf ? Scalar{0.0, 0.0} : std::polar(std::exp(g - L_[t]), ph_[j] - Phi_[t]);
            term = std::pow(std::abs(coef - ht), p);
        }
        partial += term;
        if (partial >= budget) {
            out.hit = false;
            break;
        }
        if (!in_h || t >= deg_h) {
            double tail = 0.0;
            if (j + 1 <= j_max_ && sufmax_gm_[j + 1] != kNegInf)
                tail = std::exp(p * sufmax_gm_[j + 1]) * tailT_[t];
            if (partial + tail < budget) {
                out.hit = true;
                break;
            }
        }
        ++t;
    }
    out.distance = std::pow(partial, 1.0 / p);
    return out;
}

std::vector<std::uint64_t> WeightOrbitEngine::hit_times(const SparseVec& target, double eps,
                                                        std::uint64_t horizon) const {
    std::vector<std::uint64_t> hits;
    for (std::uint64_t l = 1; l <= horizon; ++l)
        if (decide(l, target, eps).hit) hits.push_back(l);
    return hits;
}

double WeightOrbitEngine::distance(std::uint64_t l, const SparseVec& target,
                                   double rel_tol) const {
    const double p = space_.p;
    std::uint64_t deg_h = target.empty() ? 0 : target.degree();
    bool has_h = !target.empty();
    double partial = 0.0;
    std::uint64_t t = 0;
    double tail = 0.0;
    for (;;) {
        std::uint64_t j = t + l;
        bool in_range = j <= j_max_;
        bool in_h = has_h && t <= deg_h;
        if (!in_range && !in_h) {
            tail = 0.0;
            break;
        }
        double g = in_range ? gm_[j] : kNegInf;
        Scalar ht = in_h ? target.at(t) : Scalar{0.0, 0.0};
        if (ht == Scalar{0.0, 0.0}) {
            partial += g == kNegInf ? 0.0 : std::exp(p * (g - L_[t]));
        } else {
            Scalar coef =
                g == kNegInf ? Scalar{0.0, 0.0} : std::polar(std::exp(g - L_[t]), ph_[j] - Phi_[t]);
            partial += std::pow(std::abs(coef - ht), p);
        }
        if (!in_h || t >= deg_h) {
            tail = 0.0;
            if (j + 1 <= j_max_ && sufmax_gm_[j + 1] != kNegInf)
                tail = std::exp(p * sufmax_gm_[j + 1]) * tailT_[t];
            if (tail <= rel_tol * std::max(partial, 1e-300)) break;
        }
        ++t;
    }
    return std::pow(partial + tail / 2.0, 1.0 / p);
}

// ---------------------------------------------------------------------------
// adapted-path engine
// ---------------------------------------------------------------------------

AdaptedOrbitEngine::AdaptedOrbitEngine(std::size_t op_index, const RandomVector& Z,
                                       const SpaceConfig& space, std::uint64_t horizon)
    : op_index_(op_index), space_(space) {
    if (Z.spec.construction != Construction::common_poly || Z.bases.empty())
        throw std::invalid_argument("AdaptedOrbitEngine: vector is not a common_poly build");
    if (op_index >= Z.bases.size())
        throw std::out_of_range("AdaptedOrbitEngine: operator index");
    basis_ = Z.bases[op_index];
    m_ = Z.spec.m;
    horizon_ = horizon;
    j_max_ = Z.spec.j_max;

    const double rho = basis_->rho();
    const double logrho = std::log(rho);

    // own-block coefficients (dense over the scan range) and the global max
    own_x_.assign(horizon + 1, Scalar{0.0, 0.0});
    // s_cut: beyond it the own-tail bound maxX cw rho^{s+1}/(1-rho) is < 1e-13
    max_abs_x_ = 0.0;
    for (std::uint64_t j = m_; j <= j_max_ && j - m_ < Z.u_coeffs.size(); ++j)
        max_abs_x_ = std::max(max_abs_x_, std::abs(Z.u_coeffs[j - m_]));
    double head = std::log(std::max(max_abs_x_, 1.0) * basis_->cw()) - std::log(1.0 - rho);
    std::size_t cut = 1;
    while (head + static_cast<double>(cut + 1) * logrho > std::log(1e-13)) ++cut;
    s_cut_ = std::min<std::size_t>(cut, basis_->K());
    t_cut_ = s_cut_;
    own_x_.resize(horizon + s_cut_ + 2, Scalar{0.0, 0.0});

    for (std::uint64_t j = m_; j <= j_max_ && j - m_ < Z.u_coeffs.size(); ++j) {
        if (j >= own_x_.size()) break;
        if (Z.family_of_index(j) == op_index_) own_x_[j] = Z.u_coeffs[j - m_];
    }

    // dense double rendering of the basis triangle (underflow flushes to 0,
    // contributions there are below 1e-300); only real tables are supported
    beta_.assign(t_cut_ + 1, {});
    for (std::size_t t = 0; t <= t_cut_; ++t) {
        beta_[t].assign(s_cut_ + 1, 0.0);
        for (std::size_t s = t; s <= s_cut_; ++s) {
            LogMag b = basis_->beta(t, s);
            if (b.is_zero()) continue;
            Scalar z = b.to_scalar();
            if (std::abs(z.imag()) > 1e-9 * std::abs(z))
                throw std::invalid_argument(
                    "AdaptedOrbitEngine: complex basis tables are not supported");
            beta_[t][s] = z.real();
        }
    }

    // per-foreign-basis suffixes and transfer rates. The transfer bound is
    // the multinomial one: (P_k(B))^l = sum_q kappa_q B^q with
    // sum_q |kappa_q| x^q <= (sum_s |lambda_s^(k)| x^s)^l, and
    // ||B_k^q u_j^(i)|| <= rho_i^j x_i^q g_i. Nothing sharper survives the
    // triangle inequality; rates are genuinely exponential in l, so the
    // interleave base must be large enough for rho_i^{m^{n+1}} to win.
    foreign_.resize(Z.bases.size());
    const double ck_sup = bounded_check(basis_->family(), 4096).sup_estimate;
    for (std::size_t i = 0; i < Z.bases.size(); ++i) {
        if (i == op_index_) continue;
        auto& fb = foreign_[i];
        const auto& fam_i = Z.bases[i]->family();
        double x, log_g;
        if (basis_->family().kind == WeightKind::constant &&
            fam_i.kind == WeightKind::constant && fam_i.lambda > 1.0) {
            x = basis_->family().lambda / fam_i.lambda;
            log_g = -std::log(1.0 - std::pow(fam_i.lambda, -space_.p)) / space_.p;
        } else {
            // general fallback: W_k ratios by sup|w(k)|^q, columns by C_w(i)
            x = ck_sup;
            log_g = std::log(Z.bases[i]->cw());
        }
        double a = 0.0;
        for (std::size_t d = 1; d <= basis_->poly().degree(); ++d)
            a += std::abs(basis_->poly().lambda(d)) * std::pow(x, static_cast<double>(d));
        fb.log_rate = std::log(a);
        fb.log_g = log_g;
        fb.log_suffix.assign(j_max_ + 2, kNegInf);
        double log_rho_i = std::log(Z.bases[i]->rho());
        for (std::uint64_t j = j_max_; j >= m_; --j) {
            double cur = fb.log_suffix[j + 1];
            if (Z.family_of_index(j) == i && j - m_ < Z.u_coeffs.size()) {
                double ax = std::abs(Z.u_coeffs[j - m_]);
                if (ax > 0.0)
                    cur = logaddexp(cur, std::log(ax) + static_cast<double>(j) * log_rho_i);
            }
            fb.log_suffix[j] = cur;
            if (j == m_) break;
        }
    }
}

double AdaptedOrbitEngine::noise_bound(std::uint64_t l) const {
    // foreign blocks: sum over foreign bases i of
    //   A_i^l * g_i * sum_{j in basis-i blocks, j >= l} |X_j| rho_i^j
    double q2 = 0.0;
    std::uint64_t at = std::min<std::uint64_t>(std::max(l, m_), j_max_ + 1);
    for (std::size_t i = 0; i < foreign_.size(); ++i) {
        if (i == op_index_ || foreign_[i].log_suffix.empty()) continue;
        double fs = foreign_[i].log_suffix[at];
        if (fs == kNegInf) continue;
        q2 += std::exp(static_cast<double>(l) * foreign_[i].log_rate + foreign_[i].log_g + fs);
    }
    // own-tail beyond s_cut and e-coordinate tail beyond t_cut
    const double rho = basis_->rho();
    double tail_own = std::max(max_abs_x_, 1.0) * basis_->cw() *
                      std::exp(static_cast<double>(s_cut_ + 1) * std::log(rho)) /
                      (1.0 - rho) * 2.0;
    return q2 + tail_own;
}

HitDecision AdaptedOrbitEngine::decide(std::uint64_t l,
                                       const std::vector<Scalar>& target_in_basis,
                                       double eps) const {
    HitDecision out;
    double htail = 0.0;
    for (const auto& h : target_in_basis) htail = std::max(htail, std::abs(h));
    double noise = noise_bound(l) +
                   htail * basis_->cw() *
                       std::exp(static_cast<double>(s_cut_ + 1) * std::log(basis_->rho())) /
                       (1.0 - basis_->rho());
    out.noise = noise;
    if (noise >= eps) {
        // no hit can be certified here; distance left unevaluated
        out.ambiguous = true;
        return out;
    }
    const double p = space_.p;
    const double miss_budget = std::pow(eps + noise, p);
    double partial = 0.0;
    for (std::size_t t = 0; t <= t_cut_; ++t) {
        Scalar a{0.0, 0.0};
        const auto& row = beta_[t];
        for (std::size_t s = t; s <= s_cut_; ++s) {
            double b = row[s];
            if (b == 0.0) continue;
            Scalar c = s + l < own_x_.size() ? own_x_[s + l] : Scalar{0.0, 0.0};
            if (s < target_in_basis.size()) c -= target_in_basis[s];
            a += c * b;
        }
        partial += std::pow(std::abs(a), p);
        if (partial > miss_budget) {
            out.hit = false;
            out.distance = std::pow(partial, 1.0 / p);
            return out;
        }
    }
    out.distance = std::pow(partial, 1.0 / p);
    out.hit = out.distance + noise < eps;
    out.ambiguous = !out.hit && out.distance - noise <= eps;
    return out;
}

std::vector<std::uint64_t> AdaptedOrbitEngine::hit_times(const SparseVec& target, double eps,
                                                         std::uint64_t horizon,
                                                         double* max_window_noise,
                                                         std::uint64_t* ambiguous) const {
    auto tilde = expand_in_basis(target, *basis_);
    // scored windows for noise accounting: n in R_{op+1} within the horizon
    std::vector<std::pair<std::uint64_t, std::uint64_t>> windows;
    for (std::uint64_t n = 1; n <= 40; ++n) {
        std::uint64_t pw = 1;
        bool overflow = false;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (pw > (std::uint64_t{1} << 62) / m_) {
                overflow = true;
                break;
            }
            pw *= m_;
        }
        if (overflow || pw > horizon) break;
        if (psi(n) != static_cast<int>(op_index_) + 1) continue;
        windows.push_back({pw, std::min<std::uint64_t>(horizon, 2 * pw)});
    }
    std::vector<std::uint64_t> hits;
    double worst_noise = 0.0;
    std::uint64_t ambig = 0;
    for (std::uint64_t l = 1; l <= horizon; ++l) {
        auto d = decide(l, tilde, eps);
        if (d.hit) hits.push_back(l);
        if (d.ambiguous && d.noise < eps) ++ambig;
        for (const auto& [lo, hi] : windows)
            if (l >= lo && l <= hi) worst_noise = std::max(worst_noise, d.noise);
    }
    if (max_window_noise) *max_window_noise = worst_noise;
    if (ambiguous) *ambiguous = ambig;
    return hits;
}

std::uint64_t default_j_max(std::uint64_t m, std::uint64_t gamma, std::uint64_t horizon) {
    std::uint64_t pw = m, nstar = 1;
    while (pw <= horizon / m) {
        pw *= m;
        ++nstar;
    }
    // gamma * m^{nstar+1}
    if (pw > (std::uint64_t{1} << 40) / (m * gamma))
        throw std::overflow_error("default_j_max: horizon too large");
    return gamma * pw * m;
}

std::vector<HitRecord> run_experiment(const Experiment& exp) {
    if (exp.operators.empty() || exp.targets.empty() || exp.epsilons.empty() ||
        exp.seeds.empty())
        return {};
    for (double e : exp.epsilons)
        if (!(e > 0.0)) throw std::invalid_argument("run_experiment: eps > 0");

    RandomVectorSpec spec = exp.vector_spec;
    if (spec.j_max == 0) {
        if (spec.construction == Construction::single)
            spec.j_max = exp.horizon + 256;
        else
            spec.j_max = default_j_max(spec.m, spec.gamma, exp.horizon);
    }
    if (exp.burn_in != 0 && exp.burn_in > exp.horizon / 10)
        throw std::invalid_argument("run_experiment: burn_in must be <= horizon/10");
    std::uint64_t burn =
        exp.burn_in ? exp.burn_in
                    : std::max<std::uint64_t>(
                          1, std::min(std::max<std::uint64_t>(100, exp.horizon / 100),
                                      exp.horizon / 10));

    auto build_vector = [&](std::uint64_t seed) {
        RandomVectorSpec s = spec;
        s.master_seed = mix_seed(spec.master_seed, seed);
        switch (spec.construction) {
            case Construction::single:
                return build_Z_single(exp.vec_families.at(0), s, exp.space);
            case Construction::common_weights:
                return build_Z_common_weights(exp.vec_families, s, exp.space);
            case Construction::common_poly:
                return build_Z_common_poly(exp.vec_bases, s, exp.space);
        }
        throw std::logic_error("run_experiment: bad construction");
    };

    // truncation-tail gate against the smallest eps
    double min_eps = *std::min_element(exp.epsilons.begin(), exp.epsilons.end());
    {
        auto probe = build_vector(exp.seeds.front());
        if (!exp.force && probe.tail.bound_expectation > min_eps / 4.0)
            throw std::invalid_argument(
                "run_experiment: truncation tail bound " +
                std::to_string(probe.tail.bound_expectation) + " exceeds eps/4 = " +
                std::to_string(min_eps / 4.0) + "; raise J_max (or pass force)");
    }

    const std::size_t n_ops = exp.operators.size(), n_tg = exp.targets.size(),
                      n_eps = exp.epsilons.size(), n_seed = exp.seeds.size();
    std::vector<HitRecord> records(n_ops * n_tg * n_eps * n_seed);
    auto slot = [&](std::size_t o, std::size_t t, std::size_t e, std::size_t s) {
        return ((o * n_tg + t) * n_eps + e) * n_seed + s;
    };

    // work unit = (seed, operator); each unit fills its (target, eps) cells
    std::size_t n_units = n_seed * n_ops;
    auto run_unit = [&](std::size_t unit) {
        std::size_t si = unit / n_ops, oi = unit % n_ops;
        std::uint64_t seed = exp.seeds[si];
        auto Z = build_vector(seed);
        const auto& op = exp.operators[oi];

        if (spec.construction == Construction::common_poly) {
            if (!op.poly)
                throw std::invalid_argument("run_experiment: common_poly needs polynomial ops");
            AdaptedOrbitEngine engine(oi, Z, exp.space, exp.horizon);
            for (std::size_t ti = 0; ti < n_tg; ++ti) {
                for (std::size_t ei = 0; ei < n_eps; ++ei) {
                    HitRecord rec;
                    rec.op_index = oi;
                    rec.target_index = ti;
                    rec.eps = exp.epsilons[ei];
                    rec.seed = seed;
                    double noise = 0.0;
                    std::uint64_t ambig = 0;
                    rec.hits = engine.hit_times(exp.targets[ti], exp.epsilons[ei], exp.horizon,
                                                &noise, &ambig);
                    rec.noise_bound = noise;
                    rec.ambiguous = ambig;
                    if (exp.distance_traces) {
                        auto tilde = expand_in_basis(exp.targets[ti], engine.basis());
                        for (auto n : geometric_checkpoints(exp.horizon, 256)) {
                            auto d = engine.decide(n, tilde, 1e300);
                            rec.distance_trace.push_back({n, d.distance});
                        }
                    }
                    rec.density = density_estimate(rec.hits, exp.horizon, burn);
                    rec.coverage = window_coverage(rec.hits, spec.m, spec.gamma,
                                                   static_cast<int>(oi) + 1, exp.coverage_n_lo,
                                                   exp.coverage_n_hi);
                    records[slot(oi, ti, ei, si)] = std::move(rec);
                }
            }
        } else {
            if (op.poly)
                throw std::invalid_argument(
                    "run_experiment: polynomial operators need a common_poly vector");
            WeightOrbitEngine engine(op.family, Z, exp.space, exp.horizon);
            for (std::size_t ti = 0; ti < n_tg; ++ti) {
                for (std::size_t ei = 0; ei < n_eps; ++ei) {
                    HitRecord rec;
                    rec.op_index = oi;
                    rec.target_index = ti;
                    rec.eps = exp.epsilons[ei];
                    rec.seed = seed;
                    rec.hits = engine.hit_times(exp.targets[ti], exp.epsilons[ei], exp.horizon);
                    if (exp.distance_traces)
                        for (auto n : geometric_checkpoints(exp.horizon, 256))
                            rec.distance_trace.push_back(
                                {n, engine.distance(n, exp.targets[ti])});
                    rec.density = density_estimate(rec.hits, exp.horizon, burn);
                    rec.coverage = window_coverage(rec.hits, spec.m, spec.gamma,
                                                   static_cast<int>(oi) + 1, exp.coverage_n_lo,
                                                   exp.coverage_n_hi);
                    records[slot(oi, ti, ei, si)] = std::move(rec);
                }
            }
        }
    };

    int par = std::max(1, exp.parallelism);
    if (par == 1) {
        for (std::size_t u = 0; u < n_units; ++u) run_unit(u);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex err_mu;
        for (int t = 0; t < par; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t u = static_cast<std::size_t>(t); u < n_units;
                     u += static_cast<std::size_t>(par)) {
                    try {
                        run_unit(u);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!first_error) first_error = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return records;
}

}  // namespace fhsim
