#include "fhsim/adapted_basis.hpp"

#include <cmath>
#include <cstdio>

namespace fhsim {

namespace {

double log_norm_of(const std::vector<LogMag>& coeffs, double p) {
    // (1/p) * log sum |c|^p, scaled against the largest term
    double m = kNegInf;
    for (const auto& c : coeffs) m = std::max(m, c.log_abs);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (const auto& c : coeffs)
        if (!c.is_zero()) s += std::exp(p * (c.log_abs - m));
    return m + std::log(s) / p;
}

}  // namespace

AdaptedBasis::AdaptedBasis(PolynomialSpec poly, WeightFamily family, std::size_t K,
                           const SpaceConfig& space, std::optional<double> cw_override)
    : poly_(std::move(poly)), family_(std::move(family)), space_(space) {
    auto adm = admissibility(poly_);
    if (!adm.admissible)
        throw std::invalid_argument("AdaptedBasis: polynomial is not admissible");
    rho_ = 1.0 / adm.margin;
    if (cw_override) {
        cw_ = *cw_override;
    } else {
        auto verdict = fhc_constant(family_, space_);
        if (!verdict.value)
            throw std::invalid_argument(
                "AdaptedBasis: weight family is not FHC (no C_w); pass cw_override to proceed");
        cw_ = *verdict.value;
    }
    cols_.emplace_back();  // k = 0: u_0 = e_0, no beta entries
    extend(K);
}

void AdaptedBasis::extend(std::size_t K_new) {
    while (cols_.size() <= K_new) solve_column(cols_.size());
}

void AdaptedBasis::solve_column(std::size_t k) {
    const std::size_t d = poly_.degree();
    std::vector<LogMag> col(k, LogMag::zero());  // beta_{1..k, k}
    // descending t: each step determines beta_{t+1,k} from already-solved
    // higher entries of this column and beta_{t,k-1}
    std::vector<LogMag> terms;
    for (std::size_t t = k; t-- > 0;) {
        terms.clear();
        // beta_{t,k-1}: one() when t==0 and k-1==0, else from the previous column
        if (k - 1 == 0) {
            if (t == 0) terms.push_back(LogMag::one());
        } else if (t >= 1 && t <= k - 1) {
            terms.push_back(cols_[k - 1][t - 1]);
        }
        for (std::size_t i = 2; i <= d && t + i <= k; ++i) {
            const LogMag& b = col[t + i - 1];
            if (b.is_zero()) continue;
            LogMag term = lm_mul(b, log_prod_range(family_, t + 1, t + i));
            term = lm_scale(term, -poly_.lambda(i));
            terms.push_back(term);
        }
        LogMag num = lm_sum(terms);
        LogMag den = lm_scale(log_weight(family_, t + 1), poly_.lambda(1));
        if (den.is_zero()) throw std::domain_error("AdaptedBasis: zero weight encountered");
        col[t] = lm_div(num, den);
    }
    if (k >= 1 && col[k - 1].is_zero())
        throw std::logic_error("AdaptedBasis: diagonal entry vanished");
    cols_.push_back(std::move(col));
}

LogMag AdaptedBasis::beta(std::uint64_t l, std::uint64_t k) const {
    if (k == 0) return l == 0 ? LogMag::one() : LogMag::zero();
    if (l == 0 || l > k || k > K()) return LogMag::zero();
    return cols_[k][l - 1];
}

std::vector<LogMag> AdaptedBasis::u_log(std::uint64_t k) const {
    if (k > K()) throw std::out_of_range("AdaptedBasis::u_log: k > K");
    std::vector<LogMag> out(k + 1, LogMag::zero());
    if (k == 0) {
        out[0] = LogMag::one();
        return out;
    }
    for (std::uint64_t l = 1; l <= k; ++l) out[l] = cols_[k][l - 1];
    return out;
}

SparseVec AdaptedBasis::u(std::uint64_t k) const {
    auto lc = u_log(k);
    std::vector<SparseVec::Entry> entries;
    for (std::uint64_t l = 0; l < lc.size(); ++l) {
        if (lc[l].is_zero()) continue;
        if (lc[l].log_abs > 700.0 || lc[l].log_abs < -700.0)
            throw std::domain_error("AdaptedBasis::u: coefficient outside double range");
        entries.push_back({l, lc[l].to_scalar()});
    }
    return SparseVec::from_entries(std::move(entries));
}

double AdaptedBasis::log_norm(std::uint64_t k) const { return log_norm_of(u_log(k), space_.p); }

std::string AdaptedBasis::export_csv() const {
    std::string out = "k,l,beta_log_abs,beta_phase\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, "0,0,%.17g,%.17g\n", 0.0, 0.0);
    out += buf;
    for (std::uint64_t k = 1; k <= K(); ++k) {
        for (std::uint64_t l = 1; l <= k; ++l) {
            LogMag b = beta(l, k);
            std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g,%.17g\n",
                          static_cast<unsigned long long>(k), static_cast<unsigned long long>(l),
                          b.log_abs, b.phase);
            out += buf;
        }
    }
    return out;
}

AdaptedBasis build_adapted_basis(const PolynomialSpec& P, const WeightFamily& family,
                                 std::size_t K, const SpaceConfig& space,
                                 std::optional<double> cw_override) {
    return AdaptedBasis(P, family, K, space, cw_override);
}

BasisVerifyReport verify_basis(const AdaptedBasis& basis, double tol) {
    BasisVerifyReport rep;
    rep.all_pass = true;
    const double p = basis.space().p;
    const double logrho = std::log(basis.rho());
    const double logcw = std::log(basis.cw());
    ShiftOperator op{basis.family()};

    for (std::uint64_t k = 1; k <= basis.K(); ++k) {
        BasisVerifyRow row;
        row.k = k;

        // (a) residual through the independent operator-application path
        auto uk = basis.u_log(k);
        auto forward = apply_polynomial_log(basis.poly(), op, uk);
        auto prev = basis.u_log(k - 1);
        std::size_t len = std::max(forward.size(), prev.size());
        std::vector<LogMag> diff(len);
        for (std::size_t t = 0; t < len; ++t) {
            LogMag a = t < forward.size() ? forward[t] : LogMag::zero();
            LogMag b = t < prev.size() ? prev[t] : LogMag::zero();
            diff[t] = lm_sum({a, LogMag{b.log_abs, b.phase + std::acos(-1.0)}});
        }
        double log_res = log_norm_of(diff, p);
        double log_prev_norm = log_norm_of(prev, p);
        double denom = std::max(0.0, log_prev_norm);  // max(1, ||u_{k-1}||) in logs
        row.residual_rel = log_res == kNegInf ? 0.0 : std::exp(log_res - denom);

        // (b) beta bound
        double worst = kNegInf;
        for (std::uint64_t l = 1; l <= k; ++l) {
            LogMag b = basis.beta(l, k);
            if (b.is_zero()) continue;
            double excess =
                b.log_abs + logW(basis.family(), l).log_abs - static_cast<double>(k) * logrho;
            worst = std::max(worst, excess);
        }
        row.beta_excess = worst == kNegInf ? 0.0 : std::exp(worst);

        // (c) norm bound
        double log_u = basis.log_norm(k);
        row.norm_excess = std::exp(log_u - (logcw + static_cast<double>(k) * logrho));

        row.pass = row.residual_rel <= tol && row.beta_excess <= 1.0 + tol &&
                   row.norm_excess <= 1.0 + tol;
        rep.worst_residual = std::max(rep.worst_residual, row.residual_rel);
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<Scalar> expand_in_basis(const SparseVec& h, const AdaptedBasis& basis) {
    if (h.empty()) return {};
    std::uint64_t d = h.degree();
    if (d > basis.K()) throw std::out_of_range("expand_in_basis: deg(h) > K");

    std::vector<Scalar> residual(d + 1, Scalar{0.0, 0.0});
    for (const auto& e : h.entries()) residual[e.index] = e.value;
    std::vector<Scalar> tilde(d + 1, Scalar{0.0, 0.0});
    for (std::uint64_t k = d + 1; k-- > 0;) {
        LogMag diag = basis.beta(k, k);
        if (diag.log_abs < -700.0 || diag.log_abs > 700.0)
            throw std::domain_error("expand_in_basis: diagonal outside double range");
        Scalar hk = residual[k] / diag.to_scalar();
        tilde[k] = hk;
        if (hk == Scalar{0.0, 0.0}) continue;
        auto uk = basis.u_log(k);
        for (std::uint64_t l = 0; l <= k; ++l)
            if (!uk[l].is_zero()) residual[l] -= hk * uk[l].to_scalar();
    }
    return tilde;
}

SparseVec truncated_apply_adapted(const std::vector<Scalar>& X, std::uint64_t n,
                                  const AdaptedBasis& basis) {
    if (X.size() < 2 * n + 1)
        throw std::out_of_range("truncated_apply_adapted: need coefficients up to index 2n");
    if (n > basis.K()) throw std::out_of_range("truncated_apply_adapted: basis shorter than n");
    SparseVec acc;
    for (std::uint64_t k = 0; k <= n; ++k) acc = vec_axpy(X[k + n], basis.u(k), acc);
    return acc;
}

}  // namespace fhsim
