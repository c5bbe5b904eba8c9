// acceptance.cpp — the acceptance suite. Each criterion runs standalone
// (--criterion N) and prints exactly one PASS/FAIL line with its measured
// quantities; the process exit code is 0 iff the selected criteria passed.
//
// Thresholds are fixed here, in code. Wall-clock budgets are part of the
// criteria and are enforced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "fhsim/adapted_basis.hpp"
#include "fhsim/arith.hpp"
#include "fhsim/cli.hpp"
#include "fhsim/criteria.hpp"
#include "fhsim/randvec.hpp"
#include "fhsim/simulate.hpp"

using namespace fhsim;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. adapted-basis correctness at K = 60 for the factored operators
// ---------------------------------------------------------------------------
Outcome criterion1() {
    Outcome out;
    out.pass = true;
    std::ostringstream detail;
    const double rho_policy = 10.0 / 11.0;
    struct Cfg {
        PolynomialSpec poly;
        double lambda;
        const char* name;
    };
    std::vector<Cfg> cfgs{
        {PolynomialSpec({{2.0, 0.0}, {-24.0 / 25.0, 0.0}}), 2.5, "P1@5/2"},
        {PolynomialSpec({{4.0 / 3.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-16.0 / 81.0, 0.0}}), 1.5,
         "P2@3/2"}};
    for (double p : {2.0, 1.0}) {
        SpaceConfig space(p);
        for (const auto& c : cfgs) {
            auto basis = build_adapted_basis(c.poly, WeightFamily::constant(c.lambda), 60, space);
            auto rep = verify_basis(basis, 1e-9);
            double worst_norm_excess = 0.0;
            for (std::uint64_t k = 1; k <= 60; ++k) {
                double bound = std::log(basis.cw()) + static_cast<double>(k) * std::log(rho_policy);
                worst_norm_excess = std::max(worst_norm_excess,
                                             std::exp(basis.log_norm(k) - bound));
            }
            bool ok = rep.all_pass && rep.worst_residual <= 1e-9 && worst_norm_excess <= 1.0;
            out.pass = out.pass && ok;
            detail << c.name << " p=" << p << " residual=" << rep.worst_residual
                   << " norm/(Cw rho^k) max=" << worst_norm_excess << "; ";
        }
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 2. one-pass shift power vs n-fold single-shift oracle
// ---------------------------------------------------------------------------
Outcome criterion2() {
    Outcome out;
    SpaceConfig l2(2.0);
    std::vector<WeightFamily> fams{WeightFamily::constant(2.0), WeightFamily::power(2.0),
                                   WeightFamily::ratio_power(1.0, SpaceConfig(1.0)),
                                   WeightFamily::exp_log_power(1.0)};
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (const auto& f : fams) {
        std::vector<Scalar> dense(200);
        for (auto& c : dense) c = Scalar{g(rng), g(rng)};
        std::vector<SparseVec::Entry> entries;
        for (std::size_t j = 0; j < dense.size(); ++j) entries.push_back({j, dense[j]});
        auto v = SparseVec::from_entries(entries);
        for (std::uint64_t n = 1; n <= 50; ++n) {
            auto fast = apply_shift_power(ShiftOperator{f}, n, v, l2);
            // oracle: n repeated single shifts
            std::vector<Scalar> slow = dense;
            for (std::uint64_t s = 0; s < n; ++s) {
                std::vector<Scalar> next(slow.size(), Scalar{0.0, 0.0});
                for (std::size_t j = 1; j < slow.size(); ++j)
                    next[j - 1] = slow[j] * log_weight(f, j).to_scalar();
                slow = std::move(next);
            }
            double scale = 0.0, err = 0.0;
            for (std::size_t j = 0; j < slow.size(); ++j) scale = std::max(scale, std::abs(slow[j]));
            for (std::size_t j = 0; j < slow.size(); ++j)
                err = std::max(err, std::abs(fast.at(j) - slow[j]));
            worst = std::max(worst, err / std::max(scale, 1e-300));
        }
    }
    out.pass = worst <= 1e-12;
    out.detail = "max relative error " + std::to_string(worst);
    return out;
}

// ---------------------------------------------------------------------------
// 3. combinatorics exactness: R_k partition, densities, block_index
// ---------------------------------------------------------------------------
Outcome criterion3() {
    Outcome out;
    const std::uint64_t N = 1000000;
    std::map<int, std::uint64_t> counts;
    for (std::uint64_t n = 1; n <= N; ++n) ++counts[psi(n)];
    std::uint64_t total = 0;
    for (auto [k, c] : counts) total += c;
    bool partition_ok = total == N;
    bool density_ok = true;
    for (int k = 1; k <= 6; ++k) {
        double dens = static_cast<double>(counts[k]) / static_cast<double>(N);
        density_ok = density_ok && std::abs(dens - std::pow(2.0, -k)) <= 1e-3;
    }
    bool block_ok = true;
    for (std::uint64_t m : {2ull, 3ull, 5ull, 11ull}) {
        auto pw = power_table(m, 4 * N);
        for (std::uint64_t j = m; j <= N; ++j) {
            auto b = block_index(j, m);
            if (!(b.n + 1 < pw.size() && pw[b.n] <= j && j < pw[b.n + 1]) || b.k != psi(b.n)) {
                block_ok = false;
                break;
            }
        }
    }
    out.pass = partition_ok && density_ok && block_ok;
    out.detail = std::string("partition=") + (partition_ok ? "exact" : "BROKEN") +
                 " densities(k<=6)=" + (density_ok ? "within 1e-3" : "off") +
                 " block_index=" + (block_ok ? "exhaustive match" : "mismatch");
    return out;
}

// ---------------------------------------------------------------------------
// 4. window-union density at finite scale
// ---------------------------------------------------------------------------
Outcome criterion4() {
    Outcome out;
    const std::uint64_t horizon = 531441;  // 3^12
    auto members = r_k_window_union(1, 3, 2, horizon);
    auto d = density_estimate(members, horizon, default_burn_in(horizon));
    out.pass = d.running_min_ratio > 0.01;
    out.detail = "running_min_ratio=" + std::to_string(d.running_min_ratio) +
                 " final_ratio=" + std::to_string(d.final_ratio);
    return out;
}

// ---------------------------------------------------------------------------
// 5. single-operator FHC Monte Carlo (2B on l2)
// ---------------------------------------------------------------------------
Outcome criterion5() {
    Outcome out;
    Experiment exp;
    exp.operators.push_back({WeightFamily::constant(2.0), {}});
    exp.vector_spec.construction = Construction::single;
    exp.vector_spec.master_seed = 1;
    exp.vec_families = {WeightFamily::constant(2.0)};
    exp.targets = {SparseVec{}, SparseVec::unit(0),
                   SparseVec::from_entries({{0, {1.0, 0.0}}, {1, {1.0, 0.0}}})};
    exp.epsilons = {0.5};
    exp.horizon = 200000;
    for (std::uint64_t s = 1; s <= 20; ++s) exp.seeds.push_back(s);
    exp.space = SpaceConfig(2.0);
    exp.parallelism = 2;
    auto records = run_experiment(exp);

    const char* names[] = {"0", "e0", "e0+e1"};
    out.pass = true;
    std::ostringstream detail;
    for (std::size_t t = 0; t < 3; ++t) {
        int good = 0;
        double lo = 1.0, hi = 0.0;
        for (const auto& r : records) {
            if (r.target_index != t) continue;
            if (r.density.final_ratio > 1e-3) ++good;
            lo = std::min(lo, r.density.final_ratio);
            hi = std::max(hi, r.density.final_ratio);
        }
        bool ok = good >= 18;
        out.pass = out.pass && ok;
        detail << names[t] << ": " << good << "/20 seeds >1e-3 (ratios " << lo << ".." << hi
               << "); ";
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 6. common FHC Monte Carlo (constant weights lambda in {3/2, 2, 3}, m = 7)
// ---------------------------------------------------------------------------
Outcome criterion6() {
    Outcome out;
    Experiment exp;
    std::vector<double> lams{1.5, 2.0, 3.0};
    for (double l : lams) exp.operators.push_back({WeightFamily::constant(l), {}});
    exp.vector_spec.construction = Construction::common_weights;
    exp.vector_spec.master_seed = 1;
    exp.vector_spec.m = 7;
    exp.vector_spec.gamma = 2;
    for (double l : lams) exp.vec_families.push_back(WeightFamily::constant(l));
    exp.targets = {SparseVec::unit(0)};
    exp.epsilons = {0.7};
    exp.horizon = 4802;  // gamma * m^4, the last window end in n_range [1,4]
    for (std::uint64_t s = 1; s <= 10; ++s) exp.seeds.push_back(s);
    exp.space = SpaceConfig(2.0);
    exp.parallelism = 2;
    exp.coverage_n_lo = 1;
    exp.coverage_n_hi = 4;
    auto records = run_experiment(exp);

    out.pass = true;
    std::ostringstream detail;
    for (std::size_t o = 0; o < lams.size(); ++o) {
        double avg = 0.0;
        int n = 0;
        for (const auto& r : records)
            if (r.op_index == o) {
                avg += r.coverage;
                ++n;
            }
        avg /= std::max(1, n);
        bool ok = avg >= 0.75;
        out.pass = out.pass && ok;
        detail << "lambda=" << lams[o] << " avg coverage=" << avg << "; ";
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 7. polynomial common FHC (factored operators 5B-6B^2 and 2B-B^4)
// ---------------------------------------------------------------------------
Outcome criterion7() {
    Outcome out;
    SpaceConfig l2(2.0);
    PolynomialSpec P1({{2.0, 0.0}, {-24.0 / 25.0, 0.0}});
    PolynomialSpec P2({{4.0 / 3.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-16.0 / 81.0, 0.0}});
    auto F1 = WeightFamily::constant(2.5), F2 = WeightFamily::constant(1.5);
    // smallest base whose cross-block transfer bound certifies every scored
    // window: the 5B-6B^2 orbit amplifies foreign-basis content by up to
    // A = 2(5/3) + (24/25)(5/3)^2 = 6 per step, so m must satisfy
    // m log(1/rho_2) > gamma log A with margin (rho_2 = 81/92): m = 31
    std::uint64_t m = 31;

    Experiment exp;
    exp.operators.push_back({F1, P1});
    exp.operators.push_back({F2, P2});
    exp.vector_spec.construction = Construction::common_poly;
    exp.vector_spec.master_seed = 1;
    exp.vector_spec.m = m;
    exp.vector_spec.gamma = 2;
    exp.vec_families = {F1, F2};
    exp.vec_bases = {std::make_shared<AdaptedBasis>(P1, F1, 1200, l2),
                     std::make_shared<AdaptedBasis>(P2, F2, 1200, l2)};
    exp.targets = {SparseVec::unit(0)};
    exp.epsilons = {0.7};
    exp.horizon = 2 * m * m * m;  // covers the last scored window [m^3, 2 m^3]
    for (std::uint64_t s = 1; s <= 10; ++s) exp.seeds.push_back(s);
    exp.space = l2;
    exp.parallelism = 2;
    exp.coverage_n_lo = 1;
    exp.coverage_n_hi = 4;
    auto records = run_experiment(exp);

    out.pass = true;
    std::ostringstream detail;
    detail << "m=" << m << "; ";
    const char* names[] = {"5B-6B^2", "2B-B^4"};
    for (std::size_t o = 0; o < 2; ++o) {
        double avg = 0.0, worst_noise = 0.0;
        int n = 0;
        for (const auto& r : records)
            if (r.op_index == o) {
                avg += r.coverage;
                worst_noise = std::max(worst_noise, r.noise_bound);
                ++n;
            }
        avg /= std::max(1, n);
        bool ok = avg >= 0.75 && worst_noise < 0.7 / 4.0;
        out.pass = out.pass && ok;
        detail << names[o] << " avg coverage=" << avg << " window noise<=" << worst_noise
               << "; ";
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 8. non-existence evidence for ratio_power(1) vs constant(2) at p = 1
// ---------------------------------------------------------------------------
Outcome criterion8() {
    Outcome out;
    SpaceConfig l1(1.0);
    auto w = search_divergence_witness(WeightFamily::ratio_power(1.0, l1),
                                       WeightFamily::constant(2.0), l1);
    if (!w) {
        out.detail = "no witness found";
        return out;
    }
    // the trace dips once between l = 1 and l = 2 (n_l = floor(theta m_l)
    // at m_l = 2); strict monotonicity is required from l = 2 on
    bool increasing = true;
    for (std::size_t i = 2; i < w->log_terms.size(); ++i)
        if (w->log_terms[i] <= w->log_terms[i - 1]) increasing = false;
    out.pass = increasing && w->log_terms.size() >= 30 && w->log_terms.back() >= 14.0;
    std::ostringstream detail;
    detail << "witness theta=" << w->theta << " base=" << w->base
           << " final log-term=" << w->log_terms.back()
           << " increasing(l>=2)=" << (increasing ? "yes" : "no");
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 9. general criterion on the e^{log^2 n} vs n^2 pair
// ---------------------------------------------------------------------------
Outcome criterion9() {
    Outcome out;
    SpaceConfig l1(1.0);
    std::vector<WeightFamily> fams{WeightFamily::exp_log_power(1.0), WeightFamily::power(2.0)};
    GeneralCriterionConfig gc;
    // second-sum terms decay like j^{-(beta + 2 log(1 - gamma/m))}: the base
    // must satisfy m > gamma/(1 - e^{-(beta-1)/2}) ~ 5.08
    gc.m = 6;
    gc.gamma = 2;
    gc.alpha = AlphaFamily::log_power(1.5);
    auto v = check_general(fams, gc, l1, 6, 32);
    bool decreasing = true;
    for (const auto& fam : v.evidence["families"]) {
        const auto& rows = fam["rows"];
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i]["sup_log_Rn"].get<double>() >= rows[i - 1]["sup_log_Rn"].get<double>())
                decreasing = false;
    }
    auto wA = search_divergence_witness(fams[0], fams[1], l1);
    auto wB = search_divergence_witness(fams[1], fams[0], l1);
    out.pass = v.status == "converges_numeric" && decreasing && !wA && !wB;
    out.detail = "status=" + v.status + " trace decreasing n in [2,6]=" +
                 (decreasing ? "yes" : "no") + " witness=" +
                 ((wA || wB) ? "found (unexpected)" : "none");
    return out;
}

// ---------------------------------------------------------------------------
// 10. CLI determinism at parallelism 1 and 8
// ---------------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

std::string strip_first_line(const std::string& s) {
    auto pos = s.find('\n');
    return pos == std::string::npos ? std::string{} : s.substr(pos + 1);
}

Outcome criterion10() {
    namespace fs = std::filesystem;
    Outcome out;
    fs::path tmp = fs::temp_directory_path() / "fhsim_acceptance10";
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    auto run = [&](const std::string& sub, const std::string& cfg_path,
                   const std::string& outdir) {
        std::vector<const char*> argv{"fhsim", sub.c_str(), cfg_path.c_str(), "--out",
                                      outdir.c_str()};
        return cli::run_cli(static_cast<int>(argv.size()), argv.data());
    };

    bool ok = true;
    std::ostringstream detail;
    std::string rows_par1;
    for (int par : {1, 8}) {
        nlohmann::json cfg = {
            {"space", {{"p", 2.0}}},
            {"families", {{{"kind", "constant"}, {"lambda", 2.0}}}},
            {"vector", {{"construction", "single"}, {"master_seed", 7}, {"j_max", 12000}}},
            {"experiment",
             {{"targets", {nlohmann::json::array(), {{0, 1.0, 0.0}}}},
              {"epsilons", {0.5}},
              {"horizon", 10000},
              {"seeds", {1, 2, 3, 4}},
              {"parallelism", par}}},
            {"output", {{"dir", (tmp / ("out" + std::to_string(par))).string()}}}};
        std::string cfg_path = (tmp / ("cfg" + std::to_string(par) + ".json")).string();
        std::ofstream(cfg_path) << cfg.dump(2);
        std::string outdir = (tmp / ("out" + std::to_string(par))).string();

        std::string vec1, csv1, json1;
        for (int rep = 0; rep < 2; ++rep) {
            if (run("build", cfg_path, outdir) != 0 || run("simulate", cfg_path, outdir) != 0) {
                out.detail = "CLI run failed";
                return out;
            }
            std::string vec = slurp(outdir + "/vector.txt");
            std::string csv = strip_first_line(slurp(outdir + "/results.csv"));
            std::string jsn =
                cli::strip_timestamps(nlohmann::json::parse(slurp(outdir + "/results.json")))
                    .dump();
            if (rep == 0) {
                vec1 = vec;
                csv1 = csv;
                json1 = jsn;
            } else {
                bool same = vec == vec1 && csv == csv1 && jsn == json1;
                ok = ok && same;
                detail << "par=" << par << (same ? " byte-identical" : " DIFFERS") << "; ";
            }
        }
        if (par == 1)
            rows_par1 = csv1;
        else {
            bool cross = csv1 == rows_par1;
            ok = ok && cross;
            detail << "rows identical across degrees=" << (cross ? "yes" : "NO") << "; ";
        }
    }
    fs::remove_all(tmp);
    out.pass = ok;
    out.detail = detail.str();
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "adapted-basis correctness (5B-6B^2, 2B-B^4; K=60)", 5.0, criterion1},
    {2, "shift oracle equivalence", 5.0, criterion2},
    {3, "combinatorics exactness", 30.0, criterion3},
    {4, "window-union density at finite scale", 10.0, criterion4},
    {5, "single-operator FHC Monte Carlo (2B)", 180.0, criterion5},
    {6, "common FHC Monte Carlo (lambda 3/2,2,3, m=7)", 300.0, criterion6},
    {7, "polynomial common FHC (5B-6B^2, 2B-B^4)", 300.0, criterion7},
    {8, "non-existence divergence witness", 1.0, criterion8},
    {9, "general criterion, e^{log^2 n} vs n^2 pair", 120.0, criterion9},
    {10, "build/simulate determinism at parallelism 1 and 8", 600.0, criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    bool all_pass = true;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double dt = seconds_since(t0);
        bool in_budget = dt < c.budget_s;
        bool pass = o.pass && in_budget;
        std::printf("ACCEPTANCE %2d %-52s %s  [%.1fs%s]  %s\n", c.id, c.name,
                    pass ? "PASS" : "FAIL", dt, in_budget ? "" : " OVER BUDGET",
                    o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
