#include "fhsim/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"

namespace fhsim::cli {

namespace fs = std::filesystem;

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
    }
}

double get_num(const json& j, const std::string& where, const std::string& key,
               std::optional<double> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        throw std::invalid_argument(where + ": missing key '" + key + "'");
    }
    if (!j[key].is_number()) throw std::invalid_argument(where + "." + key + ": not a number");
    return j[key].get<double>();
}

std::uint64_t get_u64(const json& j, const std::string& where, const std::string& key,
                      std::optional<std::uint64_t> def = {}) {
    if (!j.contains(key)) {
        if (def) return *def;
        throw std::invalid_argument(where + ": missing key '" + key + "'");
    }
    if (!j[key].is_number_integer() && !j[key].is_number_unsigned())
        throw std::invalid_argument(where + "." + key + ": not an integer");
    return j[key].get<std::uint64_t>();
}

Scalar scalar_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(where + ": scalar must be [re, im]");
    return Scalar{j[0].get<double>(), j[1].get<double>()};
}

SparseVec target_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": target must be an array");
    std::vector<SparseVec::Entry> entries;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument(where + ": entry must be [index, re, im]");
        entries.push_back({e[0].get<std::uint64_t>(),
                           Scalar{e[1].get<double>(), e[2].get<double>()}});
    }
    return SparseVec::from_entries(std::move(entries));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << content;
}

}  // namespace

std::string timestamp_now() {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json strip_timestamps(json j) {
    if (j.is_object()) {
        j.erase("timestamp");
        for (auto& [k, v] : j.items()) v = strip_timestamps(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_timestamps(v);
    }
    return j;
}

json family_to_json(const WeightFamily& f) {
    json j;
    j["kind"] = f.kind_name();
    switch (f.kind) {
        case WeightKind::constant: j["lambda"] = f.lambda; break;
        case WeightKind::power: j["beta"] = f.beta; break;
        case WeightKind::ratio_power: j["epsilon"] = f.eps; break;
        case WeightKind::exp_log_power: j["epsilon"] = f.eps; break;
        case WeightKind::explicit_list: {
            json arr = json::array();
            for (const auto& w : f.weights) arr.push_back({w.real(), w.imag()});
            j["weights"] = arr;
            break;
        }
        default: throw std::invalid_argument("family_to_json: custom families not serializable");
    }
    return j;
}

WeightFamily family_from_json(const json& j, const SpaceConfig& space) {
    require_keys(j, "family", {"kind", "lambda", "beta", "epsilon", "weights"});
    std::string kind = j.value("kind", "");
    if (kind == "constant") return WeightFamily::constant(get_num(j, "family", "lambda"));
    if (kind == "power") return WeightFamily::power(get_num(j, "family", "beta"));
    if (kind == "ratio_power")
        return WeightFamily::ratio_power(get_num(j, "family", "epsilon"), space);
    if (kind == "exp_log_power")
        return WeightFamily::exp_log_power(get_num(j, "family", "epsilon"));
    if (kind == "explicit") {
        if (!j.contains("weights") || !j["weights"].is_array())
            throw std::invalid_argument("family: explicit kind needs a weights array");
        std::vector<Scalar> w;
        for (const auto& e : j["weights"]) w.push_back(scalar_from_json(e, "family.weights"));
        return WeightFamily::explicit_list(std::move(w));
    }
    throw std::invalid_argument("family: unknown kind '" + kind + "'");
}

Config parse_config(const json& j) {
    require_keys(j, "config",
                 {"space", "families", "polynomials", "vector", "criteria", "experiment",
                  "basis", "output"});
    Config cfg;
    cfg.raw = j;

    if (j.contains("space")) {
        require_keys(j["space"], "space", {"p"});
        cfg.space = SpaceConfig(get_num(j["space"], "space", "p", 2.0));
    }
    if (j.contains("families")) {
        if (!j["families"].is_array())
            throw std::invalid_argument("families: expected an array");
        for (const auto& f : j["families"])
            cfg.families.push_back(family_from_json(f, cfg.space));
    }
    if (j.contains("polynomials")) {
        if (!j["polynomials"].is_array())
            throw std::invalid_argument("polynomials: expected an array");
        for (const auto& p : j["polynomials"]) {
            require_keys(p, "polynomial", {"coeffs"});
            if (!p.contains("coeffs") || !p["coeffs"].is_array() || p["coeffs"].empty())
                throw std::invalid_argument("polynomial: coeffs must be a nonempty array");
            std::vector<Scalar> c;
            for (const auto& e : p["coeffs"])
                c.push_back(scalar_from_json(e, "polynomial.coeffs"));
            cfg.polynomials.emplace_back(std::move(c));
        }
    }
    if (j.contains("vector")) {
        const auto& v = j["vector"];
        require_keys(v, "vector",
                     {"construction", "distribution", "master_seed", "j_max", "m", "gamma",
                      "basis_K"});
        std::string c = v.value("construction", "single");
        if (c == "single") cfg.construction = Construction::single;
        else if (c == "common_weights") cfg.construction = Construction::common_weights;
        else if (c == "common_poly") cfg.construction = Construction::common_poly;
        else throw std::invalid_argument("vector.construction: unknown value '" + c + "'");
        if (v.contains("distribution")) {
            require_keys(v["distribution"], "vector.distribution", {"kind"});
            std::string dk = v["distribution"].value("kind", "standard_complex_gaussian");
            if (dk != "standard_complex_gaussian")
                throw std::invalid_argument(
                    "vector.distribution: only standard_complex_gaussian is configurable");
        }
        cfg.master_seed = get_u64(v, "vector", "master_seed", 1);
        cfg.j_max = get_u64(v, "vector", "j_max", 0);
        cfg.m = get_u64(v, "vector", "m", 0);
        cfg.gamma = get_u64(v, "vector", "gamma", 2);
        cfg.basis_K = get_u64(v, "vector", "basis_K", 1200);
    }
    if (j.contains("criteria")) {
        if (!j["criteria"].is_array())
            throw std::invalid_argument("criteria: expected an array");
        cfg.criteria = j["criteria"];
        for (const auto& c : cfg.criteria)
            require_keys(c, "criteria[]",
                         {"type", "family", "omega", "eta", "M", "C", "probe_n", "probe_m",
                          "m", "gamma", "alpha_sigma", "eps_tilde", "n_max", "l_samples",
                          "tau", "C_k", "betas", "lambdas", "delta", "probe", "a", "b",
                          "grid", "v", "w", "L"});
    }
    if (j.contains("experiment")) {
        const auto& e = j["experiment"];
        require_keys(e, "experiment",
                     {"targets", "epsilons", "horizon", "seeds", "burn_in", "parallelism",
                      "traces", "coverage_n"});
        if (e.contains("targets"))
            for (const auto& t : e["targets"])
                cfg.targets.push_back(target_from_json(t, "experiment.targets"));
        if (e.contains("epsilons"))
            for (const auto& x : e["epsilons"]) cfg.epsilons.push_back(x.get<double>());
        cfg.horizon = get_u64(e, "experiment", "horizon", 1000);
        if (e.contains("seeds"))
            for (const auto& s : e["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
        cfg.burn_in = get_u64(e, "experiment", "burn_in", 0);
        cfg.parallelism = static_cast<int>(get_u64(e, "experiment", "parallelism", 1));
        if (e.contains("traces")) cfg.traces = e["traces"].get<bool>();
        if (e.contains("coverage_n")) {
            const auto& c = e["coverage_n"];
            if (!c.is_array() || c.size() != 2)
                throw std::invalid_argument("experiment.coverage_n: expected [lo, hi]");
            cfg.coverage_n_lo = c[0].get<std::uint64_t>();
            cfg.coverage_n_hi = c[1].get<std::uint64_t>();
        }
    }
    if (j.contains("basis")) {
        const auto& b = j["basis"];
        require_keys(b, "basis", {"polynomial", "family", "K", "tol"});
        cfg.basis_poly = get_u64(b, "basis", "polynomial", 1);
        cfg.basis_family = get_u64(b, "basis", "family", 1);
        cfg.basis_k = get_u64(b, "basis", "K", 60);
        cfg.basis_tol = get_num(b, "basis", "tol", 1e-9);
    }
    if (j.contains("output")) {
        require_keys(j["output"], "output", {"dir"});
        cfg.outdir = j["output"].value("dir", "out");
    }
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config file " + path);
    json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

namespace {

// resolve interleave base, bases and the built vector for the configured
// construction; shared by build and simulate
struct BuildContext {
    RandomVectorSpec spec;
    std::vector<std::shared_ptr<const AdaptedBasis>> bases;
    std::vector<std::string> gate_failures;  // construction preconditions
};

BuildContext make_build_context(const Config& cfg) {
    BuildContext ctx;
    ctx.spec.dist = cfg.dist;
    ctx.spec.master_seed = cfg.master_seed;
    ctx.spec.gamma = cfg.gamma;
    ctx.spec.construction = cfg.construction;
    ctx.spec.m = cfg.m;
    ctx.spec.j_max = cfg.j_max;

    if (cfg.construction == Construction::single) {
        if (cfg.families.empty())
            throw std::invalid_argument("single construction needs one family");
        auto v = fhc_constant(cfg.families[0], cfg.space);
        if (!v.value)
            ctx.gate_failures.push_back("family 1 is not FHC: " + to_string(v.status));
        if (ctx.spec.m == 0) ctx.spec.m = 3;
        if (ctx.spec.j_max == 0) ctx.spec.j_max = cfg.horizon + 256;
        return ctx;
    }
    if (cfg.construction == Construction::common_weights) {
        if (cfg.families.empty())
            throw std::invalid_argument("common_weights construction needs families");
        for (std::size_t i = 0; i < cfg.families.size(); ++i) {
            auto v = fhc_constant(cfg.families[i], cfg.space);
            if (!v.value)
                ctx.gate_failures.push_back("family " + std::to_string(i + 1) +
                                            " is not FHC: " + to_string(v.status));
        }
        if (ctx.spec.m == 0) {
            // all-constant families: the geometric corollary's recommendation
            bool all_const = true;
            std::vector<double> lams;
            for (const auto& f : cfg.families) {
                all_const = all_const && f.kind == WeightKind::constant;
                if (f.kind == WeightKind::constant) lams.push_back(f.lambda);
            }
            if (!all_const)
                throw std::invalid_argument(
                    "vector.m = 0 requires constant families (no selector applies)");
            auto verdict = check_geometric_corollary(lams, cfg.space);
            if (!verdict.pass)
                throw std::invalid_argument("geometric corollary fails; cannot derive m");
            ctx.spec.m = verdict.evidence["m"].get<std::uint64_t>();
            ctx.spec.gamma = verdict.evidence["gamma"].get<std::uint64_t>();
        }
        if (ctx.spec.j_max == 0)
            ctx.spec.j_max = default_j_max(ctx.spec.m, ctx.spec.gamma, cfg.horizon);
        return ctx;
    }
    // common_poly
    if (cfg.polynomials.empty() || cfg.families.size() != cfg.polynomials.size())
        throw std::invalid_argument(
            "common_poly construction needs aligned polynomials and families");
    double rho_max = 0.0, limsup_c = 1.0;
    for (std::size_t i = 0; i < cfg.polynomials.size(); ++i) {
        auto adm = admissibility(cfg.polynomials[i]);
        if (!adm.admissible)
            throw std::invalid_argument("polynomial " + std::to_string(i + 1) +
                                        " is not admissible");
        rho_max = std::max(rho_max, 1.0 / adm.margin);
        limsup_c = std::max(limsup_c, bounded_check(cfg.families[i], 4096).limsup_estimate);
        auto v = fhc_constant(cfg.families[i], cfg.space);
        if (!v.value)
            ctx.gate_failures.push_back("family " + std::to_string(i + 1) +
                                        " is not FHC: " + to_string(v.status));
    }
    if (ctx.spec.m == 0) ctx.spec.m = select_m_poly(cfg.gamma, limsup_c, rho_max, 0.1);
    if (ctx.spec.j_max == 0)
        ctx.spec.j_max = default_j_max(ctx.spec.m, ctx.spec.gamma, cfg.horizon);
    for (std::size_t i = 0; i < cfg.polynomials.size(); ++i)
        ctx.bases.push_back(std::make_shared<AdaptedBasis>(
            cfg.polynomials[i], cfg.families[i], cfg.basis_K, cfg.space));
    return ctx;
}

RandomVector build_from_context(const Config& cfg, const BuildContext& ctx, bool force) {
    switch (cfg.construction) {
        case Construction::single:
            return build_Z_single(cfg.families[0], ctx.spec, cfg.space, force);
        case Construction::common_weights:
            return build_Z_common_weights(cfg.families, ctx.spec, cfg.space);
        case Construction::common_poly:
            return build_Z_common_poly(ctx.bases, ctx.spec, cfg.space);
    }
    throw std::logic_error("bad construction");
}

}  // namespace

int cmd_check(const Config& cfg, bool /*force*/) {
    fs::create_directories(cfg.outdir);
    json verdicts = json::array();
    std::vector<CriterionVerdict> parsed;
    bool witness_found = false;
    bool existence_pass = false;

    for (const auto& c : cfg.criteria) {
        std::string type = c.value("type", "");
        CriterionVerdict v;
        if (type == "fhc") {
            std::size_t idx = c.value("family", 1);
            if (idx < 1 || idx > cfg.families.size())
                throw std::invalid_argument("criteria.fhc: family index out of range");
            auto s = fhc_constant(cfg.families[idx - 1], cfg.space);
            v.criterion = "fhc_constant";
            v.status = to_string(s.status);
            v.pass = s.value.has_value();
            v.parameters = {{"family", idx}};
            v.evidence = {{"C_w", s.value ? *s.value : 0.0},
                          {"witness", s.witness}, {"how", s.evidence}};
        } else if (type == "geometric") {
            GeometricCriterionConfig gc;
            gc.omega = family_from_json(c.at("omega"), cfg.space);
            gc.eta = c.value("eta", 0.5);
            gc.M = c.value("M", 2.0);
            gc.C = c.value("C", 1.0);
            v = check_geometric(cfg.families, gc, cfg.space, c.value("probe_n", 256),
                                c.value("probe_m", 256));
            existence_pass = existence_pass || v.pass;
        } else if (type == "general") {
            GeneralCriterionConfig gc;
            gc.m = c.value("m", 4);
            gc.gamma = c.value("gamma", 2);
            gc.alpha = AlphaFamily::log_power(c.value("alpha_sigma", 1.0));
            gc.eps_tilde = c.value("eps_tilde", 0.5);
            if (c.contains("tau")) gc.tau_k = c["tau"].get<std::vector<double>>();
            if (c.contains("C_k")) gc.C_k = c["C_k"].get<std::vector<double>>();
            v = check_general(cfg.families, gc, cfg.space, c.value("n_max", 6),
                              c.value("l_samples", 32));
            existence_pass = existence_pass || v.pass;
        } else if (type == "power_corollary") {
            v = check_power_corollary(c.at("betas").get<std::vector<double>>(), cfg.space);
            existence_pass = existence_pass || v.pass;
        } else if (type == "geometric_corollary") {
            v = check_geometric_corollary(c.at("lambdas").get<std::vector<double>>(),
                                          cfg.space);
            existence_pass = existence_pass || v.pass;
        } else if (type == "poly_common") {
            v = check_poly_common(cfg.polynomials, cfg.families, c.value("delta", 0.03),
                                  cfg.space, c.value("probe", 4096));
            existence_pass = existence_pass || v.pass;
        } else if (type == "spectrum_corollary") {
            std::size_t idx = c.value("family", 1);
            if (idx < 1 || idx > cfg.families.size())
                throw std::invalid_argument("criteria.spectrum_corollary: family index");
            v = check_spectrum_corollary(cfg.families[idx - 1], cfg.polynomials,
                                         c.value("a", 1.2), c.value("b", 4.0), cfg.space,
                                         c.value("grid", 64));
            existence_pass = existence_pass || v.pass;
        } else if (type == "divergence_witness") {
            std::size_t vi = c.value("v", 1), wi = c.value("w", 2);
            if (vi < 1 || vi > cfg.families.size() || wi < 1 || wi > cfg.families.size())
                throw std::invalid_argument("criteria.divergence_witness: family index");
            auto w = search_divergence_witness(cfg.families[vi - 1], cfg.families[wi - 1],
                                               cfg.space, kDefaultThetaGrid, kDefaultBaseGrid,
                                               c.value("L", 30));
            v.criterion = "divergence_witness";
            v.pass = w.has_value();  // pass = witness found (evidence of non-existence)
            v.status = w ? "witness_found" : "no_witness";
            v.parameters = {{"v", vi}, {"w", wi}, {"L", c.value("L", 30)}};
            if (w) {
                witness_found = true;
                v.evidence = {{"theta", w->theta}, {"base", w->base},
                              {"final_log_term", w->log_terms.back()},
                              {"log_terms", w->log_terms}};
            } else {
                v.evidence = {{"theta_grid", kDefaultThetaGrid},
                              {"base_grid", kDefaultBaseGrid}};
            }
        } else {
            throw std::invalid_argument("criteria: unknown type '" + type + "'");
        }
        verdicts.push_back(v.to_json());
    }

    json out = {{"timestamp", timestamp_now()}, {"config", cfg.raw}, {"verdicts", verdicts}};
    // a divergence witness against a passing existence criterion is flagged:
    // the two kinds of evidence should not coexist
    if (witness_found && existence_pass) out["cross_check_flag"] = true;
    write_file(cfg.outdir + "/check.json", out.dump(2) + "\n");
    std::cout << "check: " << verdicts.size() << " verdict(s) written to " << cfg.outdir
              << "/check.json\n";
    return 0;
}

int cmd_build(const Config& cfg, bool force) {
    auto ctx = make_build_context(cfg);
    if (!ctx.gate_failures.empty() && !force) {
        for (const auto& g : ctx.gate_failures) std::cerr << "build: " << g << "\n";
        std::cerr << "build: construction criteria failed; pass --force to build anyway\n";
        return 1;
    }
    auto Z = build_from_context(cfg, ctx, force);
    if (!cfg.epsilons.empty()) {
        double min_eps = *std::min_element(cfg.epsilons.begin(), cfg.epsilons.end());
        if (Z.tail.bound_expectation > min_eps / 4.0 && !force) {
            std::cerr << "build: truncation tail bound " << Z.tail.bound_expectation
                      << " exceeds eps/4 = " << min_eps / 4.0
                      << "; raise vector.j_max or pass --force\n";
            return 1;
        }
    }
    fs::create_directories(cfg.outdir);
    write_file(cfg.outdir + "/vector.txt", format_sparse_vec(Z.render()));

    json block_table = json::array();
    if (cfg.construction != Construction::single) {
        std::uint64_t pw = ctx.spec.m;
        for (std::uint64_t n = 1; pw <= ctx.spec.j_max; ++n) {
            block_table.push_back({{"n", n}, {"start", pw},
                                   {"family", Z.family_of_index(pw) + 1}});
            if (pw > (std::uint64_t{1} << 62) / ctx.spec.m) break;
            pw *= ctx.spec.m;
        }
    }
    json sidecar = {{"timestamp", timestamp_now()},
                    {"config", cfg.raw},
                    {"spec",
                     {{"construction",
                       cfg.construction == Construction::single ? "single"
                       : cfg.construction == Construction::common_weights ? "common_weights"
                                                                          : "common_poly"},
                      {"master_seed", ctx.spec.master_seed},
                      {"j_max", ctx.spec.j_max},
                      {"m", ctx.spec.m},
                      {"gamma", ctx.spec.gamma}}},
                    {"tail_bound", Z.tail.bound_expectation},
                    {"tail_per_operator", Z.tail.per_operator},
                    {"block_family_table", block_table},
                    {"warnings", Z.warnings},
                    {"criteria", ctx.gate_failures.empty() ? "passed" : "failed"}};
    write_file(cfg.outdir + "/vector.json", sidecar.dump(2) + "\n");
    std::cout << "build: vector with " << Z.coords.size() << " stored coefficients, tail bound "
              << Z.tail.bound_expectation << "\n";
    return 0;
}

int cmd_simulate(const Config& cfg, bool force) {
    auto ctx = make_build_context(cfg);
    Experiment exp;
    for (std::size_t i = 0; i < cfg.families.size(); ++i) {
        OperatorSpec op;
        op.family = cfg.families[i];
        if (cfg.construction == Construction::common_poly) op.poly = cfg.polynomials[i];
        exp.operators.push_back(std::move(op));
        if (cfg.construction == Construction::single) break;
    }
    exp.vector_spec = ctx.spec;
    exp.vec_families = cfg.families;
    exp.vec_bases = ctx.bases;
    exp.targets = cfg.targets;
    exp.epsilons = cfg.epsilons;
    exp.horizon = cfg.horizon;
    exp.seeds = cfg.seeds;
    exp.space = cfg.space;
    exp.burn_in = cfg.burn_in;
    exp.parallelism = cfg.parallelism;
    exp.force = force;
    exp.coverage_n_lo = cfg.coverage_n_lo;
    exp.coverage_n_hi = cfg.coverage_n_hi;
    exp.distance_traces = cfg.traces;

    auto records = run_experiment(exp);

    fs::create_directories(cfg.outdir);
    std::string csv = "# timestamp=" + timestamp_now() + "\n";
    csv += "operator,target,eps,seed,final_ratio,min_ratio,coverage\n";
    char buf[160];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%llu,%.17g,%.17g,%.17g\n",
                      r.op_index + 1, r.target_index + 1, r.eps,
                      static_cast<unsigned long long>(r.seed), r.density.final_ratio,
                      r.density.running_min_ratio, r.coverage);
        csv += buf;
    }
    write_file(cfg.outdir + "/results.csv", csv);

    json jrecords = json::array();
    for (const auto& r : records) {
        json jr = {{"operator", r.op_index + 1},
                   {"target", r.target_index + 1},
                   {"eps", r.eps},
                   {"seed", r.seed},
                   {"hit_count", r.hits.size()},
                   {"final_ratio", r.density.final_ratio},
                   {"min_ratio", r.density.running_min_ratio},
                   {"coverage", r.coverage},
                   {"noise_bound", r.noise_bound},
                   {"ambiguous", r.ambiguous}};
        jrecords.push_back(jr);
    }
    json out = {{"timestamp", timestamp_now()},
                {"config", cfg.raw},
                {"resolved", {{"j_max", ctx.spec.j_max}, {"m", ctx.spec.m},
                              {"gamma", ctx.spec.gamma}, {"horizon", cfg.horizon}}},
                {"records", jrecords}};
    write_file(cfg.outdir + "/results.json", out.dump(2) + "\n");

    if (cfg.traces) {
        for (const auto& r : records) {
            std::string stem = "op" + std::to_string(r.op_index + 1) + "_t" +
                               std::to_string(r.target_index + 1) + "_e" +
                               std::to_string(r.eps) + "_s" + std::to_string(r.seed);
            write_file(cfg.outdir + "/trace_" + stem + ".csv",
                       density_trace_csv(r.hits, cfg.horizon));
            std::string dist = "n,distance\n";
            char row[64];
            for (const auto& [n, d] : r.distance_trace) {
                std::snprintf(row, sizeof row, "%llu,%.17g\n",
                              static_cast<unsigned long long>(n), d);
                dist += row;
            }
            write_file(cfg.outdir + "/dist_" + stem + ".csv", dist);
        }
    }
    std::cout << "simulate: " << records.size() << " record(s) written to " << cfg.outdir
              << "\n";
    return 0;
}

int cmd_basis(const Config& cfg) {
    if (cfg.basis_poly < 1 || cfg.basis_poly > cfg.polynomials.size() ||
        cfg.basis_family < 1 || cfg.basis_family > cfg.families.size())
        throw std::invalid_argument("basis: polynomial/family index out of range");
    const auto& P = cfg.polynomials[cfg.basis_poly - 1];
    auto adm = admissibility(P);
    if (!adm.admissible) {
        std::cerr << "basis: polynomial is not admissible (margin " << adm.margin << ")\n";
        return 1;
    }
    auto basis =
        build_adapted_basis(P, cfg.families[cfg.basis_family - 1], cfg.basis_k, cfg.space);
    auto report = verify_basis(basis, cfg.basis_tol);
    fs::create_directories(cfg.outdir);
    write_file(cfg.outdir + "/basis.csv", basis.export_csv());
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"k", r.k}, {"residual_rel", r.residual_rel},
                        {"beta_excess", r.beta_excess}, {"norm_excess", r.norm_excess},
                        {"pass", r.pass}});
    json out = {{"timestamp", timestamp_now()}, {"config", cfg.raw},
                {"rho", basis.rho()}, {"cw", basis.cw()}, {"K", basis.K()},
                {"all_pass", report.all_pass}, {"worst_residual", report.worst_residual},
                {"rows", rows}};
    write_file(cfg.outdir + "/basis_report.json", out.dump(2) + "\n");
    std::cout << "basis: K=" << basis.K() << " verification "
              << (report.all_pass ? "passed" : "FAILED") << ", worst residual "
              << report.worst_residual << "\n";
    return 0;
}

int cmd_report(const Config& cfg) {
    json out = {{"timestamp", timestamp_now()}};
    for (const char* name : {"check.json", "vector.json", "results.json", "basis_report.json"}) {
        fs::path p = fs::path(cfg.outdir) / name;
        if (!fs::exists(p)) continue;
        std::ifstream is(p);
        json part;
        is >> part;
        out[fs::path(name).stem().string()] = strip_timestamps(part);
    }
    write_file(cfg.outdir + "/summary.json", out.dump(2) + "\n");
    std::cout << "report: summary written to " << cfg.outdir << "/summary.json\n";
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"weighted backward shift dynamics: criteria, constructions, simulation"};
    app.require_subcommand(1);
    std::string config_path, outdir_override;
    bool force = false;
    std::optional<std::uint64_t> seed_override;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "JSON config file")->required();
        sub->add_flag("--force", force, "proceed past failed construction gates");
        sub->add_option("--out", outdir_override, "output directory override");
        sub->add_option("--seed-override", seed_override, "replace vector.master_seed");
    };
    auto* c_check = app.add_subcommand("check", "evaluate configured criteria");
    auto* c_build = app.add_subcommand("build", "construct the random vector");
    auto* c_sim = app.add_subcommand("simulate", "run the orbit experiment");
    auto* c_basis = app.add_subcommand("basis", "build and verify an adapted basis");
    auto* c_report = app.add_subcommand("report", "merge prior outputs into a summary");
    for (auto* s : {c_check, c_build, c_sim, c_basis, c_report}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Config cfg = load_config_file(config_path);
        if (!outdir_override.empty()) cfg.outdir = outdir_override;
        if (seed_override) cfg.master_seed = *seed_override;
        if (c_check->parsed()) return cmd_check(cfg, force);
        if (c_build->parsed()) return cmd_build(cfg, force);
        if (c_sim->parsed()) return cmd_simulate(cfg, force);
        if (c_basis->parsed()) return cmd_basis(cfg);
        if (c_report->parsed()) return cmd_report(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace fhsim::cli
