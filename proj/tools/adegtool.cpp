#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adegkit/adeg.hpp"
#include "adegkit/certificate.hpp"
#include "adegkit/constructions.hpp"
#include "adegkit/upperbound.hpp"

using namespace adk;

namespace {

struct Options {
    uint64_t seed = 20240817;
    int jobs = 0;
    std::string config_path;
    std::map<std::string, std::string> config;
};

void load_config(Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + opt.config_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "expected key=value: " + line);
        opt.config[line.substr(0, eq)] = line.substr(eq + 1);
    }
}

void emit(const Certificate& cert, const std::string& out_path) {
    std::string text = serialize(cert);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
        std::cout << "certificate written to " << out_path << "\n";
    }
}

int exit_for(const Certificate& cert) {
    for (const auto& r : cert.results)
        if (r.verdict == Verdict::Failed) return 1;
    return 0;
}

Witness random_dense_witness(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
    std::vector<Q> vals(uint64_t(1) << n);
    Q mean = 0;
    for (Q& v : vals) {
        v = Q(num(rng), den(rng));
        v.canonicalize();
        mean += v;
    }
    mean /= static_cast<long>(vals.size());
    Q l1 = 0;
    for (Q& v : vals) {
        v -= mean;
        l1 += qabs(v);
    }
    if (l1 == 0) return random_dense_witness(rng, n);
    for (Q& v : vals) v /= l1;
    return Witness::dense(n, std::move(vals));
}

int run_reproduce(const std::string& suite, uint64_t seed);

int cmd_adeg_run(const std::string& spec, const std::string& eps_str, int max_d,
                 const std::string& out_path) {
    BoolFn f = parse_funcspec(spec);
    Q eps = parse_rational(eps_str);
    AdegResult res = adeg(f, eps, max_d);
    for (size_t d = 0; d < res.errors.size(); ++d)
        std::cout << "E(f," << d << ") = " << res.errors[d].get_str() << "\n";
    std::cout << "approximate degree at eps=" << eps.get_str() << ": " << res.degree
              << "\n";
    if (res.has_witness) {
        WitnessClaims claims;
        claims.normalized = true;
        claims.phd_bound = res.degree;
        claims.correlation_above = res.errors[res.degree - 1] - Q(1, 1000000);
        Certificate cert = certify_witness(spec, res.witness, claims);
        emit(cert, out_path);
        return exit_for(cert);
    }
    std::cout << "degree 0: no dual witness extracted\n";
    return 0;
}

int cmd_build_run(const std::string& kind, int k, int t, long long n, long long r,
                  int m, int d, int eta, int phd_target, const std::string& corr_str,
                  const std::string& bound_str, const std::string& out_path) {
    if (kind == "omega" || kind == "psi") {
        OmegaProfile om = build_omega(k, t, n);
        Witness psi = build_psi(om, n);
        WitnessClaims claims;
        claims.normalized = true;
        claims.phd_bound = static_cast<int>(om.support.size()) - 1;
        claims.zero_mass_above = om.T;
        Certificate cert =
            certify_witness("THR:" + std::to_string(k) + ":" + std::to_string(n),
                            psi, claims);
        cert.params.insert(cert.params.begin(),
                           {{"k", std::to_string(k), "CONFIG"},
                            {"t", std::to_string(om.T), "CONFIG"},
                            {"spacing", om.ell.get_str(), "MEASURED"}});
        emit(cert, out_path);
        return exit_for(cert);
    }
    if (kind == "phi") {
        WitnessClaims claims;
        claims.normalized = true;
        claims.phd_bound = 1;
        claims.correlation_above = Q(1, 3);
        Certificate cert =
            certify_witness("OR:" + std::to_string(n), build_phi(static_cast<int>(n)),
                            claims);
        emit(cert, out_path);
        return exit_for(cert);
    }
    if (kind == "theta") {
        Q corr = parse_rational(corr_str);
        ThetaResult th = build_theta(static_cast<int>(n), phd_target, corr);
        WitnessClaims claims;
        claims.normalized = true;
        claims.phd_bound = phd_target;
        claims.correlation_above = corr - Q(1, 1000000);
        Certificate cert = certify_witness("OR:" + std::to_string(n), th.theta, claims);
        emit(cert, out_path);
        return exit_for(cert);
    }
    if (kind == "gamma" || kind == "final-w") {
        ParamBlock p = derive_params(k, r);
        GammaOverrides ov;
        if (eta >= 0) ov.eta = eta;
        GammaBuild g = build_gamma(p, ov);
        int phd_bound = (g.theta_phd - g.params.eta) * g.phipsi_phd;
        Witness w = g.gamma;
        WitnessClaims claims;
        claims.normalized = true;
        claims.phd_bound = phd_bound;
        if (kind == "final-w") {
            RsResult rs = rs_correct(g.gamma, static_cast<int>(g.params.N),
                                     phd_bound > 0 ? phd_bound - 1 : 0);
            if (!rs.norm_ok) {
                std::cout << "correction mass " << rs.norm.get_str()
                          << " exceeds 1/10\n";
                return 1;
            }
            w = build_final_W(g.gamma, rs.nu);
            claims.zero_mass_above = static_cast<int>(g.params.N);
        }
        Certificate cert = certify_witness(g.full_fn.spec_string(), w, claims);
        cert.params.insert(cert.params.begin(),
                           {{"r", std::to_string(g.params.R), "CONFIG"},
                            {"k", std::to_string(g.params.k), "CONFIG"},
                            {"eta", std::to_string(g.params.eta), "CONFIG"},
                            {"blocksize", std::to_string(g.params.N), "MEASURED"},
                            {"eps-plus", to_string(g.eps_plus), "MEASURED"},
                            {"eps-minus", to_string(g.eps_minus), "MEASURED"}});
        emit(cert, out_path);
        return exit_for(cert);
    }
    if (kind == "upper") {
        ApproximantReport rep =
            build_approximant(k, static_cast<int>(n), static_cast<int>(r), m, d);
        Certificate cert = certify_approximant(rep, parse_rational(bound_str));
        emit(cert, out_path);
        return exit_for(cert);
    }
    throw CLI::ValidationError("build", "unknown kind " + kind);
}

int cmd_verify_run(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 2;
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    Certificate cert = parse_certificate(text);
    std::vector<ClaimResult> fresh = recompute(cert);
    bool ok = verdicts_match(fresh, cert.results);
    for (const auto& r : fresh)
        std::cout << verdict_name(r.verdict) << " " << r.name << " (measured "
                  << r.measured << ", bound " << r.bound << ")\n";
    if (!ok) {
        std::cout << "stored verdicts do not match re-verification\n";
        return 1;
    }
    for (const auto& r : fresh)
        if (r.verdict == Verdict::Failed) return 1;
    return 0;
}

int cmd_dump_lp_run(const std::string& spec, int d) {
    BoolFn f = parse_funcspec(spec);
    std::cout << best_error_lp(f, d).dump();
    return 0;
}

bool check(const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    return ok;
}

bool suite_identities(uint64_t seed) {
    std::mt19937_64 rng(seed);
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
        int n = 2 + static_cast<int>(rng() % 2);
        int m = 2 + static_cast<int>(rng() % 2);
        Witness a = random_dense_witness(rng, n), b = random_dense_witness(rng, m);
        Witness c = dbc(a, b);
        ok &= c.l1() == 1;
        ErrorRates er = error_rates(make_or(m), b);
        ok &= er.eps_plus == 2 * er.delta_plus && er.eps_minus == 2 * er.delta_minus;
    }
    ok = check("dual block composition preserves unit mass; rate relation", ok);
    bool comb = true;
    for (int N = 1; N <= 20; ++N) {
        for (int deg = 0; deg < N; ++deg) {
            Q s = 0;
            for (int t = 0; t <= N; ++t)
                s += Q((t % 2 ? -1 : 1) * binom(N, t)) * qpow(Q(t), deg);
            comb &= s == 0;
        }
    }
    ok &= check("alternating binomial moment identity", comb);
    return ok;
}

bool suite_appendix(uint64_t) {
    bool ok = true;
    for (auto [k, T, N] : std::vector<std::tuple<int, int, long long>>{
             {2, 4, 16}, {2, 9, 64}, {3, 9, 64}}) {
        OmegaProfile p = build_omega(k, T, N);
        bool inst = p.omega[k] < 0;
        for (size_t deg = 0; deg + 1 < p.support.size(); ++deg) {
            Q s = 0;
            for (int t = 0; t <= T; ++t) s += p.omega[t] * qpow(Q(t), deg);
            inst &= s == 0;
        }
        for (int t = 0; t <= T; ++t) {
            bool on_support = std::count(p.support.begin(), p.support.end(), t) > 0;
            inst &= on_support || p.omega[t] == 0;
        }
        ok &= check(("threshold dual profile k=" + std::to_string(k) + " T=" +
                     std::to_string(T) + " N=" + std::to_string(N))
                        .c_str(),
                    inst);
    }
    return ok;
}

bool suite_composition(uint64_t seed) {
    std::mt19937_64 rng(seed);
    bool ok = true;
    bool amp = true;
    for (int i = 0; i < 20; ++i) {
        int m = 2 + static_cast<int>(rng() % 3);
        Witness psi = random_dense_witness(rng, m);
        if (sign_mass(psi, 1) != Q(1, 2)) {
            --i;
            continue;
        }
        BoolFn f = make_or(m);
        ErrorRates in = error_rates(f, psi);
        for (int M = 2; M <= 3; ++M) {
            Witness comp = dbc(build_phi(M), psi);
            ErrorRates out = error_rates(compose(make_or(M), f), comp);
            amp &= out.delta_plus <= M * in.delta_plus;
            amp &= out.delta_minus <= Q(1, 2) * qpow(2 * in.delta_minus, M);
        }
    }
    ok &= check("half-half amplification inequalities", amp);
    ParamBlock p = derive_params(2, 16);
    GammaBuild g = build_gamma(p);
    ok &= check("composed witness has unit mass at toy scale", g.gamma.l1() == 1);
    return ok;
}

bool suite_upperbound(uint64_t) {
    bool ok = true;
    for (int R : {2, 4}) {
        ApproximantReport rep = build_approximant(2, 4, R);
        ok &= check(("approximant error within 1/3, blocks=" + std::to_string(R)).c_str(),
                    rep.measured && rep.measured_error <= Q(1, 3));
        ok &= check("triangle chain", rep.measured_error <= rep.chain_bound);
    }
    ApproximantReport rep = build_approximant(2, 3, 2);
    BoolFn dist = make_dist(2, 3, 2);
    bool lift = true;
    for (uint64_t mask = 0; mask < (uint64_t(1) << dist.arity()); ++mask) {
        Q v = eval_lifted(rep, dist, mask);
        lift &= qabs(v - Q(dist.eval_mask(mask))) <= rep.measured_error;
    }
    ok &= check("list-function lift matches block semantics", lift);
    return ok;
}

int run_reproduce(const std::string& suite, uint64_t seed) {
    bool ok = true;
    if (suite == "identities" || suite == "all") ok &= suite_identities(seed);
    if (suite == "appendix" || suite == "all") ok &= suite_appendix(seed);
    if (suite == "composition" || suite == "all") ok &= suite_composition(seed);
    if (suite == "upperbound" || suite == "all") ok &= suite_upperbound(seed);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dual-witness and approximant toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "seed for randomized suites");
    app.add_option("--jobs", opt.jobs, "worker thread count");
    app.add_option("--config", opt.config_path, "key=value configuration file");

    auto* c_adeg = app.add_subcommand("adeg", "exact approximate degree of a function");
    std::string spec, eps = "1/3", out_path;
    int max_d = -1;
    c_adeg->add_option("spec", spec, "function spec, e.g. OR:4")->required();
    c_adeg->add_option("--eps", eps, "target error (exact rational)");
    c_adeg->add_option("--max-d", max_d, "degree cap");
    c_adeg->add_option("--out", out_path, "certificate output path");

    auto* c_build = app.add_subcommand("build", "construct an object and certify it");
    std::string kind, corr = "3/5", bound = "1/3";
    int k = 2, t = 4, m = -1, d = -1, eta = -1, phd_target = 1;
    long long n = 16, r = 16;
    c_build->add_option("kind", kind, "omega|psi|phi|theta|gamma|final-w|upper")
        ->required();
    c_build->add_option("--k", k, "threshold order");
    c_build->add_option("--t", t, "support bound");
    c_build->add_option("--n", n, "arity / block size");
    c_build->add_option("--r", r, "list size / block count");
    c_build->add_option("--m", m, "outer degree");
    c_build->add_option("--d", d, "inner replacement degree");
    c_build->add_option("--eta", eta, "modification degree (even)");
    c_build->add_option("--phd", phd_target, "pure-high-degree target");
    c_build->add_option("--corr", corr, "correlation target");
    c_build->add_option("--bound", bound, "certified error bound");
    c_build->add_option("--out", out_path, "certificate output path");

    auto* c_verify = app.add_subcommand("verify", "re-verify a certificate file");
    std::string cert_path;
    c_verify->add_option("path", cert_path, "certificate file")->required();

    auto* c_rep = app.add_subcommand("reproduce", "run a named check suite");
    std::string suite;
    c_rep->add_option("suite", suite, "identities|appendix|composition|upperbound|all")
        ->required()
        ->check(CLI::IsMember(
            {"identities", "appendix", "composition", "upperbound", "all"}));

    auto* c_dump = app.add_subcommand("dump-lp", "print the minimax LP for audit");
    std::string dspec;
    int dd = 1;
    c_dump->add_option("spec", dspec, "function spec")->required();
    c_dump->add_option("--d", dd, "degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        load_config(opt);
#ifdef _OPENMP
        if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
#endif
        if (opt.config.count("seed")) opt.seed = std::stoull(opt.config["seed"]);
        if (*c_adeg) return cmd_adeg_run(spec, eps, max_d, out_path);
        if (*c_build)
            return cmd_build_run(kind, k, t, n, r, m, d, eta, phd_target, corr, bound,
                                 out_path);
        if (*c_verify) return cmd_verify_run(cert_path);
        if (*c_rep) return run_reproduce(suite, opt.seed);
        if (*c_dump) return cmd_dump_lp_run(dspec, dd);
    } catch (const CapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
