#include "adegkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace adk {

namespace {

Z zpow(long base, unsigned long e) {
    Z r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

Z zpow(const Z& base, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Z isqrt(const Z& x) {
    Z r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

// 100k * ceil(N^{1/2k} * 4^k * log2 N), the support-spacing parameter.
// Exact when N is a power of two whose root is integral; otherwise evaluated
// in extended precision with an ambiguity guard on the ceiling.
Z compute_ell(int k, long long N) {
    int e = -1;
    if ((N & (N - 1)) == 0) {
        e = 0;
        for (long long v = N; v > 1; v >>= 1) ++e;
    }
    long long root = static_cast<long long>(
        std::llround(std::pow(static_cast<double>(N), 1.0 / (2.0 * k))));
    while (zpow(root, 2u * k) > Z(static_cast<long>(N))) --root;
    while (zpow(root + 1, 2u * k) <= Z(static_cast<long>(N))) ++root;
    bool exact_root = zpow(root, 2u * k) == Z(static_cast<long>(N));
    Z inner;
    if (e >= 0 && exact_root) {
        inner = Z(static_cast<long>(root)) * zpow(4L, static_cast<unsigned long>(k)) * e;
    } else {
        long double v = powl(static_cast<long double>(N), 1.0L / (2 * k)) *
                        powl(4.0L, k) * log2l(static_cast<long double>(N));
        long double nearest = nearbyintl(v);
        if (fabsl(v - nearest) < 1e-9L)
            throw std::runtime_error("support spacing: ceiling too close to call");
        inner = Z(static_cast<long>(ceill(v)));
    }
    return Z(100) * k * inner;
}

}  // namespace

OmegaProfile build_omega(int k, int T, long long N) {
    if (k < 2 || k > T || T > N)
        throw std::invalid_argument("build_omega: need 2 <= k <= T <= N");
    OmegaProfile p;
    p.k = k;
    p.T = T;
    p.N = N;
    p.ell = compute_ell(k, N);
    p.m = 0;
    while (p.ell * (p.m + 1) * (p.m + 1) <= T) ++p.m;
    std::set<long long> S;
    for (int t = 1; t <= k; ++t) S.insert(t);
    for (int i = 0; i <= p.m; ++i) S.insert(Z(p.ell * i * i).get_si());
    p.support.assign(S.begin(), S.end());
    p.raw.assign(T + 1, Q(0));
    const Z tfact = factorial(T);
    for (int t = 0; t <= T; ++t) {
        Z prod = 1;
        for (long long r = 0; r <= T; ++r)
            if (!S.count(r)) prod *= Z(t) - Z(static_cast<long>(r));
        if (prod == 0) continue;
        Q v(Z(binom(T, t)) * prod, tfact);
        v.canonicalize();
        if ((T - t - p.m + 1) % 2 != 0) v = -v;
        p.raw[t] = v;
    }
    p.raw_l1 = 0;
    for (const Q& v : p.raw) p.raw_l1 += qabs(v);
    if (p.raw_l1 == 0) throw std::runtime_error("build_omega: degenerate profile");
    p.omega = p.raw;
    for (Q& v : p.omega) v /= p.raw_l1;
    return p;
}

Witness build_psi(const OmegaProfile& omega, long long N) {
    if (omega.T > N) throw std::invalid_argument("build_psi: support exceeds arity");
    std::vector<Q> level(static_cast<size_t>(N + 1), Q(0));
    for (int t = 0; t <= omega.T; ++t) level[t] = omega.omega[t];
    return Witness::symmetric(static_cast<int>(N), std::move(level));
}

Witness build_phi(int n) {
    if (n < 1) throw std::invalid_argument("build_phi: n >= 1 required");
    std::vector<Q> level(n + 1, Q(0));
    level[0] = Q(1, 2);
    level[n] = Q(-1, 2);
    return Witness::symmetric(n, std::move(level));
}

ThetaResult build_theta(int n, int target_phd, const Q& target_corr) {
    if (n < 1 || target_phd < 0)
        throw std::invalid_argument("build_theta: bad arguments");
    LPInstance lp("best OR correlation at phd >= " + std::to_string(target_phd) +
                  ", " + std::to_string(n) + " bits");
    const BoolFn f = make_or(n);
    std::vector<int> pv(n + 1), mv(n + 1);
    for (int t = 0; t <= n; ++t) {
        pv[t] = lp.add_var(false);
        mv[t] = lp.add_var(false);
        Q prof = Q(f.profile()[t]);
        lp.set_objective_coeff(pv[t], -prof);
        lp.set_objective_coeff(mv[t], prof);
    }
    {
        std::vector<std::pair<int, Q>> terms;
        for (int t = 0; t <= n; ++t) {
            terms.push_back({pv[t], Q(1)});
            terms.push_back({mv[t], Q(1)});
        }
        lp.add_constraint(std::move(terms), Relation::Equal, Q(1));
    }
    for (int s = 0; s < target_phd; ++s) {
        std::vector<std::pair<int, Q>> terms;
        for (int t = 0; t <= n; ++t) {
            Q coef = Q(parity_level_sum(n, s, t), binom(n, t));
            coef.canonicalize();
            terms.push_back({pv[t], coef});
            terms.push_back({mv[t], -coef});
        }
        lp.add_constraint(std::move(terms), Relation::Equal, Q(0));
    }
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::Optimal)
        throw std::invalid_argument("build_theta: no unit-mass witness at this phd");
    std::vector<Q> level(n + 1);
    for (int t = 0; t <= n; ++t) level[t] = sol.x[2 * t] - sol.x[2 * t + 1];
    Witness theta = Witness::symmetric(n, std::move(level));
    if (theta.l1() == 0)
        throw std::invalid_argument("build_theta: only the zero witness at this phd");
    if (theta.l1() != 1) theta = theta.scaled(Q(1) / theta.l1());
    ThetaResult r{theta, correlation(f, theta), phd(theta), false};
    r.met_target = r.correlation >= target_corr;
    return r;
}

ParamBlock derive_params(int k, long long R, const DeriveOptions& opt) {
    if (k < 2 || R < 1) throw std::invalid_argument("derive_params: need k >= 2, R >= 1");
    ParamBlock p;
    p.k = k;
    p.R = R;
    p.fourk = zpow(4L, static_cast<unsigned long>(k)).get_si();
    if (R % p.fourk != 0)
        throw std::invalid_argument("derive_params: 4^k must divide R");
    p.outer_n = static_cast<int>(R / p.fourk);
    p.T = static_cast<int>(isqrt(Z(static_cast<long>(R))).get_si());
    p.sigma = zpow(2L * k, static_cast<unsigned long>(k));
    Z n2 = Z(400) * p.sigma * Z(static_cast<long>(R)) * Z(static_cast<long>(R));
    Z nroot = isqrt(n2);
    if (nroot * nroot < n2) nroot += 1;
    p.N = nroot.get_si();
    p.c = opt.c;
    p.c1 = opt.c1;
    p.c2 = opt.c2;
    p.theta_phd = opt.theta_phd;
    long long eta_raw;
    if (opt.c) {
        // eta = floor((c/2) sqrt(outer_n)) - 1 with c = num/den.
        Z num = opt.c->get_num() * opt.c->get_num() * p.outer_n;
        Z den = Z(4) * opt.c->get_den() * opt.c->get_den();
        eta_raw = isqrt(num / den).get_si() - 1;
    } else {
        // With c taken as phd(theta)/sqrt(outer_n), (c/2) sqrt(R/4^k) is
        // exactly phd(theta)/2.
        eta_raw = opt.theta_phd / 2 - 1;
    }
    long long eta = std::max<long long>(0, eta_raw);
    eta -= eta & 1;
    if (eta >= p.outer_n) {
        eta = p.outer_n - 1;
        eta -= eta & 1;
        if (eta < 0) eta = 0;
    }
    p.eta = static_cast<int>(eta);
    double sigma_d = p.sigma.get_d();
    double c2_d = opt.c2.get_d();
    p.beta = c2_d / std::sqrt(static_cast<double>(p.fourk) * k * p.T *
                              std::pow(static_cast<double>(p.N), 1.0 / (2.0 * k)) *
                              std::log2(static_cast<double>(p.N)));
    double lnR = std::log(static_cast<double>(R));
    p.delta = p.beta * std::sqrt(sigma_d * static_cast<double>(R)) / (4.0 * lnR * lnR);
    return p;
}

GammaBuild build_gamma(const ParamBlock& params, const GammaOverrides& o) {
    GammaBuild g;
    g.params = params;
    if (o.eta) g.params.eta = *o.eta;
    if (o.theta_phd) g.params.theta_phd = *o.theta_phd;
    if (g.params.eta % 2 != 0 || g.params.eta < 0 || g.params.eta >= g.params.outer_n)
        throw std::invalid_argument("build_gamma: eta must be even in [0, outer arity)");
    ThetaResult th = build_theta(g.params.outer_n, g.params.theta_phd, Q(3, 5));
    g.theta = th.theta;
    g.theta_corr = th.correlation;
    g.theta_phd = th.phd;
    const int k = g.params.k;
    const int fourk = static_cast<int>(g.params.fourk);
    const long long N = g.params.N;
    g.omega = build_omega(k, g.params.T, N);
    g.psi = build_psi(g.omega, N);
    g.phi = build_phi(fourk);
    g.phipsi = dbc(g.phi, g.psi);
    g.inner_fn = compose(make_or(fourk), make_thr(k, static_cast<int>(N)));
    g.full_fn = compose(make_or(g.params.outer_n), g.inner_fn);
    ErrorRates er = error_rates(g.inner_fn, g.phipsi);
    g.eps_plus = er.eps_plus;
    g.eps_minus = er.eps_minus;
    int expected_phd = phd(g.phi) * phd(g.psi);
    if (!phd_at_least(g.phipsi, expected_phd))
        throw std::runtime_error("build_gamma: inner pair misses its phd product");
    g.phipsi_phd = expected_phd;
    g.gamma = modified_compose(g.theta, g.phipsi, g.inner_fn, g.params.eta);
    if (const auto* md = std::get_if<Witness::Modified>(&g.gamma.rep()))
        g.normalizer = md->normalizer;
    else
        g.normalizer = 1;
    g.normalizer_above_one = g.normalizer > 1;
    return g;
}

RsResult rs_correct(const Witness& gamma, int N, int D) {
    RsResult r;
    r.nu = rs_lp(gamma, N, D, &r.norm);
    r.norm_ok = r.norm <= Q(1, 10);
    return r;
}

Witness build_final_W(const Witness& gamma, const Witness& nu) {
    if (nu.l1() == 0) return gamma;
    Witness d = dense_difference(gamma, nu);
    if (d.l1() == 0) throw std::invalid_argument("build_final_W: difference vanishes");
    return d.scaled(Q(1) / d.l1());
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "CERTIFIED";
        case Verdict::RegimeOnly: return "REGIME-ONLY";
        default: return "FAILED";
    }
}

bool VerifyReport::all_certified() const {
    for (const auto& c : claims)
        if (c.verdict == Verdict::Failed) return false;
    return true;
}

VerifyReport verify_witness(const Witness& w, const BoolFn& f, const WitnessClaims& claims) {
    VerifyReport rep;
    if (claims.normalized) {
        Q l1 = w.l1();
        rep.claims.push_back({"unit mass",
                              l1 == 1 ? Verdict::Certified : Verdict::Failed,
                              to_string(l1), "1"});
    }
    if (claims.phd_bound >= 0) {
        bool ok = phd_at_least(w, claims.phd_bound);
        std::string measured =
            ok ? ">=" + std::to_string(claims.phd_bound)
               : std::to_string(phd(w, claims.phd_bound));
        rep.claims.push_back({"pure high degree",
                              ok ? Verdict::Certified : Verdict::Failed, measured,
                              ">=" + std::to_string(claims.phd_bound)});
    }
    if (claims.correlation_above) {
        Q corr = correlation(f, w);
        rep.claims.push_back({"correlation",
                              corr > *claims.correlation_above ? Verdict::Certified
                                                               : Verdict::Failed,
                              to_string(corr),
                              ">" + to_string(*claims.correlation_above)});
    }
    if (claims.zero_mass_above >= 0) {
        Q m = mass_above(w, claims.zero_mass_above);
        rep.claims.push_back({"zero mass beyond weight " +
                                  std::to_string(claims.zero_mass_above),
                              m == 0 ? Verdict::Certified : Verdict::Failed,
                              to_string(m), "0"});
    }
    return rep;
}

}  // namespace adk
