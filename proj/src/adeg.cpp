#include "adegkit/adeg.hpp"

#include <algorithm>
#include <bit>

namespace adk {

namespace {

int sym_value(const BoolFn& f, int t) { return f.eval_mask((uint64_t(1) << t) - 1); }

// Weight-basis minimax LP for a symmetric (possibly promise) function:
// variables are the coefficients of a univariate q plus the error e, with
// |q(t) - f(t)| <= e at every admissible weight. Any optimal approximant of
// a symmetric function can be symmetrized without raising the error, so this
// path is exact.
LPInstance symmetric_lp(const BoolFn& f, int d) {
    const int W = std::min(f.arity(), f.promise_bound().value_or(f.arity()));
    LPInstance lp("minimax error, weight basis, degree " + std::to_string(d));
    std::vector<int> cvar(d + 1);
    for (int j = 0; j <= d; ++j) cvar[j] = lp.add_var(true);
    int e = lp.add_var(false);
    lp.set_objective_coeff(e, Q(1));
    for (int t = 0; t <= W; ++t) {
        Q rhs = Q(sym_value(f, t));
        std::vector<std::pair<int, Q>> terms;
        Q p = 1;
        for (int j = 0; j <= d; ++j) {
            terms.push_back({cvar[j], p});
            p *= t;
        }
        auto lo = terms;
        lo.push_back({e, Q(-1)});
        lp.add_constraint(std::move(lo), Relation::LessEq, rhs);
        auto hi = terms;
        hi.push_back({e, Q(1)});
        lp.add_constraint(std::move(hi), Relation::GreaterEq, rhs);
    }
    return lp;
}

LPInstance dense_lp(const BoolFn& f, int d) {
    const int n = f.arity();
    if (n > 16) throw CapError("dense minimax LP capped at 16 bits");
    const int W = f.promise_bound().value_or(n);
    LPInstance lp("minimax error, Fourier basis, degree " + std::to_string(d));
    std::vector<uint32_t> basis;
    for (uint32_t S = 0; S < (uint32_t(1) << n); ++S)
        if (std::popcount(S) <= d) basis.push_back(S);
    std::vector<int> cvar(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) cvar[i] = lp.add_var(true);
    int e = lp.add_var(false);
    lp.set_objective_coeff(e, Q(1));
    for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) {
        if (std::popcount(x) > W) continue;
        Q rhs = Q(f.eval_mask(x));
        std::vector<std::pair<int, Q>> terms;
        for (size_t i = 0; i < basis.size(); ++i)
            terms.push_back({cvar[i], Q(std::popcount(uint32_t(x) & basis[i]) % 2 ? -1 : 1)});
        auto lo = terms;
        lo.push_back({e, Q(-1)});
        lp.add_constraint(std::move(lo), Relation::LessEq, rhs);
        auto hi = terms;
        hi.push_back({e, Q(1)});
        lp.add_constraint(std::move(hi), Relation::GreaterEq, rhs);
    }
    return lp;
}

// The dual of the paired rows at one domain point combines into a signed
// measure with vanishing moments through degree d; normalized and
// sign-fixed it is the Lemma-style witness.
Witness extract_sym_witness(const BoolFn& f, const LPSolution& sol, int W) {
    std::vector<Q> level(f.arity() + 1, Q(0));
    for (int t = 0; t <= W; ++t) level[t] = sol.dual[2 * t] + sol.dual[2 * t + 1];
    Witness w = Witness::symmetric(f.arity(), std::move(level));
    if (w.l1() == 0) return w;
    w = w.scaled(Q(1) / w.l1());
    if (correlation(f, w) < 0) w = w.scaled(Q(-1));
    return w;
}

Witness extract_dense_witness(const BoolFn& f, const LPSolution& sol, int W) {
    const int n = f.arity();
    std::vector<Q> vals(uint64_t(1) << n, Q(0));
    int row = 0;
    for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) {
        if (std::popcount(x) > W) continue;
        vals[x] = sol.dual[row] + sol.dual[row + 1];
        row += 2;
    }
    Witness w = Witness::dense(n, std::move(vals));
    if (w.l1() == 0) return w;
    w = w.scaled(Q(1) / w.l1());
    if (correlation(f, w) < 0) w = w.scaled(Q(-1));
    return w;
}

}  // namespace

LPInstance best_error_lp(const BoolFn& f, int d) {
    return f.is_symmetric() ? symmetric_lp(f, d) : dense_lp(f, d);
}

BestErrorResult best_error(const BoolFn& f, int d) {
    BestErrorResult r;
    r.symmetric_path = f.is_symmetric();
    r.dual_witness = Witness::dense(0, {Q(0)});
    const int W = std::min(f.arity(), f.promise_bound().value_or(f.arity()));
    LPInstance lp = best_error_lp(f, d);
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::Optimal) throw std::runtime_error("minimax LP not optimal");
    r.error = sol.objective;
    r.strong_duality = sol.strong_duality_holds;
    if (r.symmetric_path) {
        std::vector<Q> coeffs(sol.x.begin(), sol.x.begin() + d + 1);
        r.weight_poly = UnivariatePoly(std::move(coeffs));
        r.dual_witness = extract_sym_witness(f, sol, W);
    } else {
        const int n = f.arity();
        std::map<uint32_t, Q> coeffs;
        int i = 0;
        for (uint32_t S = 0; S < (uint32_t(1) << n); ++S)
            if (std::popcount(S) <= d) {
                if (sol.x[i] != 0) coeffs[S] = sol.x[i];
                ++i;
            }
        r.fourier_poly = MultilinearPoly(n, std::move(coeffs));
        r.dual_witness = extract_dense_witness(f, sol, W);
    }
    if (r.dual_witness.l1() == 1) {
        r.dual_correlation = correlation(f, r.dual_witness);
        r.dual_valid = phd_at_least(r.dual_witness, d + 1) && r.dual_correlation >= r.error;
    }
    return r;
}

AdegResult adeg(const BoolFn& f, const Q& eps, int max_d) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("adeg: eps must lie in (0,1)");
    if (max_d < 0) max_d = f.arity();
    AdegResult res;
    BestErrorResult prev;
    for (int d = 0; d <= max_d; ++d) {
        BestErrorResult cur = best_error(f, d);
        res.errors.push_back(cur.error);
        if (cur.error <= eps) {
            res.degree = d;
            res.at_degree = cur;
            if (d >= 1 && prev.dual_valid) {
                res.has_witness = true;
                res.witness = prev.dual_witness;
                res.witness_correlation = prev.dual_correlation;
                res.witness_phd = phd(res.witness);
            }
            return res;
        }
        prev = std::move(cur);
    }
    throw std::runtime_error("adeg: error stays above eps through max degree");
}

Q ConjApprox::eval(int wA, int wB, int wC) const {
    Q acc = 0;
    for (const auto& [a, b, c, coef] : coeffs)
        acc += coef * qpow(Q(wA), a) * qpow(Q(wB), b) * qpow(Q(wC), c);
    return acc;
}

ConjApprox conj_approx(int n, int sizeA, int sizeB, int d, int weight_bound) {
    if (sizeA + sizeB > n) throw std::invalid_argument("conj_approx: groups exceed arity");
    const int sizeC = n - sizeA - sizeB;
    LPInstance lp("conjunction minimax, three-way weight profile, degree " + std::to_string(d));
    std::vector<std::tuple<int, int, int>> mono;
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b)
            for (int c = 0; a + b + c <= d; ++c) mono.push_back({a, b, c});
    std::vector<int> cvar(mono.size());
    for (size_t i = 0; i < mono.size(); ++i) cvar[i] = lp.add_var(true);
    int e = lp.add_var(false);
    lp.set_objective_coeff(e, Q(1));
    for (int wA = 0; wA <= sizeA; ++wA)
        for (int wB = 0; wB <= sizeB; ++wB)
            for (int wC = 0; wC <= sizeC; ++wC) {
                if (wA + wB + wC > weight_bound) continue;
                Q rhs = (wA == 0 && wB == sizeB) ? Q(1) : Q(0);
                std::vector<std::pair<int, Q>> terms;
                for (size_t i = 0; i < mono.size(); ++i) {
                    auto [a, b, c] = mono[i];
                    terms.push_back(
                        {cvar[i], qpow(Q(wA), a) * qpow(Q(wB), b) * qpow(Q(wC), c)});
                }
                auto lo = terms;
                lo.push_back({e, Q(-1)});
                lp.add_constraint(std::move(lo), Relation::LessEq, rhs);
                auto hi = terms;
                hi.push_back({e, Q(1)});
                lp.add_constraint(std::move(hi), Relation::GreaterEq, rhs);
            }
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::Optimal) throw std::runtime_error("conjunction LP not optimal");
    ConjApprox out;
    out.error = sol.objective;
    out.d = d;
    for (size_t i = 0; i < mono.size(); ++i) {
        auto [a, b, c] = mono[i];
        if (sol.x[i] != 0) out.coeffs.push_back({a, b, c, sol.x[i]});
    }
    return out;
}

Q conj_best_error(int n, int sizeA, int sizeB, int d, int weight_bound) {
    return conj_approx(n, sizeA, sizeB, d, weight_bound).error;
}

Witness rs_lp(const Witness& target, int N, int D, Q* achieved_norm) {
    if (mass_above(target, N) == 0) {
        if (achieved_norm) *achieved_norm = 0;
        if (target.is_symmetric() || !target.dense_capable())
            return Witness::symmetric(target.arity(),
                                      std::vector<Q>(target.arity() + 1, Q(0)));
        return Witness::dense(target.arity(),
                              std::vector<Q>(uint64_t(1) << target.arity(), Q(0)));
    }
    const int n = target.arity();
    if (target.is_symmetric()) {
        const auto& level = std::get<Witness::Symmetric>(target.rep()).level;
        LPInstance lp("high-weight correction, level basis, moments through " +
                      std::to_string(D));
        std::vector<int> pv(N + 1), mv(N + 1);
        for (int t = 0; t <= N; ++t) {
            pv[t] = lp.add_var(false);
            mv[t] = lp.add_var(false);
            lp.set_objective_coeff(pv[t], Q(1));
            lp.set_objective_coeff(mv[t], Q(1));
        }
        for (int s = 0; s <= D; ++s) {
            std::vector<std::pair<int, Q>> terms;
            Q rhs = 0;
            for (int t = 0; t <= n; ++t) {
                Q coef = Q(parity_level_sum(n, s, t)) / Q(binom(n, t));
                if (t <= N) {
                    terms.push_back({pv[t], coef});
                    terms.push_back({mv[t], -coef});
                } else {
                    rhs -= level[t] * coef;
                }
            }
            lp.add_constraint(std::move(terms), Relation::Equal, rhs);
        }
        LPSolution sol = solve(lp);
        if (sol.status != LPStatus::Optimal)
            throw std::runtime_error("correction LP infeasible");
        std::vector<Q> out(n + 1, Q(0));
        Q norm = 0;
        for (int t = 0; t <= N; ++t) out[t] = sol.x[2 * t] - sol.x[2 * t + 1];
        for (int t = N + 1; t <= n; ++t) out[t] = level[t];
        Witness nu = Witness::symmetric(n, std::move(out));
        if (achieved_norm) *achieved_norm = nu.l1();
        return nu;
    }
    if (n > 12) throw CapError("dense correction LP capped at 12 bits");
    std::vector<Q> vals = target.dense_expand();
    LPInstance lp("high-weight correction, point basis, moments through " + std::to_string(D));
    std::vector<uint64_t> low;
    for (uint64_t x = 0; x < vals.size(); ++x)
        if (std::popcount(x) <= N) low.push_back(x);
    std::vector<int> pv(low.size()), mv(low.size());
    for (size_t i = 0; i < low.size(); ++i) {
        pv[i] = lp.add_var(false);
        mv[i] = lp.add_var(false);
        lp.set_objective_coeff(pv[i], Q(1));
        lp.set_objective_coeff(mv[i], Q(1));
    }
    for (uint32_t S = 0; S < (uint32_t(1) << n); ++S) {
        if (std::popcount(S) > D) continue;
        std::vector<std::pair<int, Q>> terms;
        Q rhs = 0;
        for (size_t i = 0; i < low.size(); ++i) {
            Q coef = Q(std::popcount(uint32_t(low[i]) & S) % 2 ? -1 : 1);
            terms.push_back({pv[i], coef});
            terms.push_back({mv[i], -coef});
        }
        for (uint64_t x = 0; x < vals.size(); ++x)
            if (std::popcount(x) > N && vals[x] != 0)
                rhs -= vals[x] * Q(std::popcount(uint32_t(x) & S) % 2 ? -1 : 1);
        lp.add_constraint(std::move(terms), Relation::Equal, rhs);
    }
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::Optimal) throw std::runtime_error("correction LP infeasible");
    std::vector<Q> out(vals.size(), Q(0));
    for (size_t i = 0; i < low.size(); ++i) out[low[i]] = sol.x[2 * i] - sol.x[2 * i + 1];
    for (uint64_t x = 0; x < vals.size(); ++x)
        if (std::popcount(x) > N) out[x] = vals[x];
    Witness nu = Witness::dense(n, std::move(out));
    if (achieved_norm) *achieved_norm = nu.l1();
    return nu;
}

}  // namespace adk
