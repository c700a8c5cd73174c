#include "adegkit/upperbound.hpp"

#include <bit>
#include <cmath>

namespace adk {

namespace {

// q(s) = (2 / T_m(1 + 1/R)) * T_m((s+1)/R) - 1.
UnivariatePoly scaled_cheb(int m, long long R) {
    UnivariatePoly cheb = chebyshev(m);
    UnivariatePoly affine({Q(1, static_cast<long>(R)), Q(1, static_cast<long>(R))});
    UnivariatePoly comp = UnivariatePoly::constant(Q(0));
    for (int i = cheb.degree(); i >= 0; --i)
        comp = comp * affine + UnivariatePoly::constant(cheb.coeff(i));
    Q peak = cheb.eval(Q(static_cast<long>(R) + 1, static_cast<long>(R)));
    return comp.scaled(Q(2) / peak) + UnivariatePoly::constant(Q(-1));
}

}  // namespace

OuterPoly build_outer(int m, long long R) {
    if (m < 1 || R < 1) throw std::invalid_argument("build_outer: need m, R >= 1");
    OuterPoly o;
    o.m = m;
    o.R = R;
    o.q = scaled_cheb(m, R);
    o.error_bound = Q(2 * static_cast<long>(R), static_cast<long>(R) + long(m) * m);
    o.error_bound.canonicalize();
    o.measured_error = 0;
    for (long t = 0; t <= R; ++t) {
        // t blocks read -1: sum = R - 2t, target OR value -1 unless t = 0.
        Q v = o.q.eval(Q(static_cast<long>(R) - 2 * t));
        Q err = qabs(v - Q(t == 0 ? 1 : -1));
        if (err > o.measured_error) o.measured_error = err;
    }
    return o;
}

ConjunctionComb expand_thr_conjunctions(int k, int N) {
    if (k < 1 || k > N)
        throw std::invalid_argument("expand_thr_conjunctions: need 1 <= k <= N");
    Z count = 1;
    for (int i = 0; i < k; ++i) count += binom(N, i);
    if (count > 200000) throw CapError("threshold expansion: conjunction count cap");
    std::vector<ConjunctionComb::Term> terms;
    const uint32_t full = (uint32_t(1) << N) - 1;
    terms.push_back({0, 0, Q(-1)});  // the constant-1 conjunction, weighted -1
    for (int i = 0; i < k; ++i) {
        // All size-i subsets read -1, the rest +1.
        uint32_t S = (uint32_t(1) << i) - 1;
        while (true) {
            terms.push_back({full & ~S, S, Q(2)});
            if (i == 0) break;
            uint32_t c = S & -S, r = S + c;
            S = (((r ^ S) >> 2) / c) | r;
            if (S > full) break;
        }
    }
    ConjunctionComb comb(N, terms);
    return ConjunctionComb(N, std::move(terms), comb.coeff_l1());
}

ApproximantReport build_approximant(int k, int N, int R, int m, int d) {
    ApproximantReport rep;
    if (m < 0) m = static_cast<int>(std::ceil(std::sqrt(6.0 * R)));
    if (d < 0) d = N;
    rep.k = k;
    rep.N = N;
    rep.R = R;
    rep.m = m;
    rep.d = d;
    rep.outer = build_outer(m, R);
    rep.thr_comb = expand_thr_conjunctions(k, N);
    rep.max_conj_error = 0;
    for (int i = 0; i < k; ++i) {
        rep.conj_by_size.push_back(conj_approx(N, N - i, i, d, N));
        if (rep.conj_by_size.back().error > rep.max_conj_error)
            rep.max_conj_error = rep.conj_by_size.back().error;
    }
    // rho(q(sum of blocks)) <= sum_j |q_j| (R * rho(block))^j.
    Q per_block = rho_upper(rep.thr_comb);
    rep.rho_bound = 0;
    for (int j = 0; j <= rep.outer.q.degree(); ++j)
        rep.rho_bound += qabs(rep.outer.q.coeff(j)) * qpow(Q(R) * per_block, j);
    rep.total_degree = m * d;
    rep.chain_bound = rep.outer.error_bound + rep.rho_bound * rep.max_conj_error;
    // Exact max error over per-block weights w_1..w_R with sum <= N.
    double points = std::pow(N + 1.0, R);
    if (points <= 2e6) {
        rep.measured = true;
        rep.measured_error = 0;
        std::vector<int> w(R, 0);
        std::vector<Q> block_cache(N + 1);
        for (int t = 0; t <= N; ++t) block_cache[t] = approximant_block_value(rep, t);
        // Odometer over weight vectors, pruned by the total-weight promise.
        while (true) {
            int total = 0;
            for (int r = 0; r < R; ++r) total += w[r];
            if (total <= N) {
                Q sum = 0;
                bool any = false;
                for (int r = 0; r < R; ++r) {
                    sum += block_cache[w[r]];
                    if (w[r] >= k) any = true;
                }
                Q err = qabs(rep.outer.q.eval(sum) - Q(any ? -1 : 1));
                if (err > rep.measured_error) rep.measured_error = err;
            }
            int r = 0;
            while (r < R && ++w[r] > N) w[r++] = 0;
            if (r == R) break;
        }
    }
    return rep;
}

Q approximant_block_value(const ApproximantReport& rep, int w) {
    Q acc = 0;
    for (int i = 0; i < rep.k; ++i) {
        // Sum over all size-i subsets, grouped by how many of the w minus
        // coordinates fall inside the subset.
        Q ei = 0;
        for (int t = 0; t <= i && t <= w; ++t) {
            Z ways = binom(w, t) * binom(rep.N - w, i - t);
            if (ways == 0) continue;
            ei += Q(ways) * rep.conj_by_size[i].eval(w - t, t, 0);
        }
        acc += ei;
    }
    return 2 * acc - 1;
}

Q approximant_value(const ApproximantReport& rep, const std::vector<int>& weights) {
    if (static_cast<int>(weights.size()) != rep.R)
        throw std::invalid_argument("approximant_value: need one weight per block");
    Q sum = 0;
    for (int wr : weights) sum += approximant_block_value(rep, wr);
    return rep.outer.q.eval(sum);
}

DistLiftReport dist_lift(const ApproximantReport& rep) {
    if (rep.R < 2) throw std::invalid_argument("dist_lift: range >= 2 required");
    DistLiftReport lift;
    lift.k = rep.k;
    lift.N = rep.N;
    lift.R = rep.R;
    lift.bits_per_item = 1;
    while ((1 << lift.bits_per_item) < rep.R) ++lift.bits_per_item;
    lift.total_degree = rep.total_degree * lift.bits_per_item;
    return lift;
}

Q eval_lifted(const ApproximantReport& rep, const BoolFn& dist_fn, uint64_t mask) {
    const auto* d = std::get_if<BoolFn::Dist>(&dist_fn.rep());
    if (!d || d->k != rep.k || d->N != rep.N || d->R != rep.R)
        throw std::invalid_argument("eval_lifted: list function shape mismatch");
    // Indicator substitution: block j's weight is the number of items whose
    // decoded value equals j.
    std::vector<int> weights(rep.R, 0);
    for (int i = 0; i < d->N; ++i) {
        uint64_t pattern =
            (mask >> (i * d->bits_per_item)) & ((uint64_t(1) << d->bits_per_item) - 1);
        ++weights[static_cast<int>(pattern % d->R)];
    }
    return approximant_value(rep, weights);
}

}  // namespace adk
