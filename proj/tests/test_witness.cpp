#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adegkit/witness.hpp"
#include "helpers.hpp"

using namespace adk;
using adk::testing::random_dense_witness;
using adk::testing::random_raw_witness;

TEST_CASE("symmetric witnesses spread level mass uniformly") {
    // Level mass 1/2 at weight 0 and -1/2 at weight 2 on 3 bits.
    Witness w = Witness::symmetric(3, {Q(1, 2), Q(0), Q(-1, 2), Q(0)});
    CHECK(w.l1() == 1);
    CHECK(w.eval_mask(0) == Q(1, 2));
    CHECK(w.eval_mask(0b011) == Q(-1, 6));
    CHECK(w.eval_mask(0b111) == 0);
    auto dense = w.dense_expand();
    Q total = 0;
    for (const Q& v : dense) total += qabs(v);
    CHECK(total == 1);
}

TEST_CASE("correlation and subset moments agree with direct sums") {
    std::mt19937_64 rng(7);
    BoolFn f = make_or(3);
    for (int trial = 0; trial < 10; ++trial) {
        Witness w = random_raw_witness(rng, 3);
        Q corr = 0;
        for (uint64_t m = 0; m < 8; ++m) corr += w.eval_mask(m) * f.eval_mask(m);
        CHECK(correlation(f, w) == corr);
        for (uint64_t S : {0ull, 1ull, 5ull, 7ull}) {
            Q mom = 0, amom = 0;
            for (uint64_t m = 0; m < 8; ++m) {
                int chi = (__builtin_popcountll(m & S) % 2) ? -1 : 1;
                mom += w.eval_mask(m) * chi;
                amom += qabs(w.eval_mask(m)) * chi;
            }
            CHECK(subset_moment(w, S) == mom);
            CHECK(subset_abs_moment(w, S) == amom);
        }
    }
}

TEST_CASE("pure-high-degree checks match explicit moment vanishing") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        Witness w = random_dense_witness(rng, 4);
        int p = phd(w);
        CHECK(p >= 1);  // mean-subtracted
        CHECK(phd_at_least(w, p));
        if (p != kPhdInfinite) {
            CHECK(!phd_at_least(w, p + 1));
            // Every subset of size < p has zero moment; some size-p subset not.
            bool violated = false;
            for (uint64_t S = 0; S < 16; ++S) {
                int sz = __builtin_popcountll(S);
                if (sz < p) CHECK(subset_moment(w, S) == 0);
                if (sz == p && subset_moment(w, S) != 0) violated = true;
            }
            CHECK(violated);
        }
    }
}

TEST_CASE("error rates: conditional rates are twice the mass rates") {
    std::mt19937_64 rng(9);
    BoolFn f = make_or(4);
    int checked = 0;
    for (int trial = 0; trial < 30 && checked < 20; ++trial) {
        Witness w = random_dense_witness(rng, 4);
        if (!phd_at_least(w, 1)) continue;
        ++checked;
        ErrorRates er = error_rates(f, w);
        CHECK(er.eps_plus == 2 * er.delta_plus);
        CHECK(er.eps_minus == 2 * er.delta_minus);
        // Direct recomputation of delta+-.
        Q dp = 0, dm = 0;
        for (uint64_t m = 0; m < 16; ++m) {
            Q v = w.eval_mask(m);
            if (v > 0 && f.eval_mask(m) == -1) dp += v;
            if (v < 0 && f.eval_mask(m) == 1) dm += -v;
        }
        CHECK(er.delta_plus == dp);
        CHECK(er.delta_minus == dm);
    }
    CHECK(checked == 20);
}

TEST_CASE("alpha statistics satisfy the defining identities") {
    std::mt19937_64 rng(10);
    BoolFn f = make_or(3);
    for (int trial = 0; trial < 15; ++trial) {
        Witness w = random_dense_witness(rng, 3);
        if (!phd_at_least(w, 1)) continue;
        ErrorRates er = error_rates(f, w);
        if (er.eps_minus == 1) continue;
        BlockStats bs = alpha_stats(f, w);
        CHECK(bs.eps_plus == er.eps_plus);
        CHECK(bs.eps_minus == er.eps_minus);
        CHECK(bs.b_plus == 0);
        CHECK(bs.b_minus == er.eps_plus / (1 - er.eps_minus));
        CHECK(bs.a_minus == (1 - 2 * er.eps_plus - er.eps_minus) / (1 - er.eps_minus));
        CHECK(bs.expected_alpha == 1 - 2 * er.eps_plus);
        // E over mu restricted to either witness sign equals 1 - 2 eps+.
        auto alpha = alpha_values(f, w);
        for (int s : {+1, -1}) {
            Q num = 0, den = 0;
            for (uint64_t m = 0; m < 8; ++m) {
                Q v = w.eval_mask(m);
                if (v == 0 || sgn(v) != s) continue;
                num += qabs(v) * alpha[m];
                den += qabs(v);
            }
            if (den != 0) CHECK(num / den == bs.expected_alpha);
        }
    }
}

TEST_CASE("dual block composition matches its dense defining formula") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2 + trial % 2, m = 2 + (trial / 2) % 2;
        Witness theta = random_raw_witness(rng, n);
        Witness psi = random_raw_witness(rng, m);
        Witness comp = dbc(theta, psi);
        CHECK(comp.arity() == n * m);
        Q twon = qpow(Q(2), n);
        for (uint64_t mask = 0; mask < (uint64_t(1) << (n * m)); ++mask) {
            uint64_t sgnmask = 0;
            Q prod = 1;
            for (int i = 0; i < n; ++i) {
                uint64_t block = (mask >> (i * m)) & ((uint64_t(1) << m) - 1);
                Q v = psi.eval_mask(block);
                if (sgn(v) == -1) sgnmask |= uint64_t(1) << i;
                prod *= qabs(v);
            }
            CHECK(comp.eval_mask(mask) == twon * theta.eval_mask(sgnmask) * prod);
        }
    }
}

TEST_CASE("composition preserves unit mass and multiplies degrees") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        Witness theta = random_dense_witness(rng, 2);
        Witness psi = random_dense_witness(rng, 3);
        if (!phd_at_least(theta, 1) || !phd_at_least(psi, 1)) continue;
        Witness comp = dbc(theta, psi);
        CHECK(comp.l1() == 1);
        int pt = phd(theta), pp = phd(psi);
        if (pt != kPhdInfinite && pp != kPhdInfinite)
            CHECK(phd_at_least(comp, pt * pp));
    }
}

TEST_CASE("composition is associative after flattening") {
    std::mt19937_64 rng(13);
    Witness a = random_dense_witness(rng, 2);
    Witness b = random_dense_witness(rng, 2);
    Witness c = random_dense_witness(rng, 2);
    Witness left = dbc(dbc(a, b), c);
    Witness right = dbc(a, dbc(b, c));
    Witness fl = flatten_dbc(left), fr = flatten_dbc(right);
    for (uint64_t m = 0; m < 256; ++m) {
        CHECK(left.eval_mask(m) == right.eval_mask(m));
        CHECK(fl.eval_mask(m) == left.eval_mask(m));
        CHECK(fr.eval_mask(m) == left.eval_mask(m));
    }
}

TEST_CASE("modified composition is normalized and matches pointwise") {
    std::mt19937_64 rng(14);
    BoolFn f = make_or(2);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 8; ++trial) {
        Witness zeta = random_dense_witness(rng, 3);
        Witness xi = random_dense_witness(rng, 2);
        if (!phd_at_least(zeta, 1) || !phd_at_least(xi, 1)) continue;
        ErrorRates er = error_rates(f, xi);
        // The classifier maps into [-1,1] only when the total error rate is
        // at most 1; larger rates are outside the machinery's regime.
        if (er.eps_minus == 1 || er.eps > 1) continue;
        for (int eta : {0, 2}) {
            Witness gamma = modified_compose(zeta, xi, f, eta);
            CHECK(gamma.l1() == 1);
            // normalizer = p_eta at all coordinates 1 - 2 eps+ (1 when eta = 0,
            // where the modification is the identity and the plain composition
            // is returned).
            SymmetricMultilinear pe = build_p_eta(eta, 3);
            Q normalizer = pe.eval_real_uniform(1 - 2 * er.eps_plus);
            if (eta == 0) {
                CHECK(normalizer == 1);
            } else {
                const auto& mod = std::get<Witness::Modified>(gamma.rep());
                CHECK(mod.eps_plus == er.eps_plus);
                CHECK(mod.eps_minus == er.eps_minus);
                CHECK(mod.normalizer == normalizer);
            }
            // Pointwise: (zeta * xi)(x) p_eta(alpha(x_1..x_3)) / normalizer.
            Witness plain = dbc(zeta, xi);
            auto alpha = alpha_values(f, xi);
            for (uint64_t m = 0; m < 64; ++m) {
                std::vector<Q> a(3);
                for (int i = 0; i < 3; ++i) a[i] = alpha[(m >> (2 * i)) & 3];
                Q want = plain.eval_mask(m) * pe.eval_real(a) / normalizer;
                CHECK(gamma.eval_mask(m) == want);
            }
        }
        ++done;
    }
    CHECK(done == 8);
}

TEST_CASE("aggregate moments of compositions match dense enumeration") {
    std::mt19937_64 rng(15);
    BoolFn inner = make_thr(2, 3);
    BoolFn full = compose(make_or(3), inner);
    for (int trial = 0; trial < 5; ++trial) {
        Witness theta = random_dense_witness(rng, 3);
        Witness psi = random_dense_witness(rng, 3);
        Witness comp = dbc(theta, psi);
        for (int bound : {2, 5, 9}) {
            ComposedMoments cm = composed_moments(comp, full, bound);
            Q l1 = 0, corr = 0, above = 0;
            for (uint64_t m = 0; m < 512; ++m) {
                Q v = comp.eval_mask(m);
                l1 += qabs(v);
                corr += v * full.eval_mask(m);
                if (__builtin_popcountll(m) > bound) above += qabs(v);
            }
            CHECK(cm.l1 == l1);
            CHECK(cm.correlation == corr);
            CHECK(cm.mass_above == above);
        }
    }
}

TEST_CASE("sign-resolved weight masses tile the total mass") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 8; ++trial) {
        Witness w = random_raw_witness(rng, 5);
        SignWeightDist d = sign_weight_mass(w, 3);
        Q total = 0;
        for (int s = 0; s < 2; ++s) {
            REQUIRE(d.d[s].size() == 5);
            for (const Q& v : d.d[s]) {
                CHECK(v >= 0);
                total += v;
            }
        }
        CHECK(total == w.l1());
        // Bucket cap+1 equals mass above the cap.
        CHECK(d.d[0][4] + d.d[1][4] == mass_above(w, 3));
        CHECK(mass_above(w, 5) == 0);
        // Per-sign totals equal sign_mass.
        Q plus = 0, minus = 0;
        for (int t = 0; t < 5; ++t) {
            plus += d.d[0][t];
            minus += d.d[1][t];
        }
        CHECK(plus == sign_mass(w, +1));
        CHECK(minus == sign_mass(w, -1));
    }
}

TEST_CASE("pointwise difference and scaling") {
    std::mt19937_64 rng(17);
    Witness a = random_raw_witness(rng, 4);
    Witness b = random_raw_witness(rng, 4);
    Witness d = dense_difference(a, b);
    for (uint64_t m = 0; m < 16; ++m)
        CHECK(d.eval_mask(m) == a.eval_mask(m) - b.eval_mask(m));
    Witness s = a.scaled(Q(-2, 3));
    CHECK(s.l1() == Q(2, 3) * a.l1());
    for (uint64_t m = 0; m < 16; ++m)
        CHECK(s.eval_mask(m) == Q(-2, 3) * a.eval_mask(m));
}
