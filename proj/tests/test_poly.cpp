#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adegkit/poly.hpp"

using namespace adk;

TEST_CASE("Chebyshev polynomials match closed forms") {
    UnivariatePoly t3 = chebyshev(3);  // 4x^3 - 3x
    CHECK(t3.coeff(0) == 0);
    CHECK(t3.coeff(1) == -3);
    CHECK(t3.coeff(2) == 0);
    CHECK(t3.coeff(3) == 4);
    CHECK(chebyshev(0).eval(Q(7)) == 1);
    CHECK(chebyshev(1).eval(Q(7)) == 7);
    // T_d(1) = 1 and |T_d| <= 1 on the grid cos-free sanity points.
    for (int d = 0; d <= 12; ++d) {
        CHECK(chebyshev(d).eval(Q(1)) == 1);
        CHECK(chebyshev(d).eval(Q(-1)) == (d % 2 ? -1 : 1));
    }
}

TEST_CASE("Chebyshev coefficient l1 is at most 3^d") {
    Q bound = 1;
    for (int d = 0; d <= 25; ++d) {
        CHECK(chebyshev(d).coeff_l1() <= bound);
        bound *= 3;
    }
}

TEST_CASE("interpolation reproduces the data and the polynomial") {
    std::vector<Q> xs = {Q(0), Q(1), Q(2), Q(-1)};
    std::vector<Q> ys = {Q(1), Q(0), Q(5), Q(1, 2)};
    UnivariatePoly p = interpolate(xs, ys);
    CHECK(p.degree() <= 3);
    for (size_t i = 0; i < xs.size(); ++i) CHECK(p.eval(xs[i]) == ys[i]);
    // Interpolating samples of a known polynomial returns it exactly.
    UnivariatePoly t4 = chebyshev(4);
    std::vector<Q> gx, gy;
    for (int i = 0; i <= 4; ++i) {
        Q x(i, 3);
        x.canonicalize();
        gx.push_back(x);
        gy.push_back(t4.eval(x));
    }
    UnivariatePoly back = interpolate(gx, gy);
    for (int i = 0; i <= 4; ++i) CHECK(back.coeff(i) == t4.coeff(i));
}

TEST_CASE("Fourier expansion of OR on two bits") {
    MultilinearPoly p = fourier_expand(make_or(2));
    CHECK(p.coeff(0b00) == Q(-1, 2));
    CHECK(p.coeff(0b01) == Q(1, 2));
    CHECK(p.coeff(0b10) == Q(1, 2));
    CHECK(p.coeff(0b11) == Q(1, 2));
    CHECK(p.fourier_l1() == 2);
    for (uint64_t m = 0; m < 4; ++m) CHECK(p.eval_mask(m) == (m == 0 ? 1 : -1));
}

TEST_CASE("Fourier expansion inverts pointwise for random tables") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 3 + trial % 3;
        std::vector<Q> vals(uint64_t(1) << n);
        for (Q& v : vals) {
            v = Q(num(rng), den(rng));
            v.canonicalize();
        }
        MultilinearPoly p = fourier_expand(n, vals);
        for (uint64_t m = 0; m < vals.size(); ++m) CHECK(p.eval_mask(m) == vals[m]);
    }
}

TEST_CASE("multilinear extension evaluates off the cube") {
    MultilinearPoly p = fourier_expand(make_or(2));
    // At y = (0, 0) every parity with a variable vanishes.
    CHECK(p.eval_real({Q(0), Q(0)}) == Q(-1, 2));
    CHECK(p.eval_real({Q(1), Q(1)}) == 1);
}

TEST_CASE("symmetric profile agrees with its full multilinear expansion") {
    SymmetricMultilinear s(4, {Q(1), Q(1, 2), Q(0), Q(-1, 3), Q(-1)});
    MultilinearPoly p = s.to_multilinear();
    for (uint64_t m = 0; m < 16; ++m)
        CHECK(p.eval_mask(m) == s.at_weight(__builtin_popcountll(m)));
    CHECK(s.fourier_l1() == p.fourier_l1());
    std::vector<Q> y = {Q(1, 3), Q(1, 3), Q(1, 3), Q(1, 3)};
    CHECK(s.eval_real(y) == p.eval_real(y));
    CHECK(s.eval_real_uniform(Q(1, 3)) == p.eval_real(y));
}

TEST_CASE("p_eta values, degree and normalizer") {
    // p_0 is identically 1.
    SymmetricMultilinear p0 = build_p_eta(0, 3);
    for (int w = 0; w <= 3; ++w) CHECK(p0.at_weight(w) == 1);
    // At Hamming weight w the value is (w-1)(w-2)...(w-eta).
    int n = 5, eta = 2;
    SymmetricMultilinear p2 = build_p_eta(eta, n);
    for (int w = 0; w <= n; ++w) CHECK(p2.at_weight(w) == Q((w - 1) * (w - 2)));
    CHECK(p2.degree() == eta);
    // Value at the all-plus point (weight 0) is eta!.
    CHECK(p2.at_weight(0) == Q(factorial(eta)));
    // Vanishes at weights 1..eta.
    for (int w = 1; w <= eta; ++w) CHECK(p2.at_weight(w) == 0);
    // Fourier l1 within eta! C(n + eta, eta).
    CHECK(p2.fourier_l1() <= Q(factorial(eta) * binom(n + eta, eta)));
    // Odd or out-of-range eta is rejected.
    CHECK_THROWS_AS((void)build_p_eta(1, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)build_p_eta(4, 4), std::invalid_argument);
}

TEST_CASE("parity level sums match brute force") {
    for (int n = 1; n <= 8; ++n)
        for (int s = 0; s <= n; ++s)
            for (int w = 0; w <= n; ++w) {
                uint64_t S = (uint64_t(1) << s) - 1;  // fixed subset {0..s-1}
                Z direct = 0;
                for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
                    if (__builtin_popcountll(m) != w) continue;
                    direct += (__builtin_popcountll(m & S) % 2) ? -1 : 1;
                }
                CHECK(parity_level_sum(n, s, w) == direct);
            }
}

TEST_CASE("symmetrization averages over permutations") {
    // chi_{1} symmetrizes to the weight polynomial (n - 2w)/n on n bits.
    int n = 4;
    MultilinearPoly p(n, {{0b0001, Q(1)}});
    UnivariatePoly u = symmetrize(p);
    for (int w = 0; w <= n; ++w) {
        Q want(n - 2 * w, n);
        want.canonicalize();
        CHECK(u.eval(Q(w)) == want);
    }
    // A symmetric function symmetrizes to itself.
    SymmetricMultilinear s(3, {Q(2), Q(0), Q(-1), Q(1, 2)});
    UnivariatePoly us = symmetrize(s.to_multilinear());
    for (int w = 0; w <= 3; ++w) CHECK(us.eval(Q(w)) == s.at_weight(w));
}

TEST_CASE("conjunction combinations evaluate and combine exactly") {
    // (1+x0)/2 (1-x1)/2 on 3 bits: 1 iff x0 = +1 and x1 = -1.
    ConjunctionComb c(3, {{0b001, 0b010, Q(1)}});
    for (uint64_t m = 0; m < 8; ++m) {
        bool on = !(m & 1) && (m & 2);
        CHECK(c.eval_mask(m) == (on ? 1 : 0));
    }
    CHECK(c.coeff_l1() == 1);
    ConjunctionComb d(3, {{0b000, 0b000, Q(1, 2)}});  // constant 1/2
    ConjunctionComb sum = c + d;
    ConjunctionComb prod = c * d;
    ConjunctionComb sc = c.scaled(Q(-3));
    for (uint64_t m = 0; m < 8; ++m) {
        CHECK(sum.eval_mask(m) == c.eval_mask(m) + Q(1, 2));
        CHECK(prod.eval_mask(m) == c.eval_mask(m) * Q(1, 2));
        CHECK(sc.eval_mask(m) == Q(-3) * c.eval_mask(m));
    }
}

TEST_CASE("exact conjunction norm of a single conjunction is its coefficient") {
    ConjunctionComb c(4, {{0b0011, 0b0100, Q(1)}});
    std::vector<Q> vals(16);
    for (uint64_t m = 0; m < 16; ++m) vals[m] = c.eval_mask(m);
    CHECK(rho_exact(4, vals) == 1);
    for (uint64_t m = 0; m < 16; ++m) vals[m] *= Q(3, 2);
    CHECK(rho_exact(4, vals) == Q(3, 2));
    // The all-zero function has norm zero.
    CHECK(rho_exact(3, std::vector<Q>(8, Q(0))) == 0);
}

TEST_CASE("exact conjunction norm is at most the tracked bound") {
    ConjunctionComb c(3, {{0b001, 0b010, Q(1)},
                          {0b110, 0b000, Q(-1, 2)},
                          {0b000, 0b101, Q(1, 3)}});
    std::vector<Q> vals(8);
    for (uint64_t m = 0; m < 8; ++m) vals[m] = c.eval_mask(m);
    CHECK(rho_exact(3, vals) <= c.coeff_l1());
}
