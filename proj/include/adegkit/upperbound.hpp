#pragma once

#include <vector>

#include "adegkit/adeg.hpp"
#include "adegkit/boolfn.hpp"
#include "adegkit/poly.hpp"

namespace adk {

// Scaled Chebyshev approximation of OR over R +-1 block outputs, as a
// univariate polynomial in the sum of the blocks.
struct OuterPoly {
    int m = 0;
    long long R = 0;
    UnivariatePoly q;         // evaluate at sum of block outputs in [-R, R]
    Q error_bound;            // 2R/(R + m^2)
    Q measured_error;         // exact max over the R+1 achievable sums
};

OuterPoly build_outer(int m, long long R);

// THR^k_N written exactly as 2 sum_{i<k} EXACT^i_N - 1 over monotone-literal
// conjunctions; the tracked l1 bound is the exact coefficient norm.
ConjunctionComb expand_thr_conjunctions(int k, int N);

// Outer Chebyshev over R blocks, each block's threshold expanded into
// conjunctions and every size-i conjunction replaced by its degree-d
// LP-optimal approximant on the weight-<=N promise.
struct ApproximantReport {
    int k = 0, N = 0, R = 0, m = 0, d = 0;
    OuterPoly outer;
    ConjunctionComb thr_comb;
    std::vector<ConjApprox> conj_by_size;  // index i < k: |S| = i replacement
    Q max_conj_error;
    Q rho_bound;        // l1-chain bound on the conjunction norm of the whole
    int total_degree = 0;
    bool measured = false;
    Q measured_error;   // exact max over weight profiles summing to <= N
    Q chain_bound;      // outer error bound + rho_bound * max_conj_error
};

// m defaults to ceil(sqrt(6R)); d defaults to N (exact replacements).
ApproximantReport build_approximant(int k, int N, int R, int m = -1, int d = -1);

// Value of one block's replaced threshold at block weight w.
Q approximant_block_value(const ApproximantReport& rep, int w);
// Value of the full approximant at the given per-block weights.
Q approximant_value(const ApproximantReport& rep, const std::vector<int>& weights);

// Substitutes the per-value indicator polynomials of the list encoding into
// the approximant: block j's inputs become the indicators [item i = j],
// each of degree bits_per_item.
struct DistLiftReport {
    int k = 0, N = 0, R = 0;
    int bits_per_item = 0;
    int total_degree = 0;
};
DistLiftReport dist_lift(const ApproximantReport& rep);
// Exact value of the lifted polynomial on an encoded list input.
Q eval_lifted(const ApproximantReport& rep, const BoolFn& dist_fn, uint64_t mask);

}  // namespace adk
