#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adegkit/boolfn.hpp"
#include "adegkit/lp.hpp"
#include "adegkit/poly.hpp"
#include "adegkit/witness.hpp"

namespace adk {

// Raised when an instance exceeds the enumeration/LP size caps.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least-max-error approximation of f by a polynomial of degree <= d, over
// f's (promise) domain. Symmetric functions reduce to a univariate LP over
// integer weights; dense functions use the Fourier-basis LP.
struct BestErrorResult {
    Q error;
    bool symmetric_path = false;
    UnivariatePoly weight_poly;    // symmetric path: q evaluated at |x|
    MultilinearPoly fourier_poly;  // dense path
    Witness dual_witness;          // extracted from the LP dual, normalized
    bool dual_valid = false;       // re-verified: l1 = 1, phd >= d+1
    Q dual_correlation = 0;
    bool strong_duality = false;
};

LPInstance best_error_lp(const BoolFn& f, int d);
BestErrorResult best_error(const BoolFn& f, int d);

struct AdegResult {
    int degree = 0;                // least d with E(f, d) <= eps
    std::vector<Q> errors;         // E(f, d) for d = 0..degree
    BestErrorResult at_degree;     // the succeeding LP
    bool has_witness = false;      // witness for degree-1 when degree >= 1
    Witness witness;               // normalized dual witness, phd >= degree
    Q witness_correlation = 0;
    int witness_phd = 0;
    AdegResult() : witness(Witness::dense(0, {Q(0)})) {}
};

AdegResult adeg(const BoolFn& f, const Q& eps, int max_d = -1);

// Best degree-d approximation error of the conjunction requiring the sizeA
// coordinates of A to be +1 and the sizeB coordinates of B to be -1 (as a
// 0/1-valued target), over the promise |x| <= weight_bound on n bits.
// Group symmetrization reduces it to a three-way weight-profile LP.
struct ConjApprox {
    Q error;
    int d;
    // Coefficients of monomials wA^a wB^b wC^c with a+b+c <= d, where the
    // w's count -1 entries in A, B and the remaining coordinates.
    std::vector<std::tuple<int, int, int, Q>> coeffs;
    Q eval(int wA, int wB, int wC) const;
};
ConjApprox conj_approx(int n, int sizeA, int sizeB, int d, int weight_bound);
Q conj_best_error(int n, int sizeA, int sizeB, int d, int weight_bound);

// Minimum-l1 correction: nu agrees with target on |x| > N and has
// <nu, chi_S> = 0 for all |S| <= D. Dense targets (arity <= 12) and
// symmetric targets supported; zero target above N short-circuits to zero.
Witness rs_lp(const Witness& target, int N, int D, Q* achieved_norm = nullptr);

}  // namespace adk
