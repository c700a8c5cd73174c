#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adegkit/adeg.hpp"
#include "adegkit/boolfn.hpp"
#include "adegkit/witness.hpp"

namespace adk {

// Symmetric dual profile for the k-threshold: values omega(t) supported on
// S = {1..k} union {ell i^2 : 0 <= i <= m}, with vanishing moments through
// degree |S|-2 and a negative value at t = k.
struct OmegaProfile {
    int k = 0, T = 0;
    long long N = 0;
    Z ell;                       // spacing parameter 100k * ceil(N^{1/2k} 4^k log2 N)
    int m = 0;                   // largest m with ell * m^2 <= T
    std::vector<long long> support;
    std::vector<Q> raw;          // unnormalized values at t = 0..T
    std::vector<Q> omega;        // normalized: sum of |omega(t)| = 1
    Q raw_l1;
};

OmegaProfile build_omega(int k, int T, long long N);

// Symmetric witness on N bits with level mass omega(t) at weight t
// (point value omega(t)/C(N,t)).
Witness build_psi(const OmegaProfile& omega, long long N);

// Two-point witness: +1/2 on the all-ones input, -1/2 on the all-minus-ones.
Witness build_phi(int n);

// Best-correlation symmetric witness for OR_n among normalized witnesses
// with phd >= target_phd, by LP over signed level masses.
struct ThetaResult {
    Witness theta;
    Q correlation;
    int phd = 0;
    bool met_target = false;  // correlation >= target_corr
};
ThetaResult build_theta(int n, int target_phd, const Q& target_corr);

// Derived parameter block for the k-distinctness witness at list size R.
struct ParamBlock {
    long long R = 0;
    int k = 0;
    int outer_n = 0;     // R / 4^k
    long long fourk = 0; // 4^k
    int T = 0;           // floor(sqrt(R))
    Z sigma;             // (2k)^k
    long long N = 0;     // ceil(20 sqrt(sigma) R)
    int eta = 0;         // even, in [0, outer_n)
    Q c1, c2;
    std::optional<Q> c;  // explicit outer-phd constant; else measured phd is used
    int theta_phd = 0;
    // Asymptotic-regime quantities, reported only (never part of exact verdicts).
    double beta = 0, delta = 0;
};

struct DeriveOptions {
    std::optional<Q> c;
    Q c1 = Q(1, 10);
    Q c2 = Q(1, 25);
    int theta_phd = 1;  // used for eta when c is not given
};

ParamBlock derive_params(int k, long long R, const DeriveOptions& opt = {});

// The composed lower-bound witness: theta against OR composed over the
// amplified inner pair (phi * psi) against OR_{4^k} o THR^k_N, with the
// p_eta modification.
struct GammaBuild {
    ParamBlock params;
    OmegaProfile omega;
    Witness theta, phi, psi, phipsi, gamma;
    BoolFn inner_fn;  // OR_{4^k} o THR^k_N
    BoolFn full_fn;   // OR_{outer_n} o inner_fn
    Q theta_corr;
    int theta_phd = 0, phipsi_phd = 0;
    Q eps_plus, eps_minus;
    Q normalizer;           // p_eta(1-2eps+, ..., 1-2eps+)
    bool normalizer_above_one = false;  // holds only in the large-R regime
};

struct GammaOverrides {
    std::optional<int> eta;
    std::optional<int> theta_phd;
};

GammaBuild build_gamma(const ParamBlock& p, const GammaOverrides& o = {});

// Minimum-l1 witness agreeing with gamma above weight N with phd > D.
struct RsResult {
    Witness nu;
    Q norm;
    bool norm_ok = false;  // norm <= 1/10
};
RsResult rs_correct(const Witness& gamma, int N, int D);

// (gamma - nu) / l1(gamma - nu); nu identically zero returns gamma unchanged.
Witness build_final_W(const Witness& gamma, const Witness& nu);

enum class Verdict { Certified, RegimeOnly, Failed };
const char* verdict_name(Verdict v);

struct ClaimResult {
    std::string name;
    Verdict verdict;
    std::string measured, bound;
};

struct WitnessClaims {
    bool normalized = false;
    int phd_bound = -1;  // require phd >= phd_bound
    std::optional<Q> correlation_above;
    int zero_mass_above = -1;  // require zero mass on weights > this
};

struct VerifyReport {
    std::vector<ClaimResult> claims;
    bool all_certified() const;
};

VerifyReport verify_witness(const Witness& w, const BoolFn& f, const WitnessClaims& claims);

}  // namespace adk
