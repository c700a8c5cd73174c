#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "adegkit/boolfn.hpp"
#include "adegkit/poly.hpp"
#include "adegkit/rational.hpp"

namespace adk {

// phd of the identically-zero witness; excluded from all theorem checks.
constexpr int kPhdInfinite = std::numeric_limits<int>::max();

// A real-valued function on the hypercube: dense table, symmetric weight
// profile (level mass t spread uniformly over the C(n,t) points of weight t),
// dual block composition, or the p_eta-modified composition. Immutable.
class Witness {
  public:
    static constexpr int kDenseBitsCap = 20;

    struct Dense {
        std::vector<Q> values;  // indexed by mask
    };
    struct Symmetric {
        std::vector<Q> level;  // signed total mass per weight; point value level[t]/C(n,t)
    };
    struct Composed {
        std::shared_ptr<const Witness> outer, inner;
    };
    struct Modified {
        std::shared_ptr<const Witness> zeta, xi;
        std::shared_ptr<const BoolFn> f;  // target of the inner witness xi
        int eta;
        Q eps_plus, eps_minus, a_minus;
        SymmetricMultilinear p_eta;  // on zeta's arity
        Q normalizer;                // p_eta(1-2eps+,...,1-2eps+)
    };

    static Witness dense(int n, std::vector<Q> values);
    static Witness symmetric(int n, std::vector<Q> level_masses);

    int arity() const { return arity_; }
    const std::variant<Dense, Symmetric, Composed, Modified>& rep() const { return rep_; }
    bool is_symmetric() const { return std::holds_alternative<Symmetric>(rep_); }
    bool is_composed() const { return std::holds_alternative<Composed>(rep_); }
    bool is_modified() const { return std::holds_alternative<Modified>(rep_); }
    bool dense_capable() const;

    Q eval_mask(uint64_t mask) const;
    Q eval(const SignVector& x) const { return eval_mask(x.mask()); }
    std::vector<Q> dense_expand() const;

    Q l1() const { return l1_; }
    bool normalized() const { return l1_ == 1; }
    Witness scaled(const Q& a) const;

  private:
    friend Witness dbc(const Witness&, const Witness&);
    friend Witness modified_compose(const Witness&, const Witness&, const BoolFn&, int);

    int arity_ = 0;
    std::variant<Dense, Symmetric, Composed, Modified> rep_;
    Q l1_ = 0;
};

struct ErrorRates {
    Q delta_plus, delta_minus;  // witness mass on sign-disagreement, by witness sign
    Q eps_plus, eps_minus;      // conditional rates; eps+- = 2 delta+- when phd >= 1
    Q eps;
};

// Mass of the witness split by (witness sign, function value).
struct SignFnMass {
    Q m[2][2] = {{0, 0}, {0, 0}};  // [0]=witness>0 / f=+1, [1]=witness<0 / f=-1
    Q total() const { return m[0][0] + m[0][1] + m[1][0] + m[1][1]; }
};

// Per-input classification feeding p_eta, and its per-sign statistics.
struct BlockStats {
    Q a_minus;           // alpha value on true-negative inputs
    Q b_plus, b_minus;   // Pi-parameters: b+ = 0, b- = eps+/(1-eps-)
    Q eps_plus, eps_minus;
    Q expected_alpha;    // E_{mu_z}[alpha] = 1 - 2 eps+, either sign of z
};

Q correlation(const BoolFn& f, const Witness& psi);
SignFnMass sign_fn_mass(const Witness& psi, const BoolFn& f);
ErrorRates error_rates(const BoolFn& f, const Witness& psi);

BlockStats alpha_stats(const BoolFn& f, const Witness& psi);
// Dense per-input alpha values (0 on zero-mass inputs, which are excluded from mu).
std::vector<Q> alpha_values(const BoolFn& f, const Witness& psi);

// <psi, chi_S> and <|psi|, chi_S>.
Q subset_moment(const Witness& psi, uint64_t S);
Q subset_abs_moment(const Witness& psi, uint64_t S);

// True iff <psi, p> = 0 for every polynomial of degree < bound.
bool phd_at_least(const Witness& psi, int bound);
int phd(const Witness& psi, int max_check = -1);

// Witness mass by sign: sum of |psi(x)| over sgn(psi(x)) = s, psi(x) != 0.
Q sign_mass(const Witness& psi, int s);

// Mass at each Hamming weight 0..cap per witness sign; index cap+1 collects
// everything above cap.
struct SignWeightDist {
    std::vector<Q> d[2];
};
SignWeightDist sign_weight_mass(const Witness& psi, int cap);
Q mass_above(const Witness& psi, int bound);

// Dual block composition: 2^n theta(sgn psi(x_1),...) prod |psi(x_i)|.
Witness dbc(const Witness& theta, const Witness& psi);

// (zeta * xi) . (p_eta o alpha) / p_eta(1-2eps+,...,1-2eps+), alpha taken
// with respect to f and xi.
Witness modified_compose(const Witness& zeta, const Witness& xi, const BoolFn& f, int eta);

// Right-associates nested compositions so the innermost factor is a leaf.
Witness flatten_dbc(const Witness& w);

// Aggregated statistics of a composed witness computed without enumerating
// the full hypercube.
struct ComposedMoments {
    Q l1;
    Q correlation;  // with the supplied target function
    Q mass_above;
};
ComposedMoments composed_moments(const Witness& w, const BoolFn& target, int weight_bound);

// Pointwise difference on dense-capable witnesses (final-witness assembly).
Witness dense_difference(const Witness& a, const Witness& b);

}  // namespace adk
