#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adegkit/boolfn.hpp"
#include "adegkit/rational.hpp"

namespace adk {

// Power-basis univariate polynomial with exact rational coefficients.
class UnivariatePoly {
  public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UnivariatePoly constant(const Q& v) { return UnivariatePoly({v}); }
    static UnivariatePoly x() { return UnivariatePoly({Q(0), Q(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    const std::vector<Q>& coeffs() const { return c_; }
    Q coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Q(0); }

    Q eval(const Q& x) const {
        Q r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Q coeff_l1() const {
        Q s = 0;
        for (const Q& a : c_) s += qabs(a);
        return s;
    }

    UnivariatePoly operator+(const UnivariatePoly& o) const;
    UnivariatePoly operator-(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const UnivariatePoly& o) const;
    UnivariatePoly scaled(const Q& a) const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Q> c_;
};

// T_d via the recurrence T_d = 2x T_{d-1} - T_{d-2}.
UnivariatePoly chebyshev(int d);

// Unique polynomial of degree <= points.size()-1 through (xs[i], ys[i]).
UnivariatePoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys);

// Multilinear polynomial in the Fourier (parity) basis; subsets as bitmasks.
class MultilinearPoly {
  public:
    MultilinearPoly() = default;
    MultilinearPoly(int n, std::map<uint32_t, Q> coeffs);

    int n() const { return n_; }
    int degree() const;
    const std::map<uint32_t, Q>& coeffs() const { return c_; }
    Q coeff(uint32_t S) const {
        auto it = c_.find(S);
        return it == c_.end() ? Q(0) : it->second;
    }

    Q fourier_l1() const;
    Q eval_mask(uint64_t mask) const;            // at a hypercube point
    Q eval_real(const std::vector<Q>& y) const;  // multilinear extension

  private:
    int n_ = 0;
    std::map<uint32_t, Q> c_;
};

// Exact Fourier expansion of a dense value table (index = mask), n <= 12.
MultilinearPoly fourier_expand(int n, const std::vector<Q>& values);
MultilinearPoly fourier_expand(const BoolFn& f);

// Symmetric real-valued function given by its value at each Hamming weight,
// evaluated anywhere in [-1,1]^n through the unique multilinear extension.
class SymmetricMultilinear {
  public:
    SymmetricMultilinear() = default;
    SymmetricMultilinear(int n, std::vector<Q> profile);

    int n() const { return n_; }
    const std::vector<Q>& profile() const { return profile_; }
    Q at_weight(int w) const { return profile_[w]; }
    int degree() const;  // degree of the multilinear extension

    // Multilinear-extension value; entries of y must lie in [-1,1].
    Q eval_real(const std::vector<Q>& y) const;
    Q eval_real_uniform(const Q& y) const;  // all coordinates equal

    MultilinearPoly to_multilinear() const;  // n <= 20
    Q fourier_l1() const;

  private:
    int n_ = 0;
    std::vector<Q> profile_;           // values at weights 0..n
    std::vector<Q> elementary_basis_;  // coefficients over e_j((1-z)/2)
};

// p_eta(z) = (-1)^eta prod_{i=1}^eta (|z|-i); eta even, 0 <= eta < n.
SymmetricMultilinear build_p_eta(int eta, int n);

// Linear combination of monotone-literal conjunctions with a tracked l1
// coefficient bound (pairs with A and B overlapping are the zero function
// and never stored).
class ConjunctionComb {
  public:
    struct Term {
        uint32_t A, B;  // conjunction is prod_{i in A}(1+x_i)/2 prod_{j in B}(1-x_j)/2
        Q coeff;
    };

    ConjunctionComb() = default;
    ConjunctionComb(int n, std::vector<Term> terms);
    ConjunctionComb(int n, std::vector<Term> terms, Q tracked_bound);

    int n() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    Q eval_mask(uint64_t mask) const;
    Q coeff_l1() const;
    Q tracked_bound() const { return tracked_; }

    ConjunctionComb operator+(const ConjunctionComb& o) const;
    ConjunctionComb operator*(const ConjunctionComb& o) const;
    ConjunctionComb scaled(const Q& a) const;

  private:
    int n_ = 0;
    std::vector<Term> terms_;
    Q tracked_ = 0;
};

inline Q rho_upper(const ConjunctionComb& c) { return c.tracked_bound(); }

// Exact conjunction norm rho(f) over the full disjoint-pair basis, by LP.
// Dense values indexed by mask; n <= 8.
Q rho_exact(int n, const std::vector<Q>& values);

// Average of p over permutations, as a function of Hamming weight.
UnivariatePoly symmetrize(const MultilinearPoly& p);

// Krawtchouk-type sum: sum over |x|=w of chi_S(x) for |S|=s on n bits.
Z parity_level_sum(int n, int s, int w);

}  // namespace adk
