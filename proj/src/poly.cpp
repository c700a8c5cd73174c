#include "adegkit/poly.hpp"

#include <bit>
#include <stdexcept>

namespace adk {

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
    std::vector<Q> r(std::max(c_.size(), o.c_.size()), Q(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UnivariatePoly(std::move(r));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
    return *this + o.scaled(Q(-1));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
    if (c_.empty() || o.c_.empty()) return UnivariatePoly();
    std::vector<Q> r(c_.size() + o.c_.size() - 1, Q(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UnivariatePoly(std::move(r));
}

UnivariatePoly UnivariatePoly::scaled(const Q& a) const {
    std::vector<Q> r = c_;
    for (Q& v : r) v *= a;
    return UnivariatePoly(std::move(r));
}

UnivariatePoly chebyshev(int d) {
    if (d < 0) throw std::invalid_argument("chebyshev: d >= 0");
    UnivariatePoly prev = UnivariatePoly::constant(1);
    if (d == 0) return prev;
    UnivariatePoly cur = UnivariatePoly::x();
    UnivariatePoly two_x({Q(0), Q(2)});
    for (int i = 2; i <= d; ++i) {
        UnivariatePoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

UnivariatePoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys) {
    // Newton divided differences.
    size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("interpolate: size mismatch");
    std::vector<Q> dd = ys;
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    UnivariatePoly result = UnivariatePoly::constant(dd.empty() ? Q(0) : dd[0]);
    UnivariatePoly basis = UnivariatePoly::constant(1);
    for (size_t i = 1; i < n; ++i) {
        basis = basis * UnivariatePoly({-xs[i - 1], Q(1)});
        result = result + basis.scaled(dd[i]);
    }
    return result;
}

MultilinearPoly::MultilinearPoly(int n, std::map<uint32_t, Q> coeffs)
    : n_(n), c_(std::move(coeffs)) {
    for (auto it = c_.begin(); it != c_.end();)
        it = it->second == 0 ? c_.erase(it) : std::next(it);
}

int MultilinearPoly::degree() const {
    int d = 0;
    for (const auto& [S, v] : c_) d = std::max(d, std::popcount(S));
    return d;
}

Q MultilinearPoly::fourier_l1() const {
    Q s = 0;
    for (const auto& [S, v] : c_) s += qabs(v);
    return s;
}

Q MultilinearPoly::eval_mask(uint64_t mask) const {
    Q r = 0;
    for (const auto& [S, v] : c_)
        r += std::popcount(S & mask) % 2 ? -v : v;
    return r;
}

Q MultilinearPoly::eval_real(const std::vector<Q>& y) const {
    Q r = 0;
    for (const auto& [S, v] : c_) {
        Q term = v;
        for (int i = 0; i < n_; ++i)
            if (S >> i & 1) term *= y[i];
        r += term;
    }
    return r;
}

MultilinearPoly fourier_expand(int n, const std::vector<Q>& values) {
    if (n > 12) throw std::length_error("fourier_expand: arity cap is 12");
    if (values.size() != uint64_t(1) << n)
        throw std::invalid_argument("fourier_expand: table size mismatch");
    // In-place Walsh-Hadamard transform.
    std::vector<Q> a = values;
    for (int bit = 0; bit < n; ++bit)
        for (uint64_t m = 0; m < a.size(); ++m)
            if (!(m >> bit & 1)) {
                Q u = a[m], v = a[m | (uint64_t(1) << bit)];
                a[m] = u + v;
                a[m | (uint64_t(1) << bit)] = u - v;
            }
    Q scale = Q(1) / Q(Z(1) << n);
    std::map<uint32_t, Q> coeffs;
    for (uint64_t S = 0; S < a.size(); ++S)
        if (a[S] != 0) coeffs[static_cast<uint32_t>(S)] = a[S] * scale;
    return MultilinearPoly(n, std::move(coeffs));
}

MultilinearPoly fourier_expand(const BoolFn& f) {
    auto dense = f.dense_expand();
    std::vector<Q> vals(dense.begin(), dense.end());
    return fourier_expand(f.arity(), vals);
}

SymmetricMultilinear::SymmetricMultilinear(int n, std::vector<Q> profile)
    : n_(n), profile_(std::move(profile)) {
    if (profile_.size() != static_cast<size_t>(n + 1))
        throw std::invalid_argument("SymmetricMultilinear: profile size mismatch");
    // Change of basis onto elementary symmetric polynomials in (1-z_i)/2:
    // profile(t) = sum_j c_j C(t,j), inverted by finite differences.
    elementary_basis_.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        Q c = 0;
        for (int t = 0; t <= j; ++t) {
            Q term = Q(binom(j, t)) * profile_[t];
            c += (j - t) % 2 ? -term : term;
        }
        elementary_basis_[j] = c;
    }
}

int SymmetricMultilinear::degree() const {
    int d = -1;
    for (int j = 0; j <= n_; ++j)
        if (elementary_basis_[j] != 0) d = j;
    return std::max(d, 0);
}

Q SymmetricMultilinear::eval_real(const std::vector<Q>& y) const {
    if (y.size() != static_cast<size_t>(n_))
        throw std::invalid_argument("eval_real: dimension mismatch");
    for (const Q& v : y)
        if (v < -1 || v > 1) throw std::domain_error("eval_real: y outside [-1,1]^n");
    int d = degree();
    // e_j of the w_i = (1-y_i)/2 by the product recurrence, truncated at d.
    std::vector<Q> e(d + 1, Q(0));
    e[0] = 1;
    for (int i = 0; i < n_; ++i) {
        Q w = (1 - y[i]) / 2;
        for (int j = std::min(d, i + 1); j >= 1; --j) e[j] += w * e[j - 1];
    }
    Q r = 0;
    for (int j = 0; j <= d; ++j) r += elementary_basis_[j] * e[j];
    return r;
}

Q SymmetricMultilinear::eval_real_uniform(const Q& y) const {
    if (y < -1 || y > 1) throw std::domain_error("eval_real_uniform: y outside [-1,1]");
    Q w = (1 - y) / 2;
    Q r = 0, wp = 1;
    for (int j = 0; j <= degree(); ++j) {
        r += elementary_basis_[j] * Q(binom(n_, j)) * wp;
        wp *= w;
    }
    return r;
}

Z parity_level_sum(int n, int s, int w) {
    // Fixed S with |S| = s; split each weight-w point by how many of its -1
    // coordinates land inside S.
    Z sum = 0;
    for (int j = 0; j <= s; ++j) {
        Z term = binom(s, j) * binom(n - s, w - j);
        sum += j % 2 ? -term : term;
    }
    return sum;
}

MultilinearPoly SymmetricMultilinear::to_multilinear() const {
    if (n_ > 20) throw std::length_error("to_multilinear: arity cap is 20");
    // hat(S) depends only on |S|.
    Q scale = Q(1) / Q(Z(1) << n_);
    std::vector<Q> hat(n_ + 1);
    for (int s = 0; s <= n_; ++s) {
        Q sum = 0;
        for (int t = 0; t <= n_; ++t) sum += profile_[t] * Q(parity_level_sum(n_, s, t));
        hat[s] = sum * scale;
    }
    std::map<uint32_t, Q> coeffs;
    for (uint32_t S = 0; S < (uint32_t(1) << n_); ++S) {
        const Q& v = hat[std::popcount(S)];
        if (v != 0) coeffs[S] = v;
    }
    return MultilinearPoly(n_, std::move(coeffs));
}

Q SymmetricMultilinear::fourier_l1() const {
    Q scale = Q(1) / Q(Z(1) << n_);
    Q total = 0;
    for (int s = 0; s <= n_; ++s) {
        Q sum = 0;
        for (int t = 0; t <= n_; ++t) sum += profile_[t] * Q(parity_level_sum(n_, s, t));
        total += Q(binom(n_, s)) * qabs(sum * scale);
    }
    return total;
}

SymmetricMultilinear build_p_eta(int eta, int n) {
    if (eta < 0 || eta >= n) throw std::invalid_argument("build_p_eta: need 0 <= eta < n");
    if (eta % 2 != 0) throw std::invalid_argument("build_p_eta: eta must be even");
    std::vector<Q> profile(n + 1);
    for (int w = 0; w <= n; ++w) {
        Q v = 1;
        for (int i = 1; i <= eta; ++i) v *= Q(w - i);
        profile[w] = eta % 2 ? -v : v;
    }
    return SymmetricMultilinear(n, std::move(profile));
}

ConjunctionComb::ConjunctionComb(int n, std::vector<Term> terms)
    : n_(n), terms_(std::move(terms)) {
    for (const Term& t : terms_)
        if (t.A & t.B)
            throw std::invalid_argument("ConjunctionComb: overlapping A,B is the zero function");
    tracked_ = coeff_l1();
}

ConjunctionComb::ConjunctionComb(int n, std::vector<Term> terms, Q tracked_bound)
    : ConjunctionComb(n, std::move(terms)) {
    if (tracked_bound < coeff_l1())
        throw std::invalid_argument("ConjunctionComb: tracked bound below coefficient l1");
    tracked_ = std::move(tracked_bound);
}

Q ConjunctionComb::eval_mask(uint64_t mask) const {
    Q r = 0;
    for (const Term& t : terms_) {
        // A requires +1 entries (bits clear), B requires -1 entries (bits set).
        if ((mask & t.A) == 0 && (mask & t.B) == t.B) r += t.coeff;
    }
    return r;
}

Q ConjunctionComb::coeff_l1() const {
    Q s = 0;
    for (const Term& t : terms_) s += qabs(t.coeff);
    return s;
}

ConjunctionComb ConjunctionComb::operator+(const ConjunctionComb& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ConjunctionComb: arity mismatch");
    std::vector<Term> merged = terms_;
    merged.insert(merged.end(), o.terms_.begin(), o.terms_.end());
    ConjunctionComb r(n_, std::move(merged));
    r.tracked_ = tracked_ + o.tracked_;
    return r;
}

ConjunctionComb ConjunctionComb::operator*(const ConjunctionComb& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ConjunctionComb: arity mismatch");
    std::vector<Term> prod;
    for (const Term& a : terms_)
        for (const Term& b : o.terms_) {
            uint32_t A = a.A | b.A, B = a.B | b.B;
            if (A & B) continue;  // contradictory literals: zero function
            prod.push_back({A, B, a.coeff * b.coeff});
        }
    ConjunctionComb r(n_, std::move(prod));
    r.tracked_ = tracked_ * o.tracked_;
    return r;
}

ConjunctionComb ConjunctionComb::scaled(const Q& a) const {
    std::vector<Term> t = terms_;
    for (Term& x : t) x.coeff *= a;
    ConjunctionComb r(n_, std::move(t));
    r.tracked_ = tracked_ * qabs(a);
    return r;
}

UnivariatePoly symmetrize(const MultilinearPoly& p) {
    int n = p.n();
    std::vector<Q> level_sum(n + 1, Q(0));  // sum of hat(S) by |S|
    for (const auto& [S, v] : p.coeffs()) level_sum[std::popcount(S)] += v;
    std::vector<Q> xs(n + 1), ys(n + 1);
    for (int w = 0; w <= n; ++w) {
        Q val = 0;
        for (int s = 0; s <= n; ++s)
            if (level_sum[s] != 0) val += level_sum[s] * Q(parity_level_sum(n, s, w));
        xs[w] = w;
        ys[w] = val / Q(binom(n, w));
    }
    return interpolate(xs, ys);
}

}  // namespace adk
