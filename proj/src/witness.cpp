#include "adegkit/witness.hpp"

#include <array>
#include <bit>
#include <functional>
#include <stdexcept>

#include "adegkit/parallel.hpp"

namespace adk {

namespace {

int popcnt(uint64_t m) { return std::popcount(m); }

[[noreturn]] void unsupported(const char* what) {
    throw std::logic_error(std::string("witness: unsupported structure for ") + what);
}

// Clamped convolution: index cap+1 absorbs all weight above cap.
std::vector<Q> conv_clamped(const std::vector<Q>& a, const std::vector<Q>& b, int cap) {
    std::vector<Q> r(cap + 2, Q(0));
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            if (b[j] == 0) continue;
            r[std::min(i + j, cap + 1)] += a[i] * b[j];
        }
    }
    return r;
}

std::vector<Q> unit_dist(int cap) {
    std::vector<Q> r(cap + 2, Q(0));
    r[0] = 1;
    return r;
}

// Per-sign mass of w weighted per coordinate: r[s] = sum over x with
// sgn w(x) = s, w(x) != 0, of |w(x)| * sel_plus^{#+1 bits} * sel_minus^{#-1 bits}.
std::array<Q, 2> sign_support_sum(const Witness& w, const Q& sel_plus, const Q& sel_minus) {
    const int n = w.arity();
    std::array<Q, 2> out{Q(0), Q(0)};
    if (const auto* d = std::get_if<Witness::Dense>(&w.rep())) {
        std::vector<Q> pw_plus(n + 1, Q(1)), pw_minus(n + 1, Q(1));
        for (int i = 1; i <= n; ++i) {
            pw_plus[i] = pw_plus[i - 1] * sel_plus;
            pw_minus[i] = pw_minus[i - 1] * sel_minus;
        }
        for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
            const Q& v = d->values[m];
            if (v == 0) continue;
            int t = popcnt(m);
            out[v > 0 ? 0 : 1] += qabs(v) * pw_minus[t] * pw_plus[n - t];
        }
        return out;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&w.rep())) {
        Q pm = 1;
        std::vector<Q> pw_plus(n + 1, Q(1));
        for (int i = 1; i <= n; ++i) pw_plus[i] = pw_plus[i - 1] * sel_plus;
        for (int t = 0; t <= n; ++t) {
            const Q& lv = s->level[t];
            if (lv != 0) out[lv > 0 ? 0 : 1] += qabs(lv) * pm * pw_plus[n - t];
            pm *= sel_minus;
        }
        return out;
    }
    if (const auto* c = std::get_if<Witness::Composed>(&w.rep())) {
        auto in = sign_support_sum(*c->inner, sel_plus, sel_minus);
        auto o = sign_support_sum(*c->outer, in[0], in[1]);
        Q scale = qpow(Q(2), c->outer->arity());
        return {scale * o[0], scale * o[1]};
    }
    unsupported("sign_support_sum");
}

// Visits the support of a leaf witness grouped into classes of equal value and
// Hamming weight: fn(sign_index, total_abs_mass_of_class, minus_count).
template <class Fn>
void for_each_support_class(const Witness& w, Fn&& fn) {
    const int n = w.arity();
    if (const auto* d = std::get_if<Witness::Dense>(&w.rep())) {
        for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
            const Q& v = d->values[m];
            if (v != 0) fn(v > 0 ? 0 : 1, qabs(v), popcnt(m));
        }
        return;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&w.rep())) {
        for (int t = 0; t <= n; ++t) {
            const Q& lv = s->level[t];
            if (lv != 0) fn(lv > 0 ? 0 : 1, qabs(lv), t);
        }
        return;
    }
    unsupported("support iteration (outer factor must be a leaf)");
}

int dense_fn_value(const BoolFn& f, uint64_t mask) {
    int v = f.eval_mask(mask);
    if (v == 0) throw std::invalid_argument("witness: 0/1-valued functions unsupported here");
    return v;
}

}  // namespace

Witness Witness::dense(int n, std::vector<Q> values) {
    if (n < 0 || n > kDenseBitsCap || values.size() != (size_t(1) << n))
        throw std::invalid_argument("witness: bad dense table");
    Witness w;
    w.arity_ = n;
    Q l1 = 0;
    for (const Q& v : values) l1 += qabs(v);
    w.l1_ = l1;
    w.rep_ = Dense{std::move(values)};
    return w;
}

Witness Witness::symmetric(int n, std::vector<Q> level_masses) {
    if (n < 0 || level_masses.size() != size_t(n) + 1)
        throw std::invalid_argument("witness: bad level profile");
    Witness w;
    w.arity_ = n;
    Q l1 = 0;
    for (const Q& v : level_masses) l1 += qabs(v);
    w.l1_ = l1;
    w.rep_ = Symmetric{std::move(level_masses)};
    return w;
}

bool Witness::dense_capable() const { return arity_ <= kDenseBitsCap; }

Q Witness::eval_mask(uint64_t mask) const {
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->values[mask];
    if (const auto* s = std::get_if<Symmetric>(&rep_)) {
        int t = popcnt(mask);
        return s->level[t] / Q(binom(arity_, t));
    }
    if (const auto* c = std::get_if<Composed>(&rep_)) {
        const int m = c->inner->arity(), n = c->outer->arity();
        const uint64_t block_mask = (m == 64) ? ~uint64_t(0) : (uint64_t(1) << m) - 1;
        Q prod = qpow(Q(2), n);
        uint64_t z = 0;
        for (int i = 0; i < n; ++i) {
            Q v = c->inner->eval_mask((mask >> (i * m)) & block_mask);
            if (v == 0) return Q(0);
            if (v < 0) z |= uint64_t(1) << i;
            prod *= qabs(v);
        }
        return prod * c->outer->eval_mask(z);
    }
    const auto& md = std::get<Modified>(rep_);
    const int m = md.xi->arity(), n = md.zeta->arity();
    const uint64_t block_mask = (uint64_t(1) << m) - 1;
    Q prod = qpow(Q(2), n);
    uint64_t z = 0;
    std::vector<Q> alpha(n);
    for (int i = 0; i < n; ++i) {
        uint64_t xm = (mask >> (i * m)) & block_mask;
        Q v = md.xi->eval_mask(xm);
        if (v == 0) return Q(0);
        if (v < 0) z |= uint64_t(1) << i;
        prod *= qabs(v);
        int fv = dense_fn_value(*md.f, xm);
        if (v > 0)
            alpha[i] = (fv > 0) ? Q(1) : Q(-1);
        else
            alpha[i] = (fv < 0) ? md.a_minus : Q(1);
    }
    return prod * md.zeta->eval_mask(z) * md.p_eta.eval_real(alpha) / md.normalizer;
}

std::vector<Q> Witness::dense_expand() const {
    if (!dense_capable()) throw std::invalid_argument("witness: too wide to expand");
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->values;
    const int64_t sz = int64_t(1) << arity_;
    std::vector<Q> out(sz);
#pragma omp parallel for schedule(static)
    for (int64_t mask = 0; mask < sz; ++mask) out[mask] = eval_mask(uint64_t(mask));
    return out;
}

Witness Witness::scaled(const Q& a) const {
    if (const auto* d = std::get_if<Dense>(&rep_)) {
        std::vector<Q> v = d->values;
        for (Q& x : v) x *= a;
        return dense(arity_, std::move(v));
    }
    if (const auto* s = std::get_if<Symmetric>(&rep_)) {
        std::vector<Q> v = s->level;
        for (Q& x : v) x *= a;
        return symmetric(arity_, std::move(v));
    }
    return dense(arity_, [&] {
        std::vector<Q> v = dense_expand();
        for (Q& x : v) x *= a;
        return v;
    }());
}

Q sign_mass(const Witness& psi, int s) {
    auto r = sign_support_sum(psi, Q(1), Q(1));
    return r[s >= 0 ? 0 : 1];
}

SignFnMass sign_fn_mass(const Witness& psi, const BoolFn& f) {
    if (psi.arity() != f.arity())
        throw std::invalid_argument("witness: arity mismatch with target");
    SignFnMass out;
    if (const auto* d = std::get_if<Witness::Dense>(&psi.rep())) {
        for (uint64_t m = 0; m < (uint64_t(1) << psi.arity()); ++m) {
            const Q& v = d->values[m];
            if (v == 0) continue;
            int fv = dense_fn_value(f, m);
            out.m[v > 0 ? 0 : 1][fv > 0 ? 0 : 1] += qabs(v);
        }
        return out;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&psi.rep())) {
        for (int t = 0; t <= psi.arity(); ++t) {
            const Q& lv = s->level[t];
            if (lv == 0) continue;
            // Any representative of the weight class works for a symmetric f.
            if (!f.is_symmetric()) unsupported("symmetric witness vs non-symmetric target");
            int fv = dense_fn_value(f, (uint64_t(1) << t) - 1);
            out.m[lv > 0 ? 0 : 1][fv > 0 ? 0 : 1] += qabs(lv);
        }
        return out;
    }
    if (const auto* c = std::get_if<Witness::Composed>(&psi.rep())) {
        const auto* fc = std::get_if<BoolFn::Composed>(&f.rep());
        if (!fc || fc->inner->arity() != c->inner->arity() ||
            fc->outer->arity() != c->outer->arity())
            unsupported("composed witness vs non-matching target");
        SignFnMass jm = sign_fn_mass(*c->inner, *fc->inner);
        const int n = c->outer->arity();
        const Q scale = qpow(Q(2), n);
        const BoolFn& h = *fc->outer;
        if (!h.is_symmetric()) unsupported("non-symmetric outer target");
        // Distribution of the number of -1 block values, by outer sign class.
        std::vector<std::vector<Q>> pow_minus(n + 1), pow_plus(n + 1);
        pow_minus[0] = pow_plus[0] = unit_dist(n);
        std::vector<Q> gp{jm.m[0][0], jm.m[0][1]}, gm{jm.m[1][0], jm.m[1][1]};
        for (int i = 1; i <= n; ++i) {
            pow_plus[i] = conv_clamped(pow_plus[i - 1], gp, n);
            pow_minus[i] = conv_clamped(pow_minus[i - 1], gm, n);
        }
        for_each_support_class(*c->outer, [&](int s_o, const Q& mass, int t) {
            std::vector<Q> dist = conv_clamped(pow_minus[t], pow_plus[n - t], n);
            for (int u = 0; u <= n; ++u) {
                if (dist[u] == 0) continue;
                int hv = h.profile()[u];
                if (hv == 0) throw std::invalid_argument("witness: 0/1-valued outer target");
                out.m[s_o][hv > 0 ? 0 : 1] += scale * mass * dist[u];
            }
        });
        return out;
    }
    // Modified witnesses are handled densely; aggregate paths go through
    // correlation() directly.
    if (psi.dense_capable()) {
        std::vector<Q> vals = psi.dense_expand();
        return sign_fn_mass(Witness::dense(psi.arity(), std::move(vals)), f);
    }
    unsupported("sign_fn_mass");
}

Q correlation(const BoolFn& f, const Witness& psi) {
    if (psi.arity() != f.arity())
        throw std::invalid_argument("witness: arity mismatch with target");
    if (const auto* md = std::get_if<Witness::Modified>(&psi.rep());
        md && !psi.dense_capable()) {
        // <OR o g, Gamma> = sum_z zeta(z) (-normalizer + 2 eta! prod_i P_i) /
        // normalizer, with P_i = 1-eps+ on plus blocks and eps- on minus
        // blocks: conditioned on the block sign, alpha = 1 exactly when g
        // reads true, so the multilinear p_eta collapses to p_eta(1,...,1).
        const auto* fc = std::get_if<BoolFn::Composed>(&f.rep());
        if (!fc || !fc->outer->is_symmetric()) unsupported("wide modified correlation");
        const int n = md->zeta->arity();
        if (fc->outer->arity() != n || fc->inner->arity() != md->xi->arity())
            unsupported("wide modified correlation (shape mismatch)");
        for (int u = 0; u <= n; ++u)
            if (fc->outer->profile()[u] != (u == 0 ? 1 : -1))
                unsupported("wide modified correlation (outer must be OR)");
        auto plain = sign_support_sum(*md->zeta, Q(1), Q(1));
        auto sel = sign_support_sum(*md->zeta, Q(1) - md->eps_plus, md->eps_minus);
        Q eta_fact = Q(factorial(md->eta));
        return -(plain[0] - plain[1]) +
               Q(2) * eta_fact * (sel[0] - sel[1]) / md->normalizer;
    }
    if (const auto* d = std::get_if<Witness::Dense>(&psi.rep())) {
        // Direct sum; tolerates 0/1-valued targets.
        Q acc = 0;
        for (uint64_t m = 0; m < (uint64_t(1) << psi.arity()); ++m) {
            const Q& v = d->values[m];
            if (v != 0) acc += Q(f.eval_mask(m)) * v;
        }
        return acc;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&psi.rep())) {
        if (!f.is_symmetric()) unsupported("symmetric witness vs non-symmetric target");
        Q acc = 0;
        for (int t = 0; t <= psi.arity(); ++t)
            if (s->level[t] != 0) acc += Q(f.eval_mask((uint64_t(1) << t) - 1)) * s->level[t];
        return acc;
    }
    SignFnMass jm = sign_fn_mass(psi, f);
    return jm.m[0][0] - jm.m[0][1] - jm.m[1][0] + jm.m[1][1];
}

ErrorRates error_rates(const BoolFn& f, const Witness& psi) {
    SignFnMass jm = sign_fn_mass(psi, f);
    ErrorRates r;
    r.delta_plus = jm.m[0][1];
    r.delta_minus = jm.m[1][0];
    r.eps_plus = 2 * r.delta_plus;
    r.eps_minus = 2 * r.delta_minus;
    r.eps = r.eps_plus + r.eps_minus;
    return r;
}

BlockStats alpha_stats(const BoolFn& f, const Witness& psi) {
    ErrorRates er = error_rates(f, psi);
    if (er.eps_minus >= 1)
        throw std::invalid_argument("witness: eps- >= 1, alpha undefined");
    BlockStats st;
    st.eps_plus = er.eps_plus;
    st.eps_minus = er.eps_minus;
    st.a_minus = (Q(1) - 2 * er.eps_plus - er.eps_minus) / (Q(1) - er.eps_minus);
    st.b_plus = 0;
    st.b_minus = er.eps_plus / (Q(1) - er.eps_minus);
    st.expected_alpha = Q(1) - 2 * er.eps_plus;
    return st;
}

std::vector<Q> alpha_values(const BoolFn& f, const Witness& psi) {
    if (!psi.dense_capable()) throw std::invalid_argument("witness: too wide for alpha table");
    BlockStats st = alpha_stats(f, psi);
    std::vector<Q> vals = psi.dense_expand();
    std::vector<Q> alpha(vals.size(), Q(0));
    for (uint64_t m = 0; m < vals.size(); ++m) {
        const Q& v = vals[m];
        if (v == 0) continue;
        int fv = dense_fn_value(f, m);
        if (v > 0)
            alpha[m] = (fv > 0) ? Q(1) : Q(-1);
        else
            alpha[m] = (fv < 0) ? st.a_minus : Q(1);
    }
    return alpha;
}

Q subset_moment(const Witness& psi, uint64_t S) {
    if (S == 0) {
        auto r = sign_support_sum(psi, Q(1), Q(1));
        return r[0] - r[1];
    }
    if (psi.arity() > 64) unsupported("subset_moment beyond 64 bits");
    if (const auto* d = std::get_if<Witness::Dense>(&psi.rep())) {
        Q acc = 0;
        for (uint64_t m = 0; m < (uint64_t(1) << psi.arity()); ++m)
            if (d->values[m] != 0)
                acc += (popcnt(m & S) % 2 == 0) ? d->values[m] : -d->values[m];
        return acc;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&psi.rep())) {
        const int n = psi.arity(), sz = popcnt(S);
        Q acc = 0;
        for (int t = 0; t <= n; ++t)
            if (s->level[t] != 0)
                acc += s->level[t] * Q(parity_level_sum(n, sz, t)) / Q(binom(n, t));
        return acc;
    }
    if (const auto* c = std::get_if<Witness::Composed>(&psi.rep())) {
        const int n = c->outer->arity(), m = c->inner->arity();
        const uint64_t block_mask = (m == 64) ? ~uint64_t(0) : (uint64_t(1) << m) - 1;
        // <O*I, chi_S> = sum_{B subset P} <O, chi_B> prod_{i in B} u(S_i)
        //               prod_{i in P\B} a(S_i), P = blocks S touches.
        std::vector<int> pos;
        std::vector<Q> u, a;
        for (int i = 0; i < n; ++i) {
            uint64_t Si = (S >> (i * m)) & block_mask;
            if (Si == 0) continue;
            pos.push_back(i);
            u.push_back(subset_moment(*c->inner, Si));
            a.push_back(subset_abs_moment(*c->inner, Si));
        }
        const int p = static_cast<int>(pos.size());
        Q acc = 0;
        for (uint64_t B = 0; B < (uint64_t(1) << p); ++B) {
            Q term = 1;
            uint64_t Bmask = 0;
            for (int j = 0; j < p; ++j) {
                if (B >> j & 1) {
                    term *= u[j];
                    Bmask |= uint64_t(1) << pos[j];
                } else {
                    term *= a[j];
                }
            }
            if (term != 0) acc += term * subset_moment(*c->outer, Bmask);
        }
        return acc * qpow(Q(2), n);
    }
    if (psi.dense_capable())
        return subset_moment(Witness::dense(psi.arity(), psi.dense_expand()), S);
    unsupported("subset_moment");
}

Q subset_abs_moment(const Witness& psi, uint64_t S) {
    if (S == 0) return psi.l1();
    if (psi.arity() > 64) unsupported("subset_abs_moment beyond 64 bits");
    if (const auto* d = std::get_if<Witness::Dense>(&psi.rep())) {
        Q acc = 0;
        for (uint64_t m = 0; m < (uint64_t(1) << psi.arity()); ++m)
            if (d->values[m] != 0)
                acc += (popcnt(m & S) % 2 == 0) ? qabs(d->values[m]) : -qabs(d->values[m]);
        return acc;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&psi.rep())) {
        const int n = psi.arity(), sz = popcnt(S);
        Q acc = 0;
        for (int t = 0; t <= n; ++t)
            if (s->level[t] != 0)
                acc += qabs(s->level[t]) * Q(parity_level_sum(n, sz, t)) / Q(binom(n, t));
        return acc;
    }
    if (const auto* c = std::get_if<Witness::Composed>(&psi.rep())) {
        const int n = c->outer->arity(), m = c->inner->arity();
        const uint64_t block_mask = (m == 64) ? ~uint64_t(0) : (uint64_t(1) << m) - 1;
        std::vector<int> pos;
        std::vector<Q> u, a;
        for (int i = 0; i < n; ++i) {
            uint64_t Si = (S >> (i * m)) & block_mask;
            if (Si == 0) continue;
            pos.push_back(i);
            u.push_back(subset_moment(*c->inner, Si));
            a.push_back(subset_abs_moment(*c->inner, Si));
        }
        const int p = static_cast<int>(pos.size());
        Q acc = 0;
        for (uint64_t B = 0; B < (uint64_t(1) << p); ++B) {
            Q term = 1;
            uint64_t Bmask = 0;
            for (int j = 0; j < p; ++j) {
                if (B >> j & 1) {
                    term *= u[j];
                    Bmask |= uint64_t(1) << pos[j];
                } else {
                    term *= a[j];
                }
            }
            if (term != 0) acc += term * subset_abs_moment(*c->outer, Bmask);
        }
        return acc * qpow(Q(2), n);
    }
    if (psi.dense_capable())
        return subset_abs_moment(Witness::dense(psi.arity(), psi.dense_expand()), S);
    unsupported("subset_abs_moment");
}

Witness flatten_dbc(const Witness& w) {
    const auto* c = std::get_if<Witness::Composed>(&w.rep());
    if (!c) return w;
    Witness inner = flatten_dbc(*c->inner);
    const auto* ci = std::get_if<Witness::Composed>(&inner.rep());
    if (!ci) return dbc(*c->outer, inner);
    // theta * (phi * psi) = (theta * phi) * psi.
    return dbc(dbc(*c->outer, *ci->outer), *ci->inner);
}

namespace {

// Fourier coefficients of a dense table; phd is the least degree carrying a
// nonzero coefficient.
int dense_phd(int n, const std::vector<Q>& values) {
    std::vector<Q> a = values;
    for (int bit = 0; bit < n; ++bit) {
        const uint64_t step = uint64_t(1) << bit;
        for (uint64_t m = 0; m < a.size(); ++m) {
            if (m & step) continue;
            Q lo = a[m], hi = a[m | step];
            a[m] = lo + hi;
            a[m | step] = lo - hi;
        }
    }
    int best = kPhdInfinite;
    for (uint64_t S = 0; S < a.size(); ++S)
        if (a[S] != 0) best = std::min(best, popcnt(S));
    return best;
}

// True if some moment of exact degree d is nonzero. For wide composed
// witnesses the innermost factor must be symmetric so moments depend only on
// per-block degrees.
bool moment_level_nonzero(const Witness& w, int d) {
    if (w.dense_capable() || !w.is_composed()) {
        if (d > w.arity()) return false;
        if (w.dense_capable()) {
            if (w.is_symmetric() || w.is_composed() || w.is_modified()) {
                // Handled by the caller via dense_phd; direct scan here.
                std::vector<Q> vals = w.dense_expand();
                Witness dw = Witness::dense(w.arity(), std::move(vals));
                return moment_level_nonzero(dw, d);
            }
            for (uint64_t S = 0; S < (uint64_t(1) << w.arity()); ++S)
                if (popcnt(S) == d && subset_moment(w, S) != 0) return true;
            return false;
        }
        // Wide symmetric witness: moments depend only on the degree.
        const auto& s = std::get<Witness::Symmetric>(w.rep());
        const int n = w.arity();
        Q acc = 0;
        for (int t = 0; t <= n; ++t)
            if (s.level[t] != 0)
                acc += s.level[t] * Q(parity_level_sum(n, d, t)) / Q(binom(n, t));
        return acc != 0;
    }
    Witness flat = flatten_dbc(w);
    const auto& c = std::get<Witness::Composed>(flat.rep());
    const Witness& inner = *c.inner;
    const Witness& outer = *c.outer;
    if (!inner.is_symmetric()) unsupported("phd of wide witness with non-symmetric blocks");
    const int n = outer.arity(), m = inner.arity();
    if (d == 0) return subset_moment(flat, 0) != 0;
    if (d > int64_t(n) * m) return false;
    const auto& lev = std::get<Witness::Symmetric>(inner.rep()).level;
    std::vector<Q> u(std::min(m, d) + 1, Q(0)), a(std::min(m, d) + 1, Q(0));
    for (int j = 0; j <= std::min(m, d); ++j)
        for (int t = 0; t <= m; ++t) {
            if (lev[t] == 0) continue;
            Q base = Q(parity_level_sum(m, j, t)) / Q(binom(m, t));
            u[j] += lev[t] * base;
            a[j] += qabs(lev[t]) * base;
        }
    // Enumerate which blocks the monomial touches and with what degrees; by
    // symmetry of the blocks only the per-position degree matters.
    std::vector<int> pos, deg;
    Q scale = qpow(Q(2), n);
    std::function<bool(int, int, int)> rec = [&](int next_pos, int used, int rem) -> bool {
        if (rem == 0) {
            const int p = static_cast<int>(pos.size());
            Q acc = 0;
            for (uint64_t B = 0; B < (uint64_t(1) << p); ++B) {
                Q term = 1;
                uint64_t Bmask = 0;
                for (int j = 0; j < p; ++j) {
                    if (B >> j & 1) {
                        term *= u[deg[j]];
                        Bmask |= uint64_t(1) << pos[j];
                    } else {
                        term *= a[deg[j]];
                    }
                }
                if (term != 0) acc += term * subset_moment(outer, Bmask);
            }
            return scale * acc != 0;
        }
        (void)used;
        for (int i = next_pos; i < n; ++i)
            for (int dd = 1; dd <= std::min(m, rem); ++dd) {
                pos.push_back(i);
                deg.push_back(dd);
                if (rec(i + 1, used + 1, rem - dd)) return true;
                pos.pop_back();
                deg.pop_back();
            }
        return false;
    };
    return rec(0, 0, d);
}

}  // namespace

bool phd_at_least(const Witness& psi, int bound) {
    if (psi.l1() == 0) return true;
    if (psi.dense_capable()) {
        std::vector<Q> vals = psi.dense_expand();
        return dense_phd(psi.arity(), vals) >= bound;
    }
    for (int d = 0; d < bound; ++d)
        if (moment_level_nonzero(psi, d)) return false;
    return true;
}

int phd(const Witness& psi, int max_check) {
    if (psi.l1() == 0) return kPhdInfinite;
    if (psi.dense_capable()) return dense_phd(psi.arity(), psi.dense_expand());
    if (max_check < 0) max_check = psi.arity();
    for (int d = 0; d <= max_check; ++d)
        if (moment_level_nonzero(psi, d)) return d;
    throw std::runtime_error("witness: phd exceeds search bound");
}

SignWeightDist sign_weight_mass(const Witness& psi, int cap) {
    SignWeightDist out;
    out.d[0].assign(cap + 2, Q(0));
    out.d[1].assign(cap + 2, Q(0));
    const int n = psi.arity();
    if (const auto* d = std::get_if<Witness::Dense>(&psi.rep())) {
        for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
            const Q& v = d->values[m];
            if (v != 0) out.d[v > 0 ? 0 : 1][std::min(popcnt(m), cap + 1)] += qabs(v);
        }
        return out;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&psi.rep())) {
        for (int t = 0; t <= n; ++t) {
            const Q& lv = s->level[t];
            if (lv != 0) out.d[lv > 0 ? 0 : 1][std::min(t, cap + 1)] += qabs(lv);
        }
        return out;
    }
    if (const auto* c = std::get_if<Witness::Composed>(&psi.rep())) {
        SignWeightDist in = sign_weight_mass(*c->inner, cap);
        const int no = c->outer->arity();
        const Q scale = qpow(Q(2), no);
        std::vector<std::vector<Q>> pow_plus(no + 1), pow_minus(no + 1);
        pow_plus[0] = pow_minus[0] = unit_dist(cap);
        for (int i = 1; i <= no; ++i) {
            pow_plus[i] = conv_clamped(pow_plus[i - 1], in.d[0], cap);
            pow_minus[i] = conv_clamped(pow_minus[i - 1], in.d[1], cap);
        }
        for_each_support_class(*c->outer, [&](int s_o, const Q& mass, int t) {
            std::vector<Q> dist = conv_clamped(pow_minus[t], pow_plus[no - t], cap);
            for (int ww = 0; ww <= cap + 1; ++ww)
                if (dist[ww] != 0) out.d[s_o][ww] += scale * mass * dist[ww];
        });
        return out;
    }
    if (psi.dense_capable())
        return sign_weight_mass(Witness::dense(n, psi.dense_expand()), cap);
    unsupported("sign_weight_mass");
}

Q mass_above(const Witness& psi, int bound) {
    SignWeightDist d = sign_weight_mass(psi, bound);
    return d.d[0][bound + 1] + d.d[1][bound + 1];
}

Witness dbc(const Witness& theta, const Witness& psi) {
    if (!theta.normalized() || !psi.normalized())
        throw std::invalid_argument("dbc: factors must have unit mass");
    Witness w;
    w.arity_ = theta.arity() * psi.arity();
    auto co = std::make_shared<Witness>(theta);
    auto ci = std::make_shared<Witness>(psi);
    w.rep_ = Witness::Composed{co, ci};
    auto s = sign_support_sum(w, Q(1), Q(1));
    w.l1_ = s[0] + s[1];
    return w;
}

Witness modified_compose(const Witness& zeta, const Witness& xi, const BoolFn& f, int eta) {
    if (!zeta.normalized() || !xi.normalized())
        throw std::invalid_argument("modified_compose: factors must have unit mass");
    if (eta < 0 || eta % 2 != 0)
        throw std::invalid_argument("modified_compose: eta must be even and nonnegative");
    if (eta == 0) return dbc(zeta, xi);
    const int n = zeta.arity();
    if (eta >= n) throw std::invalid_argument("modified_compose: eta must be below the outer arity");
    if (sign_mass(xi, +1) != Q(1, 2))
        throw std::invalid_argument("modified_compose: inner factor must split mass evenly");
    BlockStats st = alpha_stats(f, xi);
    Witness::Modified md;
    md.zeta = std::make_shared<Witness>(zeta);
    md.xi = std::make_shared<Witness>(xi);
    md.f = std::make_shared<BoolFn>(f);
    md.eta = eta;
    md.eps_plus = st.eps_plus;
    md.eps_minus = st.eps_minus;
    md.a_minus = st.a_minus;
    md.p_eta = build_p_eta(eta, n);
    md.normalizer = md.p_eta.eval_real_uniform(Q(1) - 2 * st.eps_plus);
    if (md.normalizer == 0)
        throw std::invalid_argument("modified_compose: p_eta vanishes at the error rate");

    // Exact mass: blocks are independent under mu_z, and the distribution of
    // alpha per block depends only on the block sign, so |Gamma|'s mass
    // aggregates over (j, k) = (#alpha = -1, #alpha = a_minus).
    std::vector<std::vector<Q>> pval(n + 1, std::vector<Q>(n + 1, Q(0)));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; j + k <= n; ++k) {
            std::vector<Q> y(n, Q(1));
            for (int i = 0; i < j; ++i) y[i] = -1;
            for (int i = 0; i < k; ++i) y[j + i] = st.a_minus;
            pval[j][k] = md.p_eta.eval_real(y);
        }
    const Q ep = st.eps_plus, em = st.eps_minus;
    auto abs_expectation = [&](int t) {
        // t minus blocks contribute alpha = a_minus w.p. 1-eps-, else 1;
        // n-t plus blocks contribute alpha = -1 w.p. eps+, else 1.
        Q e = 0;
        for (int j = 0; j <= n - t; ++j) {
            Q pj = Q(binom(n - t, j)) * qpow(ep, j) * qpow(Q(1) - ep, n - t - j);
            if (pj == 0) continue;
            for (int k = 0; k <= t; ++k) {
                Q pk = Q(binom(t, k)) * qpow(Q(1) - em, k) * qpow(em, t - k);
                if (pk == 0) continue;
                e += pj * pk * qabs(pval[j][k]);
            }
        }
        return e;
    };
    Q l1 = 0;
    for_each_support_class(zeta, [&](int, const Q& mass, int t) {
        l1 += mass * abs_expectation(t);
    });
    l1 /= md.normalizer;

    Witness w;
    w.arity_ = n * xi.arity();
    w.rep_ = std::move(md);
    w.l1_ = l1;
    return w;
}

ComposedMoments composed_moments(const Witness& w, const BoolFn& target, int weight_bound) {
    ComposedMoments cm;
    cm.l1 = w.l1();
    cm.correlation = correlation(target, w);
    cm.mass_above = mass_above(w, weight_bound);
    return cm;
}

Witness dense_difference(const Witness& a, const Witness& b) {
    if (a.arity() != b.arity()) throw std::invalid_argument("witness: arity mismatch");
    std::vector<Q> va = a.dense_expand(), vb = b.dense_expand();
    for (size_t i = 0; i < va.size(); ++i) va[i] -= vb[i];
    return Witness::dense(a.arity(), std::move(va));
}

}  // namespace adk
