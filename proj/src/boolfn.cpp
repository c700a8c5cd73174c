#include "adegkit/boolfn.hpp"

#include <bit>
#include <sstream>

#include "adegkit/rational.hpp"

namespace adk {

int BoolFn::eval(const SignVector& x) const {
    if (x.n() != arity_) throw std::invalid_argument("BoolFn: arity mismatch");
    return eval_mask(x.mask());
}

int BoolFn::eval_mask(uint64_t mask) const {
    int w = std::popcount(mask);
    check_promise(w);
    if (auto* d = std::get_if<Dense>(&rep_)) return d->values[mask];
    if (auto* s = std::get_if<Symmetric>(&rep_)) return s->profile[w];
    if (auto* c = std::get_if<Composed>(&rep_)) {
        int m = c->inner->arity();
        uint64_t outer_mask = 0;
        for (int i = 0; i < c->blocks; ++i) {
            uint64_t block = (mask >> (i * m)) & ((uint64_t(1) << m) - 1);
            if (c->inner->eval_mask(block) == -1) outer_mask |= uint64_t(1) << i;
        }
        return c->outer->eval_mask(outer_mask);
    }
    const Dist& d = std::get<Dist>(rep_);
    std::vector<int> counts(d.R, 0);
    for (int i = 0; i < d.N; ++i) {
        uint64_t pattern = (mask >> (i * d.bits_per_item)) &
                           ((uint64_t(1) << d.bits_per_item) - 1);
        int value = static_cast<int>(pattern % d.R) + 1;
        if (++counts[value - 1] >= d.k) return -1;
    }
    return 1;
}

std::vector<int> BoolFn::dense_expand() const {
    if (arity_ > kDenseArityCap)
        throw std::length_error("dense_expand: arity cap exceeded");
    std::vector<int> out(uint64_t(1) << arity_);
    for (uint64_t m = 0; m < out.size(); ++m) {
        int w = std::popcount(m);
        if (promise_ && w > *promise_) continue;  // undefined; left 0
        out[m] = eval_mask(m);
    }
    return out;
}

BoolFn make_or(int n) {
    if (n < 1) throw std::invalid_argument("make_or: n >= 1 required");
    BoolFn f;
    f.arity_ = n;
    std::vector<int> p(n + 1, -1);
    p[0] = 1;
    f.rep_ = BoolFn::Symmetric{std::move(p)};
    f.spec_ = "OR:" + std::to_string(n);
    return f;
}

BoolFn make_and(int n) {
    if (n < 1) throw std::invalid_argument("make_and: n >= 1 required");
    BoolFn f;
    f.arity_ = n;
    std::vector<int> p(n + 1, 1);
    p[n] = -1;
    f.rep_ = BoolFn::Symmetric{std::move(p)};
    f.spec_ = "AND:" + std::to_string(n);
    return f;
}

BoolFn make_thr(int k, int N) {
    if (k < 1 || k > N) throw std::invalid_argument("make_thr: need 1 <= k <= N");
    BoolFn f;
    f.arity_ = N;
    std::vector<int> p(N + 1);
    for (int w = 0; w <= N; ++w) p[w] = w >= k ? -1 : 1;
    f.rep_ = BoolFn::Symmetric{std::move(p)};
    f.spec_ = "THR:" + std::to_string(k) + ":" + std::to_string(N);
    return f;
}

BoolFn make_exact(int i, int N) {
    if (i < 0 || i > N) throw std::invalid_argument("make_exact: need 0 <= i <= N");
    BoolFn f;
    f.arity_ = N;
    std::vector<int> p(N + 1, 0);
    p[i] = 1;
    f.rep_ = BoolFn::Symmetric{std::move(p)};
    f.spec_ = "EXACT:" + std::to_string(i) + ":" + std::to_string(N);
    return f;
}

BoolFn make_dist(int k, int N, int R) {
    if (k > N || R < 2) throw std::invalid_argument("make_dist: need k <= N, R >= 2");
    int bits = 1;
    while ((1 << bits) < R) ++bits;
    if (N * bits > 64) throw std::length_error("make_dist: arity overflow");
    BoolFn f;
    f.arity_ = N * bits;
    f.rep_ = BoolFn::Dist{k, N, R, bits};
    f.spec_ = "DIST:" + std::to_string(k) + ":" + std::to_string(N) + ":" +
              std::to_string(R);
    return f;
}

BoolFn compose(const BoolFn& g, const BoolFn& h) {
    if (g.promise_bound())
        throw std::invalid_argument("compose: outer function must be total");
    long total = static_cast<long>(g.arity()) * h.arity();
    if (total > 1L << 30) throw std::length_error("compose: arity overflow");
    BoolFn f;
    f.arity_ = static_cast<int>(total);
    f.rep_ = BoolFn::Composed{std::make_shared<BoolFn>(g),
                              std::make_shared<BoolFn>(h), g.arity()};
    f.spec_ = g.spec_string() + " o " + h.spec_string();
    return f;
}

BoolFn restrict_weight(const BoolFn& f, int N) {
    if (N < 0 || N > f.arity())
        throw std::invalid_argument("restrict_weight: need 0 <= N <= arity");
    BoolFn g = f;
    g.promise_ = N;
    g.spec_ = f.spec_string() + " <=" + std::to_string(N);
    return g;
}

namespace {

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) out.push_back(std::stoi(tok));
    return out;
}

BoolFn parse_atom(const std::string& atom) {
    auto colon = atom.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("funcspec: bad atom '" + atom + "'");
    std::string name = atom.substr(0, colon);
    auto args = split_ints(atom.substr(colon + 1));
    if (name == "OR" && args.size() == 1) return make_or(args[0]);
    if (name == "AND" && args.size() == 1) return make_and(args[0]);
    if (name == "THR" && args.size() == 2) return make_thr(args[0], args[1]);
    if (name == "EXACT" && args.size() == 2) return make_exact(args[0], args[1]);
    if (name == "DIST" && args.size() == 3) return make_dist(args[0], args[1], args[2]);
    throw std::invalid_argument("funcspec: unknown atom '" + atom + "'");
}

}  // namespace

BoolFn parse_funcspec(const std::string& spec) {
    std::vector<std::string> toks;
    std::stringstream ss(spec);
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (toks.empty()) throw std::invalid_argument("funcspec: empty");

    std::optional<int> promise;
    if (toks.back().rfind("<=", 0) == 0) {
        promise = std::stoi(toks.back().substr(2));
        toks.pop_back();
    }
    if (toks.empty()) throw std::invalid_argument("funcspec: empty");

    BoolFn f = parse_atom(toks[0]);
    for (size_t i = 1; i < toks.size(); i += 2) {
        if (toks[i] != "o" || i + 1 >= toks.size())
            throw std::invalid_argument("funcspec: expected 'o <atom>'");
        f = compose(f, parse_atom(toks[i + 1]));
    }
    if (promise) f = restrict_weight(f, *promise);
    return f;
}

uint64_t promise_domain_size(int n, int bound) {
    Z total = 0;
    for (int i = 0; i <= bound && i <= n; ++i) total += binom(n, i);
    return total.get_ui();
}

}  // namespace adk
