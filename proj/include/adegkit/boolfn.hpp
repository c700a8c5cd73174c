#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adegkit/sign_vector.hpp"

namespace adk {

struct OutOfPromiseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A (possibly partial) Boolean function on {-1,+1}^n. Values are +-1, except
// for the EXACT indicator which is {0,1}-valued. Representations are
// immutable after construction.
class BoolFn {
  public:
    static constexpr int kDenseArityCap = 24;

    struct Dense {
        std::vector<int> values;  // indexed by mask (bit set = entry -1)
    };
    struct Symmetric {
        std::vector<int> profile;  // value by Hamming weight 0..n
    };
    struct Composed {
        std::shared_ptr<const BoolFn> outer;
        std::shared_ptr<const BoolFn> inner;
        int blocks;
    };
    struct Dist {
        int k, N, R;
        int bits_per_item;
    };

    BoolFn() = default;

    int arity() const { return arity_; }
    std::optional<int> promise_bound() const { return promise_; }

    int eval(const SignVector& x) const;
    int eval_mask(uint64_t mask) const;  // arity <= 64

    bool is_symmetric() const { return std::holds_alternative<Symmetric>(rep_); }
    const std::vector<int>& profile() const { return std::get<Symmetric>(rep_).profile; }
    const std::variant<Dense, Symmetric, Composed, Dist>& rep() const { return rep_; }

    // Dense truth table over all 2^n masks (promise ignored; capped arity).
    std::vector<int> dense_expand() const;

    std::string spec_string() const { return spec_; }

    friend BoolFn make_or(int n);
    friend BoolFn make_and(int n);
    friend BoolFn make_thr(int k, int N);
    friend BoolFn make_exact(int i, int N);
    friend BoolFn make_dist(int k, int N, int R);
    friend BoolFn compose(const BoolFn& g, const BoolFn& h);
    friend BoolFn restrict_weight(const BoolFn& f, int N);

  private:
    int check_promise(int weight) const {
        if (promise_ && weight > *promise_)
            throw OutOfPromiseError("evaluation outside weight promise");
        return weight;
    }

    int arity_ = 0;
    std::optional<int> promise_;
    std::variant<Dense, Symmetric, Composed, Dist> rep_;
    std::string spec_;
};

BoolFn make_or(int n);
BoolFn make_and(int n);
BoolFn make_thr(int k, int N);
BoolFn make_exact(int i, int N);
// List-of-numbers encoding: item value r in [R] stored as r-1 in binary over
// ceil(log2 R) bits, -1 = bit one; surplus patterns decode to (pattern mod R)+1.
BoolFn make_dist(int k, int N, int R);
BoolFn compose(const BoolFn& g, const BoolFn& h);
BoolFn restrict_weight(const BoolFn& f, int N);

// Function-spec mini-grammar: `OR:n`, `THR:k:N`, `EXACT:i:N`, `AND:n`,
// `DIST:k:N:R`, composition `A o B`, promise suffix `<=N`.
BoolFn parse_funcspec(const std::string& spec);

// Number of points with Hamming weight <= bound.
uint64_t promise_domain_size(int n, int bound);

}  // namespace adk
