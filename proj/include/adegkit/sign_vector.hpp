#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adk {

// A point of {-1,+1}^n. Hamming weight counts the -1 entries.
class SignVector {
  public:
    SignVector() = default;

    explicit SignVector(std::vector<int> entries) : e_(std::move(entries)) {
        for (int v : e_)
            if (v != 1 && v != -1)
                throw std::invalid_argument("SignVector: entries must be +-1");
    }

    // Bit i of `mask` set means entry i is -1.
    static SignVector from_mask(uint64_t mask, int n) {
        std::vector<int> e(n);
        for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1 ? -1 : 1;
        return SignVector(std::move(e));
    }

    static SignVector all_ones(int n) { return from_mask(0, n); }

    int n() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[i]; }

    int hamming_weight() const {
        int w = 0;
        for (int v : e_) w += (v == -1);
        return w;
    }

    uint64_t mask() const {
        uint64_t m = 0;
        for (int i = 0; i < n(); ++i)
            if (e_[i] == -1) m |= uint64_t(1) << i;
        return m;
    }

    SignVector block(int start, int len) const {
        return SignVector(std::vector<int>(e_.begin() + start, e_.begin() + start + len));
    }

    bool operator==(const SignVector& o) const { return e_ == o.e_; }

    const std::vector<int>& entries() const { return e_; }

  private:
    std::vector<int> e_;
};

}  // namespace adk
