#pragma once

#include <random>

#include "adegkit/witness.hpp"

namespace adk::testing {

// Mean-subtracted normalized dense witness: unit mass, zero degree-0 moment,
// hence equal positive and negative mass.
inline Witness random_dense_witness(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
    while (true) {
        std::vector<Q> vals(uint64_t(1) << n);
        Q mean = 0;
        for (Q& v : vals) {
            v = Q(num(rng), den(rng));
            v.canonicalize();
            mean += v;
        }
        mean /= static_cast<long>(vals.size());
        Q l1 = 0;
        for (Q& v : vals) {
            v -= mean;
            l1 += qabs(v);
        }
        if (l1 == 0) continue;
        for (Q& v : vals) v /= l1;
        return Witness::dense(n, std::move(vals));
    }
}

// Normalized dense witness without mean subtraction (no sign-balance or phd
// guarantee).
inline Witness random_raw_witness(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
    while (true) {
        std::vector<Q> vals(uint64_t(1) << n);
        Q l1 = 0;
        for (Q& v : vals) {
            v = Q(num(rng), den(rng));
            v.canonicalize();
            l1 += qabs(v);
        }
        if (l1 == 0) continue;
        for (Q& v : vals) v /= l1;
        return Witness::dense(n, std::move(vals));
    }
}

}  // namespace adk::testing
