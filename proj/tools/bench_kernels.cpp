#include <chrono>
#include <iostream>

#include "adegkit/parallel.hpp"

using namespace adk;
using Clock = std::chrono::steady_clock;

// Compares the OpenMP hypercube reduction against the serial reference on a
// correlation-style workload and reports agreement plus speedup.
int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 18;
    auto term = [](uint64_t m) {
        // A mask-dependent rational with non-trivial denominators.
        Q v(static_cast<long>(__builtin_popcountll(m)) - 3,
            static_cast<long>((m % 7) + 1));
        v.canonicalize();
        return v;
    };
    auto t0 = Clock::now();
    Q serial = hypercube_sum_serial(n, term);
    auto t1 = Clock::now();
    Q parallel = hypercube_sum(n, term);
    auto t2 = Clock::now();
    auto ms = [](auto a, auto b) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
    };
    std::cout << "bits: " << n << "\n"
              << "serial:   " << ms(t0, t1) << " ms\n"
              << "parallel: " << ms(t1, t2) << " ms\n"
              << "agree: " << (serial == parallel ? "yes" : "NO") << " (value "
              << serial.get_str() << ")\n";
    return serial == parallel ? 0 : 1;
}
