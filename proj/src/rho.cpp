#include <bit>

#include "adegkit/adeg.hpp"
#include "adegkit/lp.hpp"
#include "adegkit/poly.hpp"

namespace adk {

// Minimum coefficient l1 over exact representations of the value table as a
// combination of monotone-literal conjunctions, by LP over all 3^n disjoint
// (A, B) pairs with split positive/negative coefficients.
Q rho_exact(int n, const std::vector<Q>& values) {
    if (n > 8) throw CapError("exact conjunction norm capped at 8 bits");
    if (values.size() != (size_t(1) << n))
        throw std::invalid_argument("rho_exact: table size mismatch");
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t A = 0; A < (uint32_t(1) << n); ++A) {
        uint32_t rest = (uint32_t(1u << n) - 1) & ~A;
        uint32_t B = rest;
        while (true) {
            pairs.push_back({A, B});
            if (B == 0) break;
            B = (B - 1) & rest;
        }
    }
    LPInstance lp("exact conjunction norm, " + std::to_string(n) + " bits");
    std::vector<int> plus(pairs.size()), minus(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        plus[i] = lp.add_var(false);
        minus[i] = lp.add_var(false);
        lp.set_objective_coeff(plus[i], Q(1));
        lp.set_objective_coeff(minus[i], Q(1));
    }
    for (uint64_t x = 0; x < values.size(); ++x) {
        std::vector<std::pair<int, Q>> terms;
        for (size_t i = 0; i < pairs.size(); ++i) {
            auto [A, B] = pairs[i];
            // Bit set in x means the coordinate is -1; A demands +1, B demands -1.
            if ((x & A) == 0 && (x & B) == B) {
                terms.push_back({plus[i], Q(1)});
                terms.push_back({minus[i], Q(-1)});
            }
        }
        lp.add_constraint(std::move(terms), Relation::Equal, values[x]);
    }
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::Optimal)
        throw std::runtime_error("conjunction-norm LP not optimal");
    return sol.objective;
}

}  // namespace adk
