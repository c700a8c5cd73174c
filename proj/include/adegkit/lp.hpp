#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adegkit/rational.hpp"

namespace adk {

enum class Relation { LessEq, GreaterEq, Equal };
enum class LPStatus { Optimal, Infeasible, Unbounded };

// Exact-rational linear program. Variables are nonnegative unless declared
// free; all data stays rational end to end.
class LPInstance {
  public:
    explicit LPInstance(std::string provenance = "") : provenance_(std::move(provenance)) {}

    int add_var(bool free_var = false) {
        free_.push_back(free_var);
        obj_.push_back(Q(0));
        return static_cast<int>(free_.size()) - 1;
    }
    void set_objective_coeff(int var, const Q& c) { obj_[var] = c; }

    void add_constraint(std::vector<std::pair<int, Q>> terms, Relation rel, const Q& rhs) {
        rows_.push_back({std::move(terms), rel, rhs});
    }

    int num_vars() const { return static_cast<int>(free_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    const std::string& provenance() const { return provenance_; }

    struct Row {
        std::vector<std::pair<int, Q>> terms;
        Relation rel;
        Q rhs;
    };
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<Q>& objective() const { return obj_; }
    bool is_free(int v) const { return free_[v]; }

    std::string dump() const;  // plain-text exact-rational audit format

  private:
    std::vector<bool> free_;
    std::vector<Q> obj_;
    std::vector<Row> rows_;
    std::string provenance_;
};

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    Q objective = 0;
    std::vector<Q> x;     // per original variable
    std::vector<Q> dual;  // per original row
    // Zero-gap certificate: primal objective equals sum dual_i * rhs_i.
    bool strong_duality_holds = false;
    std::string dump() const;
};

// Minimizes the objective with deterministic (Bland) pivoting.
LPSolution solve(const LPInstance& lp);

}  // namespace adk
