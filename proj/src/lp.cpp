#include "adegkit/lp.hpp"

#include <sstream>
#include <stdexcept>

namespace adk {

std::string LPInstance::dump() const {
    std::ostringstream os;
    os << "lp " << num_vars() << " vars " << num_rows() << " rows";
    if (!provenance_.empty()) os << " # " << provenance_;
    os << "\nminimize";
    for (int v = 0; v < num_vars(); ++v)
        if (obj_[v] != 0) os << " " << to_string(obj_[v]) << "*x" << v;
    os << "\n";
    for (const Row& r : rows_) {
        for (const auto& [v, c] : r.terms) os << to_string(c) << "*x" << v << " ";
        os << (r.rel == Relation::LessEq ? "<=" : r.rel == Relation::GreaterEq ? ">=" : "=")
           << " " << to_string(r.rhs) << "\n";
    }
    for (int v = 0; v < num_vars(); ++v)
        if (free_[v]) os << "free x" << v << "\n";
    return os.str();
}

std::string LPSolution::dump() const {
    std::ostringstream os;
    os << "status "
       << (status == LPStatus::Optimal ? "optimal"
           : status == LPStatus::Infeasible ? "infeasible" : "unbounded")
       << "\nobjective " << to_string(objective) << "\n";
    for (size_t i = 0; i < x.size(); ++i) os << "x" << i << " " << to_string(x[i]) << "\n";
    for (size_t i = 0; i < dual.size(); ++i) os << "y" << i << " " << to_string(dual[i]) << "\n";
    return os.str();
}

namespace {

// Dense two-phase simplex on the standard form min c.x, Dx = rhs, x >= 0.
struct Tableau {
    int m, cols;                     // cols includes artificial block
    std::vector<std::vector<Q>> D;   // m x cols
    std::vector<Q> rhs;              // m
    std::vector<int> basis;          // m, column index basic in each row
    int art_start;                   // first artificial column

    void pivot(int row, int col) {
        Q p = D[row][col];
        for (Q& v : D[row]) v /= p;
        rhs[row] /= p;
        for (int r = 0; r < m; ++r) {
            if (r == row || D[r][col] == 0) continue;
            Q factor = D[r][col];
            for (int c = 0; c < cols; ++c)
                if (D[row][c] != 0) D[r][c] -= factor * D[row][c];
            rhs[r] -= factor * rhs[row];
        }
        basis[row] = col;
    }

    // Bland's rule; returns the optimal objective for cost vector c.
    // eligible(j) gates entering columns.
    template <class Eligible>
    Q optimize(const std::vector<Q>& c, Eligible eligible) {
        while (true) {
            // Reduced costs d_j = c_j - cB . D_col; enter lowest j with d_j < 0.
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (!eligible(j)) continue;
                Q d = c[j];
                for (int r = 0; r < m; ++r)
                    if (D[r][j] != 0 && c[basis[r]] != 0) d -= c[basis[r]] * D[r][j];
                if (d < 0) enter = j;
            }
            if (enter < 0) break;
            int leave = -1;
            Q best_ratio = 0;
            for (int r = 0; r < m; ++r) {
                if (D[r][enter] <= 0) continue;
                Q ratio = rhs[r] / D[r][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw std::runtime_error("simplex: unbounded");
            pivot(leave, enter);
        }
        Q obj = 0;
        for (int r = 0; r < m; ++r)
            if (c[basis[r]] != 0) obj += c[basis[r]] * rhs[r];
        return obj;
    }
};

}  // namespace

LPSolution solve(const LPInstance& lp) {
    // Map original variables onto nonnegative standard-form columns.
    int ncols = 0;
    std::vector<int> pos_col(lp.num_vars()), neg_col(lp.num_vars(), -1);
    for (int v = 0; v < lp.num_vars(); ++v) {
        pos_col[v] = ncols++;
        if (lp.is_free(v)) neg_col[v] = ncols++;
    }
    int m = lp.num_rows();
    std::vector<int> slack_col(m, -1);
    for (int i = 0; i < m; ++i)
        if (lp.rows()[i].rel != Relation::Equal) slack_col[i] = ncols++;

    Tableau t;
    t.m = m;
    t.art_start = ncols;
    t.cols = ncols + m;
    t.D.assign(m, std::vector<Q>(t.cols, Q(0)));
    t.rhs.resize(m);
    t.basis.resize(m);
    std::vector<int> row_flip(m, 1);
    for (int i = 0; i < m; ++i) {
        const auto& row = lp.rows()[i];
        for (const auto& [v, c] : row.terms) {
            t.D[i][pos_col[v]] += c;
            if (neg_col[v] >= 0) t.D[i][neg_col[v]] -= c;
        }
        if (row.rel == Relation::LessEq) t.D[i][slack_col[i]] = 1;
        if (row.rel == Relation::GreaterEq) t.D[i][slack_col[i]] = -1;
        t.rhs[i] = row.rhs;
        if (t.rhs[i] < 0) {
            row_flip[i] = -1;
            for (Q& v : t.D[i]) v = -v;
            t.rhs[i] = -t.rhs[i];
        }
        t.D[i][t.art_start + i] = 1;
        t.basis[i] = t.art_start + i;
    }

    LPSolution sol;

    // Phase 1.
    std::vector<Q> c1(t.cols, Q(0));
    for (int i = 0; i < m; ++i) c1[t.art_start + i] = 1;
    Q infeas = t.optimize(c1, [](int) { return true; });
    if (infeas != 0) {
        sol.status = LPStatus::Infeasible;
        return sol;
    }
    // Drive remaining zero-level artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < t.art_start) continue;
        for (int j = 0; j < t.art_start; ++j)
            if (t.D[r][j] != 0) {
                t.pivot(r, j);
                break;
            }
    }

    // Phase 2.
    std::vector<Q> c2(t.cols, Q(0));
    for (int v = 0; v < lp.num_vars(); ++v) {
        c2[pos_col[v]] = lp.objective()[v];
        if (neg_col[v] >= 0) c2[neg_col[v]] = -lp.objective()[v];
    }
    auto eligible = [&](int j) { return j < t.art_start; };
    try {
        sol.objective = t.optimize(c2, eligible);
    } catch (const std::runtime_error&) {
        sol.status = LPStatus::Unbounded;
        return sol;
    }
    sol.status = LPStatus::Optimal;

    // Primal solution.
    std::vector<Q> col_val(t.cols, Q(0));
    for (int r = 0; r < m; ++r) col_val[t.basis[r]] = t.rhs[r];
    sol.x.resize(lp.num_vars());
    for (int v = 0; v < lp.num_vars(); ++v) {
        sol.x[v] = col_val[pos_col[v]];
        if (neg_col[v] >= 0) sol.x[v] -= col_val[neg_col[v]];
    }

    // Duals from the artificial block: y = cB . B^{-1}.
    sol.dual.resize(m);
    for (int i = 0; i < m; ++i) {
        Q y = 0;
        for (int r = 0; r < m; ++r)
            if (c2[t.basis[r]] != 0 && t.D[r][t.art_start + i] != 0)
                y += c2[t.basis[r]] * t.D[r][t.art_start + i];
        sol.dual[i] = y * row_flip[i];
    }

    // Zero-gap certificate.
    Q dual_obj = 0;
    for (int i = 0; i < m; ++i) dual_obj += sol.dual[i] * lp.rows()[i].rhs;
    sol.strong_duality_holds = (dual_obj == sol.objective);
    return sol;
}

}  // namespace adk
