#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adegkit/lp.hpp"

using namespace adk;

TEST_CASE("small minimization with a known optimum") {
    // min x + y  s.t.  x + 2y >= 3,  3x + y >= 4,  x,y >= 0.
    LPInstance lp;
    int x = lp.add_var(), y = lp.add_var();
    lp.set_objective_coeff(x, Q(1));
    lp.set_objective_coeff(y, Q(1));
    lp.add_constraint({{x, Q(1)}, {y, Q(2)}}, Relation::GreaterEq, Q(3));
    lp.add_constraint({{x, Q(3)}, {y, Q(1)}}, Relation::GreaterEq, Q(4));
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.objective == 2);  // x = 1, y = 1
    CHECK(s.x[x] == 1);
    CHECK(s.x[y] == 1);
    CHECK(s.strong_duality_holds);
    // Dual feasibility and zero gap by hand: sum dual_i * rhs_i = objective.
    CHECK(s.dual[0] * 3 + s.dual[1] * 4 == s.objective);
}

TEST_CASE("equality rows and free variables") {
    // min t  s.t.  t >= x - 5,  t >= 5 - x,  x = 2, with x, t free:
    // optimum t = 3.
    LPInstance lp;
    int x = lp.add_var(true), t = lp.add_var(true);
    lp.set_objective_coeff(t, Q(1));
    lp.add_constraint({{t, Q(1)}, {x, Q(-1)}}, Relation::GreaterEq, Q(-5));
    lp.add_constraint({{t, Q(1)}, {x, Q(1)}}, Relation::GreaterEq, Q(5));
    lp.add_constraint({{x, Q(1)}}, Relation::Equal, Q(2));
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.objective == 3);
    CHECK(s.x[x] == 2);
    CHECK(s.x[t] == 3);
    CHECK(s.strong_duality_holds);
}

TEST_CASE("exact rational optimum with awkward coefficients") {
    // min 7/3 a + 5/2 b  s.t.  a + b = 1, a >= 1/7.
    LPInstance lp;
    int a = lp.add_var(), b = lp.add_var();
    lp.set_objective_coeff(a, Q(7, 3));
    lp.set_objective_coeff(b, Q(5, 2));
    lp.add_constraint({{a, Q(1)}, {b, Q(1)}}, Relation::Equal, Q(1));
    lp.add_constraint({{a, Q(1)}}, Relation::GreaterEq, Q(1, 7));
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    // 7/3 < 5/2, so push a to 1.
    CHECK(s.x[a] == 1);
    CHECK(s.objective == Q(7, 3));
}

TEST_CASE("infeasible program is reported") {
    LPInstance lp;
    int x = lp.add_var();
    lp.add_constraint({{x, Q(1)}}, Relation::LessEq, Q(-1));
    CHECK(solve(lp).status == LPStatus::Infeasible);
}

TEST_CASE("unbounded program is reported") {
    LPInstance lp;
    int x = lp.add_var();
    lp.set_objective_coeff(x, Q(-1));
    lp.add_constraint({{x, Q(1)}}, Relation::GreaterEq, Q(0));
    CHECK(solve(lp).status == LPStatus::Unbounded);
}

TEST_CASE("duals price the binding rows") {
    // min x  s.t.  x >= 4 (binding), x >= 1 (slack).
    LPInstance lp;
    int x = lp.add_var();
    lp.set_objective_coeff(x, Q(1));
    lp.add_constraint({{x, Q(1)}}, Relation::GreaterEq, Q(4));
    lp.add_constraint({{x, Q(1)}}, Relation::GreaterEq, Q(1));
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.dual[0] == 1);
    CHECK(s.dual[1] == 0);
    CHECK(s.strong_duality_holds);
}

TEST_CASE("solver output is deterministic") {
    auto build = [] {
        LPInstance lp("det");
        int a = lp.add_var(), b = lp.add_var(), c = lp.add_var();
        lp.set_objective_coeff(a, Q(1));
        lp.set_objective_coeff(b, Q(1));
        lp.set_objective_coeff(c, Q(1));
        // Degenerate: many optimal bases.
        lp.add_constraint({{a, Q(1)}, {b, Q(1)}, {c, Q(1)}}, Relation::GreaterEq, Q(1));
        lp.add_constraint({{a, Q(1)}, {b, Q(1)}}, Relation::GreaterEq, Q(1));
        lp.add_constraint({{b, Q(1)}, {c, Q(1)}}, Relation::GreaterEq, Q(1));
        return lp;
    };
    LPSolution s1 = solve(build()), s2 = solve(build());
    CHECK(s1.objective == 1);
    CHECK(s1.dump() == s2.dump());
}

TEST_CASE("instance and solution dumps are exact text") {
    LPInstance lp("audit-example");
    int x = lp.add_var();
    lp.set_objective_coeff(x, Q(2, 3));
    lp.add_constraint({{x, Q(1, 7)}}, Relation::GreaterEq, Q(5, 21));
    std::string text = lp.dump();
    CHECK(text.find("2/3") != std::string::npos);
    CHECK(text.find("1/7") != std::string::npos);
    CHECK(text.find("5/21") != std::string::npos);
    LPSolution s = solve(lp);
    CHECK(s.objective == Q(10, 9));
    CHECK(s.dump().find("10/9") != std::string::npos);
}
