#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adegkit/boolfn.hpp"

using namespace adk;

TEST_CASE("OR truth table: +1 only on the all-plus-one input") {
    BoolFn f = make_or(3);
    CHECK(f.arity() == 3);
    for (uint64_t m = 0; m < 8; ++m) CHECK(f.eval_mask(m) == (m == 0 ? 1 : -1));
}

TEST_CASE("AND truth table: -1 only when every entry is -1") {
    BoolFn f = make_and(3);
    for (uint64_t m = 0; m < 8; ++m) CHECK(f.eval_mask(m) == (m == 7 ? -1 : 1));
}

TEST_CASE("THR fires at weight >= k") {
    BoolFn f = make_thr(2, 4);
    for (uint64_t m = 0; m < 16; ++m) {
        int w = __builtin_popcountll(m);
        CHECK(f.eval_mask(m) == (w >= 2 ? -1 : 1));
    }
}

TEST_CASE("EXACT is the 0/1 indicator of weight exactly i") {
    BoolFn f = make_exact(2, 4);
    for (uint64_t m = 0; m < 16; ++m)
        CHECK(f.eval_mask(m) == (__builtin_popcountll(m) == 2 ? 1 : 0));
}

TEST_CASE("weight promise rejects heavy inputs") {
    BoolFn f = restrict_weight(make_thr(2, 4), 2);
    CHECK(f.promise_bound() == 2);
    CHECK(f.eval_mask(0b0011) == -1);
    CHECK_THROWS_AS((void)f.eval_mask(0b0111), OutOfPromiseError);
}

TEST_CASE("promise domain size counts light points") {
    // weight <= 2 on 4 bits: 1 + 4 + 6.
    CHECK(promise_domain_size(4, 2) == 11);
    CHECK(promise_domain_size(5, 5) == 32);
    CHECK(promise_domain_size(6, 0) == 1);
}

TEST_CASE("composition evaluates blockwise") {
    BoolFn g = compose(make_or(2), make_and(2));  // 4 bits, two AND blocks
    CHECK(g.arity() == 4);
    for (uint64_t m = 0; m < 16; ++m) {
        int b0 = ((m & 0b0011) == 0b0011) ? -1 : 1;
        int b1 = ((m & 0b1100) == 0b1100) ? -1 : 1;
        int want = (b0 == 1 && b1 == 1) ? 1 : -1;
        CHECK(g.eval_mask(m) == want);
    }
}

TEST_CASE("list-of-numbers function counts a repeated value") {
    // 3 items over range 2, one bit each; k = 2 distinctness.
    BoolFn f = make_dist(2, 3, 2);
    CHECK(f.arity() == 3);
    for (uint64_t m = 0; m < 8; ++m) {
        int c0 = 0, c1 = 0;
        for (int i = 0; i < 3; ++i) ((m >> i) & 1 ? c1 : c0)++;
        CHECK(f.eval_mask(m) == ((c0 >= 2 || c1 >= 2) ? -1 : 1));
    }
}

TEST_CASE("surplus bit patterns decode modulo the range") {
    // Range 3 needs 2 bits per item; pattern 3 decodes to value (3 mod 3) + 1 = 1.
    BoolFn f = make_dist(2, 2, 3);
    CHECK(f.arity() == 4);
    // items (3, 0) decode to values (1, 1): duplicate.
    CHECK(f.eval_mask(0b0011) == -1);
    // items (1, 2) decode to values (2, 3): all distinct.
    CHECK(f.eval_mask(0b1001) == 1);
}

TEST_CASE("funcspec grammar round trips") {
    for (const char* s :
         {"OR:3", "AND:2", "THR:2:4", "EXACT:1:3", "DIST:2:3:2", "OR:2 o THR:2:2",
          "OR:2 o THR:2:2 <=2"}) {
        BoolFn f = parse_funcspec(s);
        BoolFn again = parse_funcspec(f.spec_string());
        CHECK(f.arity() == again.arity());
        CHECK(f.spec_string() == again.spec_string());
        if (f.arity() <= 8 && !f.promise_bound())
            CHECK(f.dense_expand() == again.dense_expand());
    }
}

TEST_CASE("malformed funcspecs are rejected") {
    for (const char* s : {"", "OR", "OR:", "OR:0", "OR:-2", "XYZ:3", "THR:2",
                          "THR:9:4", "OR:2 o", "o OR:2", "OR:2 <=", "OR:2 <=-1"})
        CHECK_THROWS_AS((void)parse_funcspec(s), std::invalid_argument);
}

TEST_CASE("dense expansion matches pointwise evaluation") {
    BoolFn f = parse_funcspec("OR:2 o THR:2:3");
    auto table = f.dense_expand();
    REQUIRE(table.size() == 64);
    for (uint64_t m = 0; m < 64; ++m) CHECK(table[m] == f.eval_mask(m));
}

TEST_CASE("eval agrees between sign-vector and mask forms") {
    BoolFn f = make_thr(2, 5);
    for (uint64_t m = 0; m < 32; ++m)
        CHECK(f.eval(SignVector::from_mask(m, 5)) == f.eval_mask(m));
}
