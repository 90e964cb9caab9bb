#include "oracle.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace lts;
using testutil::E;
using testutil::show;

namespace {

void report(const oracle::SweepResult& r) {
    for (std::size_t i = 0; i < r.disagreements.size() && i < 5; ++i) {
        MESSAGE(r.disagreements[i].term << ": " << r.disagreements[i].detail);
    }
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("the enumerator finds the expected principal judgments") {
    oracle::Pools p = oracle::default_pools();
    auto j = oracle::principal(RefineEnv{}, p.env, E("(if (number? y) (add1 y) (not y))"), Mode::Primary);
    REQUIRE(j);
    CHECK(show(*j) == "(U Number Boolean) ; none");
    j = oracle::principal(RefineEnv{}, p.env, E("(number? x)"), Mode::Primary);
    REQUIRE(j);
    CHECK(show(*j) == "Boolean ; Number @ x");
    CHECK_FALSE(oracle::principal(RefineEnv{}, p.env, E("(add1 y)"), Mode::Primary));
    CHECK(oracle::derivable(RefineEnv{}, p.env, E("(number? #f)"), Mode::Extended).size() >
          oracle::derivable(RefineEnv{}, p.env, E("(number? #f)"), Mode::Primary).size());
}

TEST_CASE("term enumeration") {
    auto terms = oracle::enumerate_terms(2, {Expr::num(0)}, {"z"}, {Type::top()});
    // depth 1: 0, z; depth 2: one lambda per body, four applications, eight conditionals
    CHECK(terms.size() == 2 + 2 + 4 + 8);
    for (const auto& e : oracle::enumerate_terms(3, {Expr::num(0)}, {"z"}, {Type::top()}, false)) {
        CHECK(depth(e) <= 3);
        if (depth(e) == 3) CHECK_FALSE(e.is(Expr::Kind::If));
    }
}

TEST_CASE("exhaustive agreement, primary") {
    auto r = oracle::sweep_exhaustive(Mode::Primary);
    report(r);
    CHECK(r.disagreements.empty());
    CHECK(r.typed > 1000);
}

TEST_CASE("exhaustive agreement, extended") {
    auto r = oracle::sweep_exhaustive(Mode::Extended);
    report(r);
    CHECK(r.disagreements.empty());
}

TEST_CASE("random agreement up to depth 4") {
    for (Mode mode : {Mode::Primary, Mode::Extended}) {
        auto r = oracle::sweep_random(mode, 5000, 7, 4);
        report(r);
        CHECK(r.disagreements.empty());
        CHECK(r.typed > 500);
    }
}

}
