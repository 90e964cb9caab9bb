#include "lts/harness.hpp"
#include "lts/refine.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace lts;
using testutil::E;
using testutil::P;
using testutil::T;

namespace {

bool has_refine(const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Refine: return true;
        case Type::Kind::Arrow:
            return has_refine(t.arg()) || has_refine(t.result()) || (t.latent() && has_refine(*t.latent()));
        case Type::Kind::Union:
            for (const auto& m : t.members()) {
                if (has_refine(m)) return true;
            }
            return false;
        default: return false;
    }
}

bool has_refine(const Expr& e) {
    if (e.is(Expr::Kind::Abs) && has_refine(e.annot())) return true;
    for (const auto& c : e.children()) {
        if (has_refine(c)) return true;
    }
    return false;
}

GenOptions refined() {
    GenOptions options;
    options.with_refinements = true;
    options.delta = {Constant::IsEven, Constant::IsOdd};
    return options;
}

}  // namespace

TEST_SUITE("refine") {

TEST_CASE("declare_refinement") {
    RefineEnv d = declare_refinement(RefineEnv{}, Constant::IsEven);
    CHECK(d.contains(Constant::IsEven));
    CHECK_FALSE(d.contains(Constant::IsOdd));
    CHECK(declare_refinement(d, Constant::IsEven) == d);
    CHECK(declare_refinement(d, Constant::IsOdd).members().size() == 2);
}

TEST_CASE("erasure examples") {
    CHECK(erase_type(T("(Refinement even?)")) == Type::number());
    CHECK(type_equal(erase_type(T("(-> (Refinement even?) Number)")), T("(-> Number Number)")));
    CHECK(type_equal(erase_type(T("(-> Number Boolean : (Refinement odd?))")), T("(-> Number Boolean : Number)")));
    CHECK(type_equal(erase_type(T("(U (Refinement even?) Boolean)")), T("(U Number Boolean)")));
    CHECK(erase_type(Type::top()) == Type::top());
    CHECK(erase_expr(E("(lambda (f : (-> (Refinement even?) Number)) (f 2))")) ==
          E("(lambda (f : (-> Number Number)) (f 2))"));
    CHECK(erase_pred(P("(Refinement even?) @ x")) == P("Number @ x"));
    CHECK(erase_pred(P("tt")) == P("tt"));
    TypeEnv g = erase_env(TypeEnv{{"n", T("(Refinement odd?)")}, {"b", Type::boolean()}});
    CHECK(g.lookup("n") == Type::number());
    CHECK(type_equal(g.lookup("b"), Type::boolean()));
}

TEST_CASE("erasure is idempotent and leaves no refinement") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 3000; ++i) {
        Type t = testutil::random_type(rng, 4);
        Type once = erase_type(t);
        CHECK(erase_type(once) == once);
        CHECK_FALSE(has_refine(once));
        if (!has_refine(t)) CHECK(once == t);
    }
}

TEST_CASE("erasure preserves values, free variables and size") {
    for (std::size_t i = 0; i < 500; ++i) {
        Rng rng = rng_for_term(71, i);
        Expr e = gen_typed_term(rng, 6, refined());
        Expr erased = erase_expr(e);
        CHECK_FALSE(has_refine(erased));
        CHECK(is_value(erased) == is_value(e));
        CHECK(free_vars(erased) == free_vars(e));
        CHECK(size(erased) == size(e));
        CHECK(erase_expr(erased) == erased);
    }
}

TEST_CASE("erased judgments") {
    const RefineEnv even{Constant::IsEven};
    CHECK(erased_judgment_holds(
        even, TypeEnv{}, E("(lambda (f : (-> (Refinement even?) Number)) (lambda (n : Number) (if (even? n) (f n) n)))")));
    CHECK(erased_judgment_holds(even, TypeEnv{{"n", T("(Refinement even?)")}}, E("n")));
    CHECK(erased_judgment_holds(RefineEnv{}, TypeEnv{}, E("(number? 1)")));
    CHECK_THROWS_AS(erased_judgment_holds(RefineEnv{}, TypeEnv{}, E("(add1 #t)")), TypeError);
}

TEST_CASE("erased judgments hold on generated terms") {
    const GenOptions options = refined();
    for (std::size_t i = 0; i < 1000; ++i) {
        Rng rng = rng_for_term(73, i);
        Expr e = gen_typed_term(rng, 6, options);
        CAPTURE(print_expr(e));
        CHECK(erased_judgment_holds(options.delta, TypeEnv{}, e));
    }
}

TEST_CASE("erasure commutes with step") {
    const GenOptions options = refined();
    for (std::size_t i = 0; i < 500; ++i) {
        Rng rng = rng_for_term(79, i);
        Expr e = gen_typed_term(rng, 6, options);
        for (const Expr& t : trace(e, 100)) {
            StepResult a = step(t);
            StepResult b = step(erase_expr(t));
            REQUIRE(a.kind == b.kind);
            if (a.is(StepResult::Kind::Stepped)) CHECK(erase_expr(*a.next) == *b.next);
        }
    }
}

}
