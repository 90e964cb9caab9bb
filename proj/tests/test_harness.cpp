#include "lts/harness.hpp"
#include "util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lts;
using testutil::E;

namespace {

bool has_kind(const SubjectReductionResult& r, const std::string& kind) {
    return std::any_of(r.failures.begin(), r.failures.end(), [&](const Failure& f) { return f.kind == kind; });
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("generated terms are closed, typed and within depth") {
    for (int d : {1, 2, 4, 6}) {
        for (std::size_t i = 0; i < 300; ++i) {
            Rng rng = rng_for_term(83, i);
            Expr e = gen_typed_term(rng, d);
            CHECK(is_closed(e));
            CHECK(depth(e) <= d);
            CHECK_NOTHROW(typecheck(RefineEnv{}, TypeEnv{}, e, Mode::Primary));
        }
    }
}

TEST_CASE("generation is a function of seed and index") {
    for (std::size_t i = 0; i < 100; ++i) {
        Rng a = rng_for_term(89, i);
        Rng b = rng_for_term(89, i);
        CHECK(gen_typed_term(a, 6) == gen_typed_term(b, 6));
    }
    std::size_t differ = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        Rng a = rng_for_term(89, i);
        Rng b = rng_for_term(97, i);
        if (!(gen_typed_term(a, 6) == gen_typed_term(b, 6))) ++differ;
    }
    CHECK(differ > 50);
}

TEST_CASE("generated refinement terms use refinements") {
    GenOptions options;
    options.with_refinements = true;
    options.delta = {Constant::IsEven, Constant::IsOdd};
    std::size_t with_refinement = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        Rng rng = rng_for_term(101, i);
        Expr e = gen_typed_term(rng, 6, options);
        CHECK_NOTHROW(typecheck(options.delta, TypeEnv{}, e, Mode::Primary));
        if (print_expr(e).find("Refinement") != std::string::npos) ++with_refinement;
    }
    CHECK(with_refinement > 30);
}

TEST_CASE("subject reduction on the motivating term") {
    SubjectReductionOptions options;
    auto r = check_subject_reduction(E("((lambda (x : (U Number Boolean)) (if (number? x) (add1 x) (not x))) #f)"), options);
    CHECK(r.ok());
    CHECK(r.steps == 4);
    CHECK(r.narrowed);
    CHECK_FALSE(r.fuel_exhausted);
}

TEST_CASE("subject reduction from an extended starting point") {
    SubjectReductionOptions options;
    Expr e = E("(if (number? #f) (add1 #f) (not #f))");
    CHECK(has_kind(check_subject_reduction(e, options), "precondition"));
    options.initial_mode = Mode::Extended;
    auto r = check_subject_reduction(e, options);
    CHECK(r.ok());
    CHECK(r.steps == 3);
}

TEST_CASE("fuel exhaustion is reported, not failed") {
    SubjectReductionOptions options;
    options.fuel = 1;
    auto r = check_subject_reduction(E("(add1 (add1 (add1 0)))"), options);
    CHECK(r.ok());
    CHECK(r.fuel_exhausted);
}

TEST_CASE("a predicate weakened to none by a step") {
    // The literal test (if #f #t a) gives a predicate of a, which the
    // extended application rule turns into ff once a is bound to #t; after
    // substitution the test is (if #f #t #t), whose predicate is only none.
    SubjectReductionOptions options;
    auto r = check_subject_reduction(E("((lambda (a : Boolean) (number? (if #f #t a))) #t)"), options);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].kind == "preservation");
    CHECK(r.failures[0].step == 1);
    CHECK(r.failures[0].detail.find("predicate") != std::string::npos);
}

TEST_CASE("the only preservation failures are predicates weakened to none") {
    // T-AppPredFalse needs a closed value as argument; substitution can leave
    // a non-value there, e.g. (if #f #t #t), and the ff predicate is lost.
    for (std::uint64_t seed : {2, 4, 5}) {
        FuzzConfig config;
        config.count = 10000;
        config.seed = seed;
        config.max_depth = 6;
        FuzzReport report = run_fuzz(config);
        CHECK(report.progress_failures.empty());
        CHECK(report.soundness_failures.empty());
        for (const auto& f : report.preservation_failures) {
            CAPTURE(f.term);
            CHECK(f.detail.rfind("predicate of ", 0) == 0);
            CHECK(f.detail.find("; none, not below") != std::string::npos);
            CHECK(f.detail.find("; ff") != std::string::npos);
        }
    }
}

TEST_CASE("checker faults are caught") {
    SUBCASE("else branch under the positive environment") {
        SubjectReductionOptions options;
        options.fault = Fault::ElseUsesEnvPlus;
        auto r = check_subject_reduction(E("((lambda (x : (U Number Boolean)) (if (number? x) (add1 x) (add1 x))) #f)"),
                                         options);
        CHECK(has_kind(r, "progress"));
    }
    SUBCASE("literals at Boolean") {
        SubjectReductionOptions options;
        options.fault = Fault::LiteralsAtBoolean;
        auto r = check_subject_reduction(E("((lambda (a : Boolean) (if a 0 ((lambda (d : False) 7) a))) #f)"), options);
        CHECK(has_kind(r, "preservation"));
    }
    SUBCASE("skipping the negative environment only rejects more terms") {
        CheckOptions options;
        options.fault = Fault::SkipEnvMinus;
        CHECK_THROWS_AS(typecheck(RefineEnv{}, TypeEnv{},
                                  E("(lambda (x : (U Number Boolean)) (if (number? x) (add1 x) ((lambda (b : Boolean) b) x)))"), options),
                        TypeError);
        FuzzConfig config;
        config.count = 1000;
        config.max_depth = 6;
        config.fault = Fault::SkipEnvMinus;
        config.threads = 1;
        CHECK(run_fuzz(config).ok());
    }
    SUBCASE("fuzzing finds the unsound faults") {
        for (Fault fault : {Fault::ElseUsesEnvPlus, Fault::LiteralsAtBoolean}) {
            FuzzConfig config;
            config.count = 2000;
            config.max_depth = 6;
            config.fault = fault;
            config.threads = 1;
            FuzzReport report = run_fuzz(config);
            CAPTURE(static_cast<int>(fault));
            CHECK(report.failure_count() > 0);
        }
    }
}

TEST_CASE("shrink finds a small failing subterm") {
    Expr e = E("(if (number? 3) ((lambda (x : Top) (add1 #t)) 5) (not 1))");
    Expr small = shrink(e, [](const Expr& c) {
        return evaluate(c, 100).is(EvalOutcome::Kind::Stuck);
    });
    CHECK(evaluate(small, 100).is(EvalOutcome::Kind::Stuck));
    CHECK(size(small) < size(e));
}

TEST_CASE("fuzz arguments are validated") {
    FuzzConfig config;
    config.count = 0;
    CHECK_THROWS_AS(run_fuzz(config), std::invalid_argument);
    config.count = 1;
    config.max_depth = 0;
    CHECK_THROWS_AS(run_fuzz(config), std::invalid_argument);
}

TEST_CASE("a small fuzz run is clean and reports as JSON") {
    FuzzConfig config;
    config.count = 500;
    config.max_depth = 5;
    config.seed = 1;
    config.threads = 2;
    FuzzReport report = run_fuzz(config);
    CHECK(report.generated == 500);
    CHECK(report.ok());
    nlohmann::json j = report.to_json();
    CHECK(j["generated"] == 500);
    CHECK(j["seed"] == 1);
    CHECK(j["failures"].is_array());
    CHECK(j["elapsed_ms"].is_number());
    for (Rule r : kAllRules) CHECK(j["coverage"].contains(std::string(rule_name(r))));
    CHECK(report.summary().find("generated 500 terms") != std::string::npos);
}

TEST_CASE("fuzz results do not depend on the thread count") {
    FuzzConfig config;
    config.count = 300;
    config.max_depth = 6;
    config.seed = 2;
    config.with_refinements = true;
    config.threads = 1;
    FuzzReport one = run_fuzz(config);
    config.threads = 3;
    FuzzReport three = run_fuzz(config);
    CHECK(one.total_steps == three.total_steps);
    CHECK(one.failure_count() == three.failure_count());
    CHECK(one.coverage.rules == three.coverage.rules);
    CHECK(one.narrowing_terms == three.narrowing_terms);
}

}
