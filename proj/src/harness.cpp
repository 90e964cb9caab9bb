#include "lts/harness.hpp"
#include "lts/refine.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace lts {

namespace {

Failure make_failure(std::string kind, const Expr& term, std::size_t step, std::string detail) {
    std::string text = print_expr(term);
    return Failure{std::move(kind), text, step, std::move(detail), text};
}

// Number, True, False and unions of them.
bool is_base_type(const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Number:
        case Type::Kind::True:
        case Type::Kind::False: return true;
        case Type::Kind::Union: return std::all_of(t.members().begin(), t.members().end(), is_base_type);
        default: return false;
    }
}

std::string show(const Judgment& j) { return print_type(normalize(j.type)) + " ; " + print_pred(j.pred); }

bool same_step_shape(const StepResult& a, const StepResult& b) {
    if (a.kind != b.kind) return false;
    if (a.is(StepResult::Kind::Stepped)) return *a.next == *b.next;
    return true;
}

}  // namespace

SubjectReductionResult check_subject_reduction(const Expr& e, const SubjectReductionOptions& options) {
    SubjectReductionResult result;
    RuleCoverage local;

    CheckOptions primary;
    primary.mode = options.initial_mode;
    primary.coverage = &local;
    primary.fault = options.fault;

    std::optional<Judgment> initial;
    try {
        initial = typecheck(options.delta, TypeEnv{}, e, primary);
    } catch (const Error& err) {
        result.failures.push_back(make_failure("precondition", e, 0, std::string("term does not typecheck: ") + err.what()));
        return result;
    }
    result.narrowed = local.narrowing > 0;
    result.union_filter = local.combfilter_union > 0;

    std::vector<Expr> terms = trace(e, options.fuel);
    result.steps = terms.size() - 1;
    StepResult last = step(terms.back());
    result.fuel_exhausted = last.is(StepResult::Kind::Stepped);
    if (last.is(StepResult::Kind::Stuck)) {
        result.failures.push_back(make_failure("progress", e, result.steps,
                                               "stuck at " + print_expr(terms.back()) + ": " + last.reason));
    }

    // Subject reduction is checked on erased terms in the refinement-free
    // Extended system, where even? and odd? carry no latent predicate.
    CheckOptions extended;
    extended.mode = Mode::Extended;
    extended.coverage = &local;
    extended.fault = options.fault;
    extended.constants = ConstantTyping::Unrefined;
    const RefineEnv no_refinements;

    std::optional<Judgment> previous;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Expr erased = erase_expr(terms[i]);
        std::optional<Judgment> current;
        try {
            current = typecheck(no_refinements, TypeEnv{}, erased, extended);
        } catch (const Error& err) {
            if (i == 0 && !options.delta.empty()) {
                // The term relies on a refinement latent and has no
                // refinement-free typing to start the chain from.
                result.unrefined_untypable = true;
                break;
            }
            result.failures.push_back(make_failure(
                "preservation", e, i, print_expr(erased) + " does not typecheck in the extended system: " + err.what()));
            break;
        }
        if (previous) {
            if (!subtype(no_refinements, current->type, previous->type)) {
                result.failures.push_back(make_failure("preservation", e, i,
                                                       "type of " + print_expr(erased) + " is " + show(*current) +
                                                           ", not below " + show(*previous)));
            } else if (!subpred(current->pred, previous->pred)) {
                result.failures.push_back(make_failure("preservation", e, i,
                                                       "predicate of " + print_expr(erased) + " is " + show(*current) +
                                                           ", not below " + show(*previous)));
            }
        }
        previous = current;
    }

    if (last.is(StepResult::Kind::AlreadyValue)) {
        Type expected = normalize(erase_type(initial->type));
        if (is_base_type(expected)) {
            const Expr& v = terms.back();
            try {
                Judgment value = typecheck(no_refinements, TypeEnv{}, erase_expr(v), extended);
                VisiblePred expected_pred = erase_pred(initial->pred);
                if (!subtype(no_refinements, value.type, expected) || !subpred(value.pred, expected_pred)) {
                    result.failures.push_back(make_failure("soundness", e, result.steps,
                                                           "value " + print_expr(v) + " : " + show(value) +
                                                               " does not match " + print_type(expected) + " ; " +
                                                               print_pred(expected_pred)));
                }
            } catch (const Error& err) {
                result.failures.push_back(
                    make_failure("soundness", e, result.steps, "value " + print_expr(v) + " does not typecheck: " + err.what()));
            }
        }
    }

    if (options.check_erasure) {
        if (!erased_judgment_holds(options.delta, TypeEnv{}, e)) {
            result.failures.push_back(
                make_failure("erasure-typing", e, 0, "erased term " + print_expr(erase_expr(e)) + " fails to typecheck"));
        }
        for (std::size_t i = 0; i < terms.size(); ++i) {
            StepResult original = i + 1 < terms.size() ? StepResult{StepResult::Kind::Stepped, erase_expr(terms[i + 1]), {}, {}}
                                                       : last;
            if (i + 1 == terms.size() && original.is(StepResult::Kind::Stepped)) {
                original.next = erase_expr(*original.next);
            }
            StepResult erased = step(erase_expr(terms[i]));
            if (!same_step_shape(original, erased)) {
                result.failures.push_back(make_failure("erasure-step", e, i,
                                                       "erasing " + print_expr(terms[i]) + " does not commute with step"));
                break;
            }
        }
    }

    if (options.coverage) options.coverage->merge(local);
    return result;
}

namespace {

// Pre-order traversal index → subterm replacement.
Expr replace_at(const Expr& e, std::size_t& index, const Expr& replacement, bool& done) {
    if (done) return e;
    if (index == 0) {
        done = true;
        return replacement;
    }
    --index;
    switch (e.kind()) {
        case Expr::Kind::Abs: {
            Expr body = replace_at(e.body(), index, replacement, done);
            return Expr::abs(e.name(), e.annot(), body);
        }
        case Expr::Kind::App: {
            Expr rator = replace_at(e.rator(), index, replacement, done);
            Expr rand = replace_at(e.rand(), index, replacement, done);
            return Expr::app(rator, rand);
        }
        case Expr::Kind::If: {
            Expr test = replace_at(e.test(), index, replacement, done);
            Expr then_branch = replace_at(e.then_branch(), index, replacement, done);
            Expr else_branch = replace_at(e.else_branch(), index, replacement, done);
            return Expr::if_(test, then_branch, else_branch);
        }
        default: return e;
    }
}

}  // namespace

Expr shrink(const Expr& e, const std::function<bool(const Expr&)>& still_fails) {
    const Expr literals[] = {Expr::num(0), Expr::boolean(true), Expr::boolean(false)};
    Expr current = e;
    bool improved = true;
    while (improved) {
        improved = false;
        std::size_t n = size(current);
        for (std::size_t pos = 0; pos < n && !improved; ++pos) {
            for (const auto& literal : literals) {
                std::size_t index = pos;
                bool done = false;
                Expr candidate = replace_at(current, index, literal, done);
                if (candidate == current || size(candidate) >= size(current)) continue;
                if (still_fails(candidate)) {
                    current = candidate;
                    improved = true;
                    break;
                }
            }
        }
    }
    return current;
}

std::size_t FuzzReport::failure_count() const {
    return preservation_failures.size() + progress_failures.size() + soundness_failures.size() +
           erasure_failures.size();
}

nlohmann::json FuzzReport::to_json() const {
    nlohmann::json out;
    out["generated"] = generated;
    std::vector<const Failure*> all;
    for (const auto* list : {&preservation_failures, &progress_failures, &soundness_failures, &erasure_failures}) {
        for (const auto& f : *list) all.push_back(&f);
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Failure* a, const Failure* b) { return a->term_index < b->term_index; });
    nlohmann::json failures = nlohmann::json::array();
    for (const Failure* f : all) {
        failures.push_back({{"kind", f->kind},
                            {"term", f->term},
                            {"step", f->step},
                            {"detail", f->detail},
                            {"original", f->original},
                            {"index", f->term_index}});
    }
    out["failures"] = failures;
    nlohmann::json cov = nlohmann::json::object();
    for (Rule r : kAllRules) {
        auto it = coverage.rules.find(r);
        cov[std::string(rule_name(r))] = it == coverage.rules.end() ? 0 : it->second;
    }
    cov["narrowing"] = coverage.narrowing;
    cov["combfilter-union"] = coverage.combfilter_union;
    cov["narrowing-terms"] = narrowing_terms;
    cov["combfilter-union-terms"] = union_filter_terms;
    out["coverage"] = cov;
    out["seed"] = seed;
    out["elapsed_ms"] = elapsed.count();
    out["fuel_exhausted"] = fuel_exhausted;
    out["unrefined_untypable"] = unrefined_untypable;
    out["steps"] = total_steps;
    return out;
}

std::string FuzzReport::summary() const {
    std::ostringstream out;
    out << "generated " << generated << " terms (seed " << seed << ", " << total_steps << " steps, " << elapsed.count()
        << " ms)\n";
    out << "failures: preservation " << preservation_failures.size() << ", progress " << progress_failures.size()
        << ", soundness " << soundness_failures.size() << ", erasure " << erasure_failures.size() << "\n";
    if (fuel_exhausted) out << "fuel exhausted on " << fuel_exhausted << " terms\n";
    if (unrefined_untypable) {
        out << "preservation chain skipped on " << unrefined_untypable << " terms with no refinement-free typing\n";
    }
    out << "rule coverage:\n";
    for (Rule r : kAllRules) {
        auto it = coverage.rules.find(r);
        out << "  " << rule_name(r) << " " << (it == coverage.rules.end() ? 0 : it->second) << "\n";
    }
    auto percent = [&](std::size_t n) { return generated ? 100.0 * static_cast<double>(n) / generated : 0.0; };
    out.setf(std::ios::fixed);
    out.precision(1);
    out << "occurrence typing: narrowing in " << narrowing_terms << " terms (" << percent(narrowing_terms)
        << "%), combfilter union clause in " << union_filter_terms << " terms (" << percent(union_filter_terms)
        << "%)\n";
    auto print_failures = [&](const std::vector<Failure>& list) {
        for (const auto& f : list) {
            out << f.kind << " failure at step " << f.step << ": " << f.term << "\n  " << f.detail << "\n";
        }
    };
    print_failures(preservation_failures);
    print_failures(progress_failures);
    print_failures(soundness_failures);
    print_failures(erasure_failures);
    return out.str();
}

namespace {

struct TermOutcome {
    SubjectReductionResult result;
    RuleCoverage coverage;
};

TermOutcome run_one(const FuzzConfig& config, const GenOptions& gen_options, std::size_t index) {
    Rng rng = rng_for_term(config.seed, index);
    Expr e = gen_typed_term(rng, config.max_depth, gen_options);
    TermOutcome out;
    SubjectReductionOptions options;
    options.fuel = config.fuel;
    options.delta = gen_options.delta;
    options.check_erasure = config.with_refinements;
    options.fault = config.fault;
    options.coverage = &out.coverage;
    out.result = check_subject_reduction(e, options);

    for (auto& failure : out.result.failures) {
        SubjectReductionOptions quiet = options;
        quiet.coverage = nullptr;
        const std::string kind = failure.kind;
        Expr minimal = shrink(e, [&](const Expr& candidate) {
            auto r = check_subject_reduction(candidate, quiet);
            return std::any_of(r.failures.begin(), r.failures.end(), [&](const Failure& f) { return f.kind == kind; });
        });
        failure.term = print_expr(minimal);
        failure.term_index = index;
    }
    return out;
}

}  // namespace

FuzzReport run_fuzz(const FuzzConfig& config) {
    if (config.count == 0) throw std::invalid_argument("fuzz: count must be at least 1");
    if (config.max_depth < 1) throw std::invalid_argument("fuzz: depth must be at least 1");

    auto start = std::chrono::steady_clock::now();
    GenOptions gen_options;
    gen_options.with_refinements = config.with_refinements;
    gen_options.fault = config.fault;
    if (config.with_refinements) gen_options.delta = RefineEnv{Constant::IsEven, Constant::IsOdd};

    std::vector<TermOutcome> outcomes(config.count);
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < config.count; ++i) outcomes[i] = run_one(config, gen_options, i);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t i = t; i < config.count; i += threads) outcomes[i] = run_one(config, gen_options, i);
            });
        }
        for (auto& w : workers) w.join();
    }

    FuzzReport report;
    report.seed = config.seed;
    report.generated = config.count;
    for (auto& outcome : outcomes) {
        report.coverage.merge(outcome.coverage);
        const auto& r = outcome.result;
        report.total_steps += r.steps;
        if (r.narrowed) ++report.narrowing_terms;
        if (r.union_filter) ++report.union_filter_terms;
        if (r.fuel_exhausted) ++report.fuel_exhausted;
        if (r.unrefined_untypable) ++report.unrefined_untypable;
        for (const auto& f : r.failures) {
            if (f.kind == "preservation" || f.kind == "precondition") {
                report.preservation_failures.push_back(f);
            } else if (f.kind == "progress") {
                report.progress_failures.push_back(f);
            } else if (f.kind == "soundness") {
                report.soundness_failures.push_back(f);
            } else {
                report.erasure_failures.push_back(f);
            }
        }
    }
    report.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return report;
}

}  // namespace lts
