#ifndef LTS_HARNESS_HPP
#define LTS_HARNESS_HPP

#include "lts/checker.hpp"
#include "lts/eval.hpp"
#include "lts/syntax.hpp"
#include "lts/types.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace lts {

using Rng = std::mt19937_64;

// Independent generator state for term `index` of a run seeded with `seed`.
Rng rng_for_term(std::uint64_t seed, std::size_t index);

struct GenOptions {
    RefineEnv delta;
    bool with_refinements = false;
    // Generation validates against a checker with this fault, so a faulty
    // checker gets terms that exploit its defect.
    Fault fault = Fault::None;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

// A random closed term of depth ≤ max_depth that typechecks in Primary mode.
// Throws GenerationError if no term can be produced even at depth 1.
Expr gen_typed_term(Rng& rng, int max_depth, const GenOptions& options = {});

struct Failure {
    std::string kind;  // preservation | progress | soundness | erasure-typing | erasure-step | precondition
    std::string term;  // minimal failing term after shrinking
    std::size_t step = 0;
    std::string detail;
    std::string original;  // the term as generated
    std::size_t term_index = 0;  // position in the fuzz run
};

struct SubjectReductionOptions {
    std::size_t fuel = 1000;
    RefineEnv delta;
    bool check_erasure = false;
    Fault fault = Fault::None;
    RuleCoverage* coverage = nullptr;
    // Mode of the initial judgment; Extended admits reducts such as
    // (if (number? #f) (add1 #f) (not #f)) as starting points.
    Mode initial_mode = Mode::Primary;
};

struct SubjectReductionResult {
    std::vector<Failure> failures;
    std::size_t steps = 0;
    bool fuel_exhausted = false;
    bool narrowed = false;  // the Primary derivation narrowed Γ in some branch
    bool union_filter = false;  // the Primary derivation used combfilter's union clause
    bool unrefined_untypable = false;  // erased term needs a refinement latent; chain skipped

    bool ok() const { return failures.empty(); }
};

// Runs e to a value (or out of fuel) and checks every step: each
// intermediate term types in the Extended system at a subtype with a
// sub-predicate of its predecessor, no non-value is stuck, and a final value
// of base type matches the original judgment. Terms are checked after
// erasure of refinements; with check_erasure the erasure lemmas are checked
// on the original terms as well.
SubjectReductionResult check_subject_reduction(const Expr& e, const SubjectReductionOptions& options);

// Greedily replaces subterms by literals while `still_fails` holds.
Expr shrink(const Expr& e, const std::function<bool(const Expr&)>& still_fails);

struct FuzzConfig {
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    int max_depth = 5;
    std::size_t fuel = 1000;
    bool with_refinements = false;
    Fault fault = Fault::None;
    unsigned threads = 0;  // 0: one per hardware thread
};

struct FuzzReport {
    std::size_t generated = 0;
    std::vector<Failure> preservation_failures;
    std::vector<Failure> progress_failures;
    std::vector<Failure> soundness_failures;
    std::vector<Failure> erasure_failures;
    RuleCoverage coverage;
    std::size_t narrowing_terms = 0;
    std::size_t union_filter_terms = 0;
    std::size_t fuel_exhausted = 0;
    std::size_t unrefined_untypable = 0;
    std::size_t total_steps = 0;
    std::uint64_t seed = 0;
    std::chrono::milliseconds elapsed{0};

    std::size_t failure_count() const;
    bool ok() const { return failure_count() == 0; }

    // {generated, failures:[{kind, term, step, detail}], coverage:{rule→count}, seed, elapsed_ms}
    nlohmann::json to_json() const;
    std::string summary() const;
};

// Throws std::invalid_argument for count == 0 or max_depth < 1.
FuzzReport run_fuzz(const FuzzConfig& config);

}  // namespace lts

#endif  // LTS_HARNESS_HPP
