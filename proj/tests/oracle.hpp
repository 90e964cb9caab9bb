// Brute-force derivation enumerator used as a reference for the checker.
//
// Collects every judgment derivable for a term by trying each typing rule
// instantiation, then selects the principal one (least type, sharpest
// predicate). Environment operations and combfilter are implemented here
// independently from the checker; only subtyping and normalization are
// shared.

#ifndef LTS_TESTS_ORACLE_HPP
#define LTS_TESTS_ORACLE_HPP

#include "lts/checker.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

std::vector<lts::Judgment> derivable(const lts::RefineEnv& delta, const lts::TypeEnv& g, const lts::Expr& e,
                                     lts::Mode mode);

// The judgment whose type is below and whose predicate is a sub-predicate
// of every other derivable judgment. nullopt when nothing is derivable.
// Throws std::logic_error when judgments exist but none is principal.
std::optional<lts::Judgment> principal(const lts::RefineEnv& delta, const lts::TypeEnv& g, const lts::Expr& e,
                                       lts::Mode mode);

struct Disagreement {
    std::string term;
    std::string detail;
};

// Compares typecheck against the enumerator; nullopt when they agree. The
// checker's judgment must be derivable and least among the derivable ones.
// A term may have no least judgment (a test that cannot succeed types its
// dead branch in incomparable ways); then derivability is enough and
// *no_principal is set.
std::optional<Disagreement> compare(const lts::RefineEnv& delta, const lts::TypeEnv& g, const lts::Expr& e,
                                    lts::Mode mode, bool* no_principal = nullptr);

// All terms of depth ≤ max_depth built from the given leaves, lambda
// parameters and annotations.
std::vector<lts::Expr> enumerate_terms(int max_depth, const std::vector<lts::Expr>& leaves,
                                       const std::vector<std::string>& params, const std::vector<lts::Type>& annotations,
                                       bool with_if_at_top = true);

// A term over the same grammar with each node kind equally likely.
lts::Expr random_term(std::mt19937_64& rng, int max_depth, const std::vector<lts::Expr>& leaves,
                      const std::vector<std::string>& params, const std::vector<lts::Type>& annotations);

// The fixed setting of the comparison runs: Γ = {x : Top, y : (U Number Boolean)}.
struct Pools {
    lts::TypeEnv env;
    std::vector<lts::Expr> leaves;
    std::vector<std::string> params;
    std::vector<lts::Type> annotations;
};
Pools default_pools();

struct SweepResult {
    std::size_t checked = 0;
    std::size_t typed = 0;
    std::size_t no_principal = 0;  // typed terms without a least judgment
    std::vector<Disagreement> disagreements;
};

// Every term of depth ≤ 2, depth-3 terms without a conditional at the root
// over a smaller leaf set, and abstractions over each annotation with every
// depth-2 body, compared in the given mode.
SweepResult sweep_exhaustive(lts::Mode mode);

// `count` random terms of depth ≤ max_depth.
SweepResult sweep_random(lts::Mode mode, std::size_t count, std::uint64_t seed, int max_depth);

}  // namespace oracle

#endif  // LTS_TESTS_ORACLE_HPP
