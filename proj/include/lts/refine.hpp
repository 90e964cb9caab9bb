#ifndef LTS_REFINE_HPP
#define LTS_REFINE_HPP

#include "lts/checker.hpp"
#include "lts/syntax.hpp"
#include "lts/types.hpp"

namespace lts {

// Δ ∪ {c}.
RefineEnv declare_refinement(RefineEnv delta, Constant c);

// Erasure: every Refine(c, τ) becomes erase_type(τ); everything else is
// traversed homomorphically.
Type erase_type(const Type& t);
Expr erase_expr(const Expr& e);
VisiblePred erase_pred(const VisiblePred& p);
TypeEnv erase_env(const TypeEnv& g);

// Given that Γ ⊢ e : τ ; p under Δ in Primary mode, checks that the erased
// term types under the erased environment with an empty Δ at erase(τ) ;
// erase(p), or at a subtype with a sub-predicate of it. Returns false when
// the erased derivation fails or disagrees.
bool erased_judgment_holds(const RefineEnv& delta, const TypeEnv& g, const Expr& e);

}  // namespace lts

#endif  // LTS_REFINE_HPP
