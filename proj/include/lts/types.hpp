#ifndef LTS_TYPES_HPP
#define LTS_TYPES_HPP

#include "lts/syntax.hpp"

#include <initializer_list>
#include <set>

namespace lts {

// The constants admitted as refinement predicates (Δ).
class RefineEnv {
public:
    RefineEnv() = default;
    RefineEnv(std::initializer_list<Constant> members) : members_(members) {}

    bool contains(Constant c) const { return members_.count(c) != 0; }
    bool empty() const { return members_.empty(); }
    const std::set<Constant>& members() const { return members_; }

    void insert(Constant c) { members_.insert(c); }

    friend bool operator==(const RefineEnv&, const RefineEnv&) = default;

private:
    std::set<Constant> members_;
};

// Raised when a refinement type mentions a constant that was never declared.
class UndeclaredRefinement : public Error {
public:
    explicit UndeclaredRefinement(Constant c);
    Constant constant() const { return constant_; }

private:
    Constant constant_;
};

// The type of each primitive operation.
Type delta_type(Constant c);

// Refine(c, τ) where τ is the argument type of delta_type(c).
Type refinement(Constant c);

// Flattens nested unions, drops empty members, removes duplicate members
// (first occurrence wins) and collapses singleton unions. Applied
// recursively; the result is a fixed point.
Type normalize(const Type& t);

bool type_equal(const Type& s, const Type& t);

// s ≤ t under Δ. Throws UndeclaredRefinement if either side mentions a
// refinement whose constant is not in delta.
bool subtype(const RefineEnv& delta, const Type& s, const Type& t);

bool mentions_refinement(const Type& t);

// Throws UndeclaredRefinement for the first Refine(c, _) in t with c ∉ delta.
void require_declared(const RefineEnv& delta, const Type& t);

}  // namespace lts

#endif  // LTS_TYPES_HPP
