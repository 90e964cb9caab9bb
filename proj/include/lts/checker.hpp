#ifndef LTS_CHECKER_HPP
#define LTS_CHECKER_HPP

#include "lts/syntax.hpp"
#include "lts/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace lts {

// Γ: a finite map from variables to types.
class TypeEnv {
public:
    TypeEnv() = default;
    TypeEnv(std::initializer_list<std::pair<const std::string, Type>> bindings) : bindings_(bindings) {}

    // Throws TypeError for an unbound name.
    const Type& lookup(const std::string& x) const;
    bool contains(const std::string& x) const { return bindings_.count(x) != 0; }

    // Copy with x rebound to t.
    TypeEnv extend(const std::string& x, Type t) const;

    const std::map<std::string, Type>& bindings() const { return bindings_; }

private:
    std::map<std::string, Type> bindings_;
};

// Equal names with type_equal types.
bool env_equal(const TypeEnv& a, const TypeEnv& b);

struct Judgment {
    Type type;
    VisiblePred pred;
};

enum class Mode { Primary, Extended };

// Typing rule names, used for error breadcrumbs and coverage counters.
enum class Rule {
    Var,
    Num,
    Const,
    True,
    False,
    Abs,
    AbsPred,
    App,
    AppPred,
    If,
    AppPredTrue,
    AppPredFalse,
    IfTrue,
    IfFalse,
};

inline constexpr Rule kAllRules[] = {
    Rule::Var,     Rule::Num, Rule::Const,       Rule::True,         Rule::False,  Rule::Abs,     Rule::AbsPred,
    Rule::App,     Rule::AppPred, Rule::If,      Rule::AppPredTrue,  Rule::AppPredFalse, Rule::IfTrue, Rule::IfFalse,
};

std::string_view rule_name(Rule r);

// Per-rule usage counts plus counters for the occurrence-typing paths.
struct RuleCoverage {
    std::map<Rule, std::size_t> rules;
    std::size_t narrowing = 0;  // if-tests whose predicate changed Γ in a branch
    std::size_t combfilter_union = 0;  // combfilter's union clause

    void merge(const RuleCoverage& other);
};

class TypeError : public Error {
public:
    TypeError(std::string rule, std::string message, std::vector<std::string> trail);

    // Name of the failing rule, e.g. "T-App".
    const std::string& rule() const { return rule_; }
    // Rule names from the root of the derivation down to the failure.
    const std::vector<std::string>& trail() const { return trail_; }

private:
    std::string rule_;
    std::vector<std::string> trail_;
};

// Deliberate defects for mutation-testing the soundness harness.
enum class Fault {
    None,
    SkipEnvMinus,     // else branch checked under Γ instead of Γ − p
    ElseUsesEnvPlus,  // else branch checked under Γ + p
    LiteralsAtBoolean,  // #t and #f typed at Boolean instead of True and False
};

// How T-Const types the refining constants even? and odd?.
enum class ConstantTyping {
    Refined,    // latent (Refinement c)
    Erased,     // latent erased to Number
    Unrefined,  // no latent
};

struct CheckOptions {
    Mode mode = Mode::Primary;
    RuleCoverage* coverage = nullptr;
    Fault fault = Fault::None;
    ConstantTyping constants = ConstantTyping::Refined;
};

// Environment metafunctions.
Type restrict_type(const RefineEnv& delta, const Type& s, const Type& t);
Type remove_type(const RefineEnv& delta, const Type& s, const Type& t);
TypeEnv env_plus(const RefineEnv& delta, const TypeEnv& g, const VisiblePred& p);
TypeEnv env_minus(const RefineEnv& delta, const TypeEnv& g, const VisiblePred& p);

// Branch environments for (if e1 e2 e3) given e1's predicate, honouring the
// fault setting in options.
std::pair<TypeEnv, TypeEnv> branch_envs(const RefineEnv& delta, const TypeEnv& g, const VisiblePred& test,
                                        const CheckOptions& options = {});

// Predicate equality with embedded types compared by type_equal.
bool pred_equal(const VisiblePred& a, const VisiblePred& b);

VisiblePred combfilter(const VisiblePred& test, const VisiblePred& then_pred, const VisiblePred& else_pred);

// The sub-predicate relation p1 ≤ p2.
bool subpred(const VisiblePred& p1, const VisiblePred& p2);

// Γ ⊢ e : τ ; p. Throws TypeError on failure.
Judgment typecheck(const RefineEnv& delta, const TypeEnv& g, const Expr& e, const CheckOptions& options = {});

inline Judgment typecheck(const RefineEnv& delta, const TypeEnv& g, const Expr& e, Mode mode) {
    return typecheck(delta, g, e, CheckOptions{mode});
}

}  // namespace lts

#endif  // LTS_CHECKER_HPP
