#include "lts/checker.hpp"
#include "lts/refine.hpp"

#include <sstream>
#include <utility>

namespace lts {

// ---------------------------------------------------------------------------
// TypeEnv

const Type& TypeEnv::lookup(const std::string& x) const {
    auto it = bindings_.find(x);
    if (it == bindings_.end()) throw TypeError("T-Var", "unbound variable " + x, {"T-Var"});
    return it->second;
}

TypeEnv TypeEnv::extend(const std::string& x, Type t) const {
    TypeEnv out = *this;
    out.bindings_.insert_or_assign(x, std::move(t));
    return out;
}

bool env_equal(const TypeEnv& a, const TypeEnv& b) {
    if (a.bindings().size() != b.bindings().size()) return false;
    auto it = b.bindings().begin();
    for (const auto& [name, type] : a.bindings()) {
        if (name != it->first || !type_equal(type, it->second)) return false;
        ++it;
    }
    return true;
}

std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::Var: return "T-Var";
        case Rule::Num: return "T-Num";
        case Rule::Const: return "T-Const";
        case Rule::True: return "T-True";
        case Rule::False: return "T-False";
        case Rule::Abs: return "T-Abs";
        case Rule::AbsPred: return "T-AbsPred";
        case Rule::App: return "T-App";
        case Rule::AppPred: return "T-AppPred";
        case Rule::If: return "T-If";
        case Rule::AppPredTrue: return "T-AppPredTrue";
        case Rule::AppPredFalse: return "T-AppPredFalse";
        case Rule::IfTrue: return "T-IfTrue";
        case Rule::IfFalse: return "T-IfFalse";
    }
    return "?";
}

void RuleCoverage::merge(const RuleCoverage& other) {
    for (const auto& [rule, count] : other.rules) rules[rule] += count;
    narrowing += other.narrowing;
    combfilter_union += other.combfilter_union;
}

namespace {

std::string join_trail(const std::vector<std::string>& trail) {
    std::string out;
    for (const auto& step : trail) {
        if (!out.empty()) out += " > ";
        out += step;
    }
    return out;
}

}  // namespace

TypeError::TypeError(std::string rule, std::string message, std::vector<std::string> trail)
    : Error(rule + ": " + message + (trail.empty() ? std::string() : " [" + join_trail(trail) + "]")),
      rule_(std::move(rule)),
      trail_(std::move(trail)) {}

// ---------------------------------------------------------------------------
// Environment operations

Type restrict_type(const RefineEnv& delta, const Type& s, const Type& t) {
    Type ns = normalize(s);
    if (subtype(delta, ns, t)) return ns;
    if (ns.is(Type::Kind::Union)) {
        std::vector<Type> parts;
        for (const auto& m : ns.members()) parts.push_back(restrict_type(delta, m, t));
        return normalize(Type::union_of(std::move(parts)));
    }
    return normalize(t);
}

Type remove_type(const RefineEnv& delta, const Type& s, const Type& t) {
    Type ns = normalize(s);
    if (subtype(delta, ns, t)) return Type::bot();
    if (ns.is(Type::Kind::Union)) {
        std::vector<Type> parts;
        for (const auto& m : ns.members()) parts.push_back(remove_type(delta, m, t));
        return normalize(Type::union_of(std::move(parts)));
    }
    return ns;
}

TypeEnv env_plus(const RefineEnv& delta, const TypeEnv& g, const VisiblePred& p) {
    switch (p.kind) {
        case VisiblePred::Kind::TypeOf: return g.extend(p.var, restrict_type(delta, g.lookup(p.var), *p.type));
        case VisiblePred::Kind::Var:
            return g.extend(p.var, remove_type(delta, g.lookup(p.var), Type::false_type()));
        default: return g;
    }
}

TypeEnv env_minus(const RefineEnv& delta, const TypeEnv& g, const VisiblePred& p) {
    switch (p.kind) {
        case VisiblePred::Kind::TypeOf: return g.extend(p.var, remove_type(delta, g.lookup(p.var), *p.type));
        case VisiblePred::Kind::Var:
            g.lookup(p.var);
            return g.extend(p.var, Type::false_type());
        default: return g;
    }
}

std::pair<TypeEnv, TypeEnv> branch_envs(const RefineEnv& delta, const TypeEnv& g, const VisiblePred& test,
                                        const CheckOptions& options) {
    TypeEnv then_env = env_plus(delta, g, test);
    switch (options.fault) {
        case Fault::SkipEnvMinus: return {then_env, g};
        case Fault::ElseUsesEnvPlus: return {then_env, then_env};
        case Fault::None:
        case Fault::LiteralsAtBoolean: break;
    }
    return {then_env, env_minus(delta, g, test)};
}

// ---------------------------------------------------------------------------
// Predicates

bool pred_equal(const VisiblePred& a, const VisiblePred& b) {
    if (a.kind != b.kind || a.var != b.var) return false;
    if (a.kind == VisiblePred::Kind::TypeOf) return type_equal(*a.type, *b.type);
    return true;
}

namespace {

// Index (1-6) of the first combfilter clause that applies.
int combfilter_clause(const VisiblePred& p1, const VisiblePred& p2, const VisiblePred& p3) {
    using K = VisiblePred::Kind;
    if (pred_equal(p2, p3)) return 1;
    if (p1.is(K::TypeOf) && p2.is(K::True) && p3.is(K::TypeOf) && p1.var == p3.var) return 2;
    if (p1.is(K::True)) return 3;
    if (p1.is(K::False)) return 4;
    if (p2.is(K::True) && p3.is(K::False)) return 5;
    return 6;
}

}  // namespace

VisiblePred combfilter(const VisiblePred& p1, const VisiblePred& p2, const VisiblePred& p3) {
    switch (combfilter_clause(p1, p2, p3)) {
        case 1: return p2;
        case 2: return VisiblePred::type_of(normalize(Type::union_of({*p1.type, *p3.type})), p1.var);
        case 3: return p2;
        case 4: return p3;
        case 5: return p1;
        default: return VisiblePred::none();
    }
}

bool subpred(const VisiblePred& p1, const VisiblePred& p2) {
    using K = VisiblePred::Kind;
    if (pred_equal(p1, p2)) return true;                      // SE-Refl
    if (p2.is(K::None)) return true;                          // SE-None
    if (p1.is(K::True) && !p2.is(K::False)) return true;      // SE-True
    if (p1.is(K::False) && !p2.is(K::True)) return true;      // SE-False
    return false;
}

// ---------------------------------------------------------------------------
// The typing judgment

namespace {

class Checker {
public:
    Checker(const RefineEnv& delta, const CheckOptions& options)
        : delta_(delta), options_(options), coverage_(options.coverage) {}

    Judgment check(const TypeEnv& g, const Expr& e) { return derive(g, e).judgment; }

private:
    // A judgment plus the predicate of the derivation that prefers T-AppPred
    // over the extended application rules along the result spine (through
    // branches, not tests). Both derivations give the same type.
    struct Derived {
        Judgment judgment;
        VisiblePred alt;
    };

    Derived derive(const TypeEnv& g, const Expr& e) {
        switch (e.kind()) {
            case Expr::Kind::Var: {
                Frame f(*this, "T-Var");
                if (!g.contains(e.name())) fail("T-Var", "unbound variable " + e.name());
                return conclude(Rule::Var, normalize(g.lookup(e.name())), VisiblePred::of_var(e.name()));
            }
            case Expr::Kind::Num: return conclude(Rule::Num, Type::number(), VisiblePred::tt());
            case Expr::Kind::Const: {
                Type t = delta_type(e.constant());
                if (options_.constants == ConstantTyping::Erased) {
                    t = erase_type(t);
                } else if (options_.constants == ConstantTyping::Unrefined && t.latent() &&
                           mentions_refinement(*t.latent())) {
                    t = Type::arrow(t.arg(), t.result());
                }
                return conclude(Rule::Const, std::move(t), VisiblePred::tt());
            }
            case Expr::Kind::Bool: {
                bool wide = options_.fault == Fault::LiteralsAtBoolean;
                if (e.truth()) return conclude(Rule::True, wide ? Type::boolean() : Type::true_type(), VisiblePred::tt());
                return conclude(Rule::False, wide ? Type::boolean() : Type::false_type(), VisiblePred::ff());
            }
            case Expr::Kind::Abs: return check_abs(g, e);
            case Expr::Kind::App: return check_app(g, e);
            case Expr::Kind::If: return check_if(g, e);
        }
        fail("T-?", "unknown expression");
    }

    // Pushes a rule name onto the breadcrumb trail for the current scope.
    struct Frame {
        Frame(Checker& c, std::string rule) : checker(c) { checker.trail_.push_back(std::move(rule)); }
        ~Frame() { checker.trail_.pop_back(); }
        Checker& checker;
    };

    [[noreturn]] void fail(const std::string& rule, const std::string& message) const {
        throw TypeError(rule, message, trail_);
    }

    Derived conclude(Rule r, Type t, VisiblePred p, std::optional<VisiblePred> alt = std::nullopt) {
        if (coverage_) ++coverage_->rules[r];
        VisiblePred second = alt ? std::move(*alt) : p;
        return Derived{Judgment{std::move(t), std::move(p)}, std::move(second)};
    }

    bool sub(const Type& s, const Type& t, const char* rule) {
        try {
            return subtype(delta_, s, t);
        } catch (const UndeclaredRefinement& err) {
            fail(rule, err.what());
        }
    }

    Derived check_abs(const TypeEnv& g, const Expr& e) {
        Frame f(*this, "T-Abs");
        try {
            require_declared(delta_, e.annot());
        } catch (const UndeclaredRefinement& err) {
            fail("T-Abs", err.what());
        }
        Type param = normalize(e.annot());
        Derived derived = derive(g.extend(e.name(), param), e.body());
        const Judgment& body = derived.judgment;
        auto tests_param = [&](const VisiblePred& p) { return p.is(VisiblePred::Kind::TypeOf) && p.var == e.name(); };
        if (tests_param(body.pred)) {
            return conclude(Rule::AbsPred, Type::arrow(param, body.type, *body.pred.type), VisiblePred::tt());
        }
        // A latent makes the arrow smaller, so take it from the alternative
        // derivation when only that one tests the parameter.
        if (tests_param(derived.alt)) {
            return conclude(Rule::AbsPred, Type::arrow(param, body.type, *derived.alt.type), VisiblePred::tt());
        }
        return conclude(Rule::Abs, Type::arrow(param, body.type), VisiblePred::tt());
    }

    // A union of arrows is applied at its least arrow supertype for the
    // argument: the shared domain (or the argument type when every domain
    // admits it), the union of the results and the latent shared by all.
    Type operator_arrow(const Type& t, const Type& arg) {
        if (!t.is(Type::Kind::Union) || t.members().empty()) return t;
        const Type& first = t.members().front();
        std::vector<Type> results;
        Latent latent = first.is(Type::Kind::Arrow) ? first.latent() : Latent{};
        bool same_domain = true;
        bool admits = true;
        for (const Type& m : t.members()) {
            if (!m.is(Type::Kind::Arrow)) return t;
            results.push_back(m.result());
            if (!m.latent() || !latent || !type_equal(*m.latent(), *latent)) latent.reset();
            same_domain = same_domain && type_equal(m.arg(), first.arg());
            admits = admits && sub(arg, m.arg(), "T-App");
        }
        if (!same_domain && !admits) {
            fail("T-App", "argument of type " + print_type(arg) + " is not in every domain of " + print_type(t));
        }
        return Type::arrow(same_domain ? first.arg() : arg, normalize(Type::union_of(std::move(results))), latent);
    }

    Derived check_app(const TypeEnv& g, const Expr& e) {
        Frame f(*this, "T-App");
        Judgment op = check(g, e.rator());
        Judgment arg = check(g, e.rand());
        Type fn = operator_arrow(normalize(op.type), arg.type);
        if (!fn.is(Type::Kind::Arrow)) {
            fail("T-App", "operator " + print_expr(e.rator()) + " has non-arrow type " + print_type(fn) + " in " +
                              print_expr(e));
        }
        if (!sub(arg.type, fn.arg(), "T-App")) {
            fail("T-App", "argument " + print_expr(e.rand()) + " of type " + print_type(arg.type) +
                              " is not a subtype of " + print_type(fn.arg()) + " in " + print_expr(e));
        }
        const Latent& latent = fn.latent();
        // The T-AppPred conclusion, kept as the alternative when an extended
        // rule fires so an enclosing abstraction can still take a latent.
        std::optional<VisiblePred> var_test;
        if (latent && arg.pred.is(VisiblePred::Kind::Var)) var_test = VisiblePred::type_of(*latent, arg.pred.var);
        if (latent && options_.mode == Mode::Extended) {
            if (sub(arg.type, *latent, "T-AppPredTrue")) {
                return conclude(Rule::AppPredTrue, fn.result(), VisiblePred::tt(), var_test);
            }
            if (is_value(e.rand()) && is_closed(e.rand())) {
                return conclude(Rule::AppPredFalse, fn.result(), VisiblePred::ff(), var_test);
            }
        }
        if (var_test) return conclude(Rule::AppPred, fn.result(), *var_test);
        return conclude(Rule::App, fn.result(), VisiblePred::none());
    }

    Derived check_if(const TypeEnv& g, const Expr& e) {
        Frame f(*this, "T-If");
        Derived test_d = derive(g, e.test());
        const Judgment& test = test_d.judgment;
        if (options_.mode == Mode::Extended) {
            if (test.pred.is(VisiblePred::Kind::True)) {
                Frame taken(*this, "T-IfTrue");
                Derived branch = derive(g, e.then_branch());
                return conclude(Rule::IfTrue, branch.judgment.type, branch.judgment.pred, branch.alt);
            }
            if (test.pred.is(VisiblePred::Kind::False)) {
                Frame taken(*this, "T-IfFalse");
                Derived branch = derive(g, e.else_branch());
                return conclude(Rule::IfFalse, branch.judgment.type, branch.judgment.pred, branch.alt);
            }
        }
        if (test.pred.is(VisiblePred::Kind::TypeOf) && !narrows(g, test.pred)) return unreachable_test(g, e, test.pred);
        return branches(g, e, test.pred);
    }

    // T-If with the branches checked under Γ + p and Γ − p.
    Derived branches(const TypeEnv& g, const Expr& e, const VisiblePred& test) {
        TypeEnv then_env = g;
        TypeEnv else_env = g;
        try {
            std::tie(then_env, else_env) = branch_envs(delta_, g, test, options_);
        } catch (const UndeclaredRefinement& err) {
            fail("T-If", err.what());
        }
        if (coverage_ && (!env_equal(then_env, g) || !env_equal(else_env, g))) ++coverage_->narrowing;
        Derived then_d = derive(then_env, e.then_branch());
        Derived else_d = derive(else_env, e.else_branch());
        const Judgment& then_j = then_d.judgment;
        const Judgment& else_j = else_d.judgment;
        if (coverage_ && combfilter_clause(test, then_j.pred, else_j.pred) == 2) ++coverage_->combfilter_union;
        return conclude(Rule::If, normalize(Type::union_of({then_j.type, else_j.type})),
                        combfilter(test, then_j.pred, else_j.pred), combfilter(test, then_d.alt, else_d.alt));
    }

    // Whether Γ + p keeps the tested variable at or below its current type.
    // restrict falls back to the tested type when the two are unrelated,
    // which widens the variable in a branch that cannot run.
    bool narrows(const TypeEnv& g, const VisiblePred& test) {
        TypeEnv then_env = env_plus(delta_, g, test);
        return sub(then_env.lookup(test.var), g.lookup(test.var), "T-If");
    }

    // The test's predicate widens a variable. Using T-App for the T-AppPred
    // steps that produced it types the test at the same type with predicate
    // none, so both derivations are tried and the least judgment kept; when
    // they are incomparable the narrowing one wins.
    Derived unreachable_test(const TypeEnv& g, const Expr& e, const VisiblePred& test) {
        auto attempt = [&](const VisiblePred& p, RuleCoverage& local) -> std::optional<Derived> {
            RuleCoverage* saved = std::exchange(coverage_, &local);
            std::optional<Derived> out;
            try {
                out = branches(g, e, p);
            } catch (const TypeError&) {
            }
            coverage_ = saved;
            return out;
        };
        RuleCoverage narrow_cov;
        RuleCoverage plain_cov;
        std::optional<Derived> narrow = attempt(test, narrow_cov);
        std::optional<Derived> plain = attempt(VisiblePred::none(), plain_cov);
        if (!narrow && !plain) return branches(g, e, test);  // rethrow the narrowing error
        bool take_plain = !narrow || (plain && sub(plain->judgment.type, narrow->judgment.type, "T-If") &&
                                      subpred(plain->judgment.pred, narrow->judgment.pred) &&
                                      !(sub(narrow->judgment.type, plain->judgment.type, "T-If") &&
                                        subpred(narrow->judgment.pred, plain->judgment.pred)));
        if (coverage_) coverage_->merge(take_plain ? plain_cov : narrow_cov);
        return take_plain ? *plain : *narrow;
    }

    const RefineEnv& delta_;
    const CheckOptions& options_;
    RuleCoverage* coverage_;
    std::vector<std::string> trail_;
};

}  // namespace

Judgment typecheck(const RefineEnv& delta, const TypeEnv& g, const Expr& e, const CheckOptions& options) {
    Checker checker(delta, options);
    return checker.check(g, e);
}

}  // namespace lts
