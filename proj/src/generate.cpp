// Type-directed generation of closed, well-typed terms.
//
// A goal type is chosen first; terms are then built by inverting the typing
// rules against the goal. Conditionals test bound variables with predicate
// applications so the then/else environments actually narrow. Every emitted
// term is re-checked before it is returned.

#include "lts/harness.hpp"

#include <algorithm>
#include <array>

namespace lts {

Rng rng_for_term(std::uint64_t seed, std::size_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return Rng(z);
}

namespace {

Type ty(std::string_view text) { return normalize(parse_type(text)); }

struct Pools {
    std::vector<Type> goals;
    std::vector<Type> args;
    std::vector<Type> annotations;
};

Pools make_pools(bool with_refinements) {
    Pools p;
    // Base goals are listed twice so most top-level terms reduce.
    for (int i = 0; i < 2; ++i) {
        for (auto text : {"Number", "Boolean", "(U Number Boolean)", "Top"}) p.goals.push_back(ty(text));
    }
    for (auto text : {"(-> Number Number)", "(-> Top Boolean : Number)", "(-> Top Boolean : Boolean)",
                      "(-> Top Boolean)", "(-> (U Number Boolean) (U Number Boolean))",
                      "(-> Top Boolean : (U Number Boolean))", "(-> Top (U Number Boolean))",
                      "(-> (-> Number Number) Number)"}) {
        p.goals.push_back(ty(text));
    }
    for (auto text : {"Number", "Boolean", "(U Number Boolean)", "Top", "(-> Number Number)",
                      "(-> Top Boolean : Number)"}) {
        p.args.push_back(ty(text));
    }
    for (auto text : {"Top", "Number", "Boolean", "(U Number Boolean)", "(-> Number Number)"}) {
        p.annotations.push_back(ty(text));
    }
    if (with_refinements) {
        for (auto text : {"(-> Number Boolean : (Refinement even?))", "(-> (Refinement even?) Number)",
                          "(-> (-> (Refinement even?) Number) (-> Number Number))",
                          "(-> (Refinement odd?) (U Number Boolean))"}) {
            p.goals.push_back(ty(text));
        }
        p.args.push_back(ty("(-> (Refinement even?) Number)"));
        p.annotations.push_back(ty("(-> (Refinement odd?) Number)"));
    }
    return p;
}

class Generator {
public:
    Generator(Rng& rng, const GenOptions& options)
        : rng_(rng), options_(options), pools_(make_pools(options.with_refinements)) {
        check_options_.mode = Mode::Primary;
        check_options_.fault = options.fault;
    }

    const Pools& pools() const { return pools_; }

    template <typename T>
    const T& choose(const std::vector<T>& items) {
        std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
        return items[dist(rng_)];
    }

    bool coin(int percent) { return std::uniform_int_distribution<int>(0, 99)(rng_) < percent; }

    std::optional<Expr> gen(const Type& goal, int depth, const TypeEnv& env) {
        if (depth <= 1) return leaf(goal, env);
        // literals 30, conditionals 30, applications 25, lambdas 15
        int roll = std::uniform_int_distribution<int>(0, 99)(rng_);
        std::optional<Expr> out;
        if (roll < 30) {
            out = leaf(goal, env);
        } else if (roll < 60) {
            out = cond(goal, depth, env);
        } else if (roll < 85) {
            out = app(goal, depth, env);
        } else {
            out = lambda(goal, depth, env);
        }
        if (!out) out = leaf(goal, env);
        if (!out && roll >= 30) out = lambda(goal, depth, env);
        return out;
    }

    std::optional<Judgment> judge(const TypeEnv& env, const Expr& e) {
        try {
            return typecheck(options_.delta, env, e, check_options_);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

private:
    bool fits(const Type& actual, const Type& goal) {
        try {
            return subtype(options_.delta, actual, goal);
        } catch (const Error&) {
            return false;
        }
    }

    bool constant_allowed(Constant c) const {
        return options_.with_refinements || (c != Constant::IsEven && c != Constant::IsOdd);
    }

    std::string fresh() {
        int n = counter_++;
        return std::string(1, static_cast<char>('a' + n % 26)) + std::to_string(n / 26);
    }

    std::vector<std::string> usable_vars(const TypeEnv& env, const Type& goal) {
        std::vector<std::string> out;
        bool want_arrow = normalize(goal).is(Type::Kind::Arrow);
        for (const auto& [name, type] : env.bindings()) {
            Type t = normalize(type);
            if (want_arrow && !t.is(Type::Kind::Arrow)) continue;
            if (fits(t, goal)) out.push_back(name);
        }
        return out;
    }

    std::optional<Expr> leaf(const Type& goal, const TypeEnv& env) {
        std::vector<Expr> options;
        for (const auto& name : usable_vars(env, goal)) {
            // variables are weighted up: they feed T-Var and T-AppPred
            options.push_back(Expr::var(name));
            options.push_back(Expr::var(name));
        }
        for (Constant c : kAllConstants) {
            if (constant_allowed(c) && fits(delta_type(c), goal)) options.push_back(Expr::constant(c));
        }
        if (fits(Type::number(), goal)) {
            options.push_back(Expr::num(std::uniform_int_distribution<int>(-3, 12)(rng_)));
            options.push_back(Expr::num(std::uniform_int_distribution<int>(0, 9)(rng_)));
        }
        if (fits(Type::boolean(), goal)) {
            options.push_back(Expr::boolean(true));
            options.push_back(Expr::boolean(false));
        }
        if (options.empty()) return std::nullopt;
        return choose(options);
    }

    // Body whose visible predicate is latent@param, for predicate arrows.
    std::optional<Expr> predicate_body(const Type& latent, const Type& result, const std::string& param,
                                       const Type& param_type, int depth) {
        std::vector<Expr> options;
        Expr p = Expr::var(param);
        for (Constant c : kAllConstants) {
            if (!constant_allowed(c)) continue;
            Type ct = normalize(delta_type(c));
            if (!ct.latent() || !(*ct.latent() == latent)) continue;
            if (!fits(param_type, ct.arg()) || !fits(ct.result(), result)) continue;
            if (depth >= 2) options.push_back(Expr::app(Expr::constant(c), p));
            if (depth >= 3) {
                options.push_back(
                    Expr::if_(Expr::app(Expr::constant(c), p), Expr::boolean(true), Expr::boolean(false)));
            }
        }
        if (depth >= 3 && latent == ty("(U Number Boolean)") && fits(Type::boolean(), result)) {
            options.push_back(Expr::if_(Expr::app(Expr::constant(Constant::IsNumber), p), Expr::boolean(true),
                                        Expr::app(Expr::constant(Constant::IsBoolean), p)));
        }
        if (options.empty()) return std::nullopt;
        return choose(options);
    }

    std::optional<Expr> lambda(const Type& goal, int depth, const TypeEnv& env) {
        if (depth < 2) return std::nullopt;
        Type g = normalize(goal);
        std::string param = fresh();
        if (g.is(Type::Kind::Arrow)) {
            Type annot = g.arg();
            if (g.latent()) {
                auto body = predicate_body(*g.latent(), g.result(), param, annot, depth - 1);
                if (!body) return std::nullopt;
                return Expr::abs(param, annot, *body);
            }
            auto body = gen(g.result(), depth - 1, env.extend(param, annot));
            if (!body) return std::nullopt;
            return Expr::abs(param, annot, *body);
        }
        if (g.is(Type::Kind::Top)) {
            Type annot = choose(pools_.annotations);
            auto body = gen(choose(pools_.goals), depth - 1, env.extend(param, annot));
            if (!body) return std::nullopt;
            return Expr::abs(param, annot, *body);
        }
        return std::nullopt;
    }

    std::optional<Expr> app(const Type& goal, int depth, const TypeEnv& env) {
        if (depth < 2) return std::nullopt;
        std::optional<Expr> arg;
        Type arg_type = choose(pools_.args);
        if (!env.bindings().empty() && coin(50)) {
            std::vector<std::string> names;
            for (const auto& [name, type] : env.bindings()) {
                if (!normalize(type).is(Type::Kind::Union) || !normalize(type).members().empty()) names.push_back(name);
            }
            if (!names.empty()) {
                const std::string& name = choose(names);
                arg = Expr::var(name);
                arg_type = normalize(env.lookup(name));
            }
        }
        auto op = gen(Type::arrow(arg_type, goal), depth - 1, env);
        if (!op) return std::nullopt;
        auto op_judgment = judge(env, *op);
        if (!op_judgment) return std::nullopt;
        Type fn = normalize(op_judgment->type);
        if (!fn.is(Type::Kind::Arrow)) return std::nullopt;
        if (!arg) arg = gen(fn.arg(), depth - 1, env);
        if (!arg) return std::nullopt;
        return Expr::app(*op, *arg);
    }

    std::optional<Expr> test_expr(int depth, const TypeEnv& env) {
        std::vector<std::string> names;
        for (const auto& [name, type] : env.bindings()) names.push_back(name);
        if (!names.empty() && depth >= 2 && coin(90)) {
            const std::string& name = choose(names);
            Type t = normalize(env.lookup(name));
            Expr v = Expr::var(name);
            std::vector<Expr> options;
            for (Constant c : {Constant::IsNumber, Constant::IsBoolean, Constant::IsProcedure, Constant::IsEven,
                               Constant::IsOdd}) {
                if (constant_allowed(c) && fits(t, delta_type(c).arg())) {
                    options.push_back(Expr::app(Expr::constant(c), v));
                }
            }
            if (depth >= 3) {
                std::string z = fresh();
                options.push_back(
                    Expr::app(Expr::abs(z, Type::top(), Expr::app(Expr::constant(Constant::IsNumber), Expr::var(z))), v));
            }
            if (depth >= 4) {
                std::string z = fresh();
                Expr zv = Expr::var(z);
                Expr body = Expr::if_(Expr::app(Expr::constant(Constant::IsNumber), zv), Expr::boolean(true),
                                      Expr::app(Expr::constant(Constant::IsBoolean), zv));
                options.push_back(Expr::app(Expr::abs(z, Type::top(), body), v));
            }
            options.push_back(v);
            return choose(options);
        }
        return gen(coin(50) ? Type::boolean() : Type::top(), depth, env);
    }

    std::optional<Expr> cond(const Type& goal, int depth, const TypeEnv& env) {
        if (depth < 2) return std::nullopt;
        if (env.bindings().empty() && depth >= 4 && coin(50)) {
            // ((lambda (z : T) (if ... z ...)) arg): gives the test a variable
            Type annot = choose(pools_.annotations);
            std::string z = fresh();
            auto inner = cond(goal, depth - 2, env.extend(z, annot));
            auto arg = gen(annot, depth - 1, env);
            if (inner && arg) return Expr::app(Expr::abs(z, annot, *inner), *arg);
        }
        auto test = test_expr(depth - 1, env);
        if (!test) return std::nullopt;
        auto test_judgment = judge(env, *test);
        if (!test_judgment) return std::nullopt;
        TypeEnv then_env = env;
        TypeEnv else_env = env;
        try {
            std::tie(then_env, else_env) = branch_envs(options_.delta, env, test_judgment->pred, check_options_);
        } catch (const Error&) {
            return std::nullopt;
        }
        auto then_branch = gen(goal, depth - 1, then_env);
        if (!then_branch) return std::nullopt;
        auto else_branch = gen(goal, depth - 1, else_env);
        if (!else_branch) return std::nullopt;
        return Expr::if_(*test, *then_branch, *else_branch);
    }

    Rng& rng_;
    const GenOptions& options_;
    Pools pools_;
    CheckOptions check_options_;
    int counter_ = 0;
};

}  // namespace

Expr gen_typed_term(Rng& rng, int max_depth, const GenOptions& options) {
    if (max_depth < 1) throw std::invalid_argument("gen_typed_term: depth must be at least 1");
    Generator gen(rng, options);
    constexpr int kAttemptsPerDepth = 40;
    for (int depth = max_depth; depth >= 1; --depth) {
        for (int attempt = 0; attempt < kAttemptsPerDepth; ++attempt) {
            auto e = gen.gen(gen.choose(gen.pools().goals), depth, TypeEnv{});
            if (e && is_closed(*e) && lts::depth(*e) <= max_depth && gen.judge(TypeEnv{}, *e)) return *e;
        }
    }
    throw GenerationError("could not generate a well-typed term");
}

}  // namespace lts
