#include "lts/eval.hpp"

#include <stdexcept>

namespace lts {

std::optional<Expr> delta_apply(Constant c, const Expr& v) {
    switch (c) {
        case Constant::Add1:
            if (v.is(Expr::Kind::Num)) return Expr::num(v.number() + 1);
            return std::nullopt;
        case Constant::Not: return Expr::boolean(v.is(Expr::Kind::Bool) && !v.truth());
        case Constant::IsNumber: return Expr::boolean(v.is(Expr::Kind::Num));
        case Constant::IsBoolean: return Expr::boolean(v.is(Expr::Kind::Bool));
        case Constant::IsProcedure: return Expr::boolean(v.is(Expr::Kind::Abs) || v.is(Expr::Kind::Const));
        case Constant::IsEven:
            if (v.is(Expr::Kind::Num)) return Expr::boolean(v.number() % 2 == 0);
            return std::nullopt;
        case Constant::IsOdd:
            if (v.is(Expr::Kind::Num)) return Expr::boolean(v.number() % 2 != 0);
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

StepResult stepped(Expr next) { return StepResult{StepResult::Kind::Stepped, std::move(next), {}, std::nullopt}; }

StepResult stuck(std::string reason, const Expr& redex) {
    return StepResult{StepResult::Kind::Stuck, std::nullopt, std::move(reason), redex};
}

// Contracts a redex whose immediate subterms in evaluation position are values.
StepResult contract(const Expr& e) {
    if (e.is(Expr::Kind::If)) {
        bool is_false = e.test().is(Expr::Kind::Bool) && !e.test().truth();
        return stepped(is_false ? e.else_branch() : e.then_branch());
    }
    const Expr& fn = e.rator();
    const Expr& arg = e.rand();
    if (fn.is(Expr::Kind::Const)) {
        if (auto result = delta_apply(fn.constant(), arg)) return stepped(*result);
        return stuck("no delta rule for " + std::string(constant_name(fn.constant())) + " on " + print_expr(arg), e);
    }
    if (fn.is(Expr::Kind::Abs)) return stepped(substitute(fn.body(), fn.name(), arg));
    return stuck("operator not applicable", e);
}

StepResult step_closed(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Num:
        case Expr::Kind::Bool:
        case Expr::Kind::Const:
        case Expr::Kind::Abs: return StepResult{StepResult::Kind::AlreadyValue, std::nullopt, {}, std::nullopt};
        case Expr::Kind::Var: return stuck("free variable " + e.name(), e);
        case Expr::Kind::App: {
            // E ::= (E e) | (v E)
            if (!is_value(e.rator())) {
                StepResult inner = step_closed(e.rator());
                if (inner.is(StepResult::Kind::Stepped)) return stepped(Expr::app(*inner.next, e.rand()));
                return inner;
            }
            if (!is_value(e.rand())) {
                StepResult inner = step_closed(e.rand());
                if (inner.is(StepResult::Kind::Stepped)) return stepped(Expr::app(e.rator(), *inner.next));
                return inner;
            }
            return contract(e);
        }
        case Expr::Kind::If: {
            // E ::= (if E e e)
            if (!is_value(e.test())) {
                StepResult inner = step_closed(e.test());
                if (inner.is(StepResult::Kind::Stepped)) {
                    return stepped(Expr::if_(*inner.next, e.then_branch(), e.else_branch()));
                }
                return inner;
            }
            return contract(e);
        }
    }
    return stuck("unknown expression", e);
}

}  // namespace

StepResult step(const Expr& e) {
    if (!is_closed(e)) throw std::invalid_argument("step: term is not closed: " + print_expr(e));
    return step_closed(e);
}

EvalOutcome evaluate(const Expr& e, std::size_t fuel) {
    if (!is_closed(e)) throw std::invalid_argument("evaluate: term is not closed: " + print_expr(e));
    Expr current = e;
    for (std::size_t steps = 0;; ++steps) {
        if (is_value(current)) return EvalOutcome{EvalOutcome::Kind::Value, current, steps, {}};
        if (steps == fuel) return EvalOutcome{EvalOutcome::Kind::FuelExhausted, current, steps, {}};
        StepResult r = step_closed(current);
        if (r.is(StepResult::Kind::Stuck)) return EvalOutcome{EvalOutcome::Kind::Stuck, current, steps, r.reason};
        current = *r.next;
    }
}

std::vector<Expr> trace(const Expr& e, std::size_t fuel) {
    if (!is_closed(e)) throw std::invalid_argument("trace: term is not closed: " + print_expr(e));
    std::vector<Expr> out{e};
    for (std::size_t steps = 0; steps < fuel; ++steps) {
        StepResult r = step_closed(out.back());
        if (!r.is(StepResult::Kind::Stepped)) break;
        out.push_back(*r.next);
    }
    return out;
}

}  // namespace lts
