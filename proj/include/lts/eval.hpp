#ifndef LTS_EVAL_HPP
#define LTS_EVAL_HPP

#include "lts/syntax.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lts {

inline constexpr std::size_t kDefaultFuel = 10000;

struct StepResult {
    enum class Kind { Stepped, AlreadyValue, Stuck };

    Kind kind;
    std::optional<Expr> next;   // Stepped
    std::string reason;         // Stuck
    std::optional<Expr> redex;  // Stuck: the innermost redex, verbatim

    bool is(Kind k) const { return kind == k; }
};

struct EvalOutcome {
    enum class Kind { Value, FuelExhausted, Stuck };

    Kind kind;
    Expr term;  // the value, the last term reached, or the stuck term
    std::size_t steps = 0;
    std::string reason;  // Stuck only

    bool is(Kind k) const { return kind == k; }
};

// δ(c, v); nullopt where no row applies.
std::optional<Expr> delta_apply(Constant c, const Expr& v);

// One call-by-value step. Throws std::invalid_argument on open terms.
StepResult step(const Expr& e);

EvalOutcome evaluate(const Expr& e, std::size_t fuel = kDefaultFuel);

// Every term visited, from e itself to the last one reached within fuel.
std::vector<Expr> trace(const Expr& e, std::size_t fuel = kDefaultFuel);

}  // namespace lts

#endif  // LTS_EVAL_HPP
