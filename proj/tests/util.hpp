#ifndef LTS_TESTS_UTIL_HPP
#define LTS_TESTS_UTIL_HPP

#include "lts/checker.hpp"
#include "lts/syntax.hpp"
#include "lts/types.hpp"

#include <random>
#include <string>
#include <vector>

namespace testutil {

inline lts::Type T(std::string_view text) { return lts::parse_type(text); }
inline lts::Expr E(std::string_view text) { return lts::parse_expr(text); }
inline lts::VisiblePred P(std::string_view text) { return lts::parse_pred(text); }

inline std::string show(const lts::Judgment& j) {
    return lts::print_type(lts::normalize(j.type)) + " ; " + lts::print_pred(j.pred);
}

// Structural equality with annotations compared up to normalization.
inline bool same_term(const lts::Expr& a, const lts::Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case lts::Expr::Kind::Abs:
            return a.name() == b.name() && lts::type_equal(a.annot(), b.annot()) && same_term(a.body(), b.body());
        case lts::Expr::Kind::App:
        case lts::Expr::Kind::If: {
            auto xs = a.children();
            auto ys = b.children();
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (!same_term(xs[i], ys[i])) return false;
            }
            return true;
        }
        default: return a == b;
    }
}

// Random type over the full grammar, including nested and empty unions,
// latents and refinements of even? and odd?.
template <typename Rng>
lts::Type random_type(Rng& rng, int depth, bool refinements = true) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    int leaves = refinements ? 6 : 4;
    int choice = depth <= 1 ? pick(leaves) : pick(leaves + 3);
    if (choice >= leaves) choice = 6 + (choice - leaves);
    switch (choice) {
        case 0: return lts::Type::top();
        case 1: return lts::Type::number();
        case 2: return lts::Type::true_type();
        case 3: return lts::Type::false_type();
        case 4:
        case 5: return lts::refinement(pick(2) ? lts::Constant::IsEven : lts::Constant::IsOdd);
        case 6: {
            std::vector<lts::Type> members;
            int n = pick(4);
            for (int i = 0; i < n; ++i) members.push_back(random_type(rng, depth - 1, refinements));
            return lts::Type::union_of(members);
        }
        default: {
            lts::Type arg = random_type(rng, depth - 1, refinements);
            lts::Type res = random_type(rng, depth - 1, refinements);
            if (pick(2)) return lts::Type::arrow(arg, res, random_type(rng, depth - 1, refinements));
            return lts::Type::arrow(arg, res);
        }
    }
}

}  // namespace testutil

#endif  // LTS_TESTS_UTIL_HPP
