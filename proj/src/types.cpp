#include "lts/types.hpp"

#include <algorithm>

namespace lts {

UndeclaredRefinement::UndeclaredRefinement(Constant c)
    : Error("refinement (Refinement " + std::string(constant_name(c)) +
            ") used without (declare-refinement " + std::string(constant_name(c)) + ")"),
      constant_(c) {}

Type delta_type(Constant c) {
    switch (c) {
        case Constant::Add1: return Type::arrow(Type::number(), Type::number());
        case Constant::Not: return Type::arrow(Type::top(), Type::boolean());
        case Constant::IsNumber: return Type::arrow(Type::top(), Type::boolean(), Type::number());
        case Constant::IsBoolean: return Type::arrow(Type::top(), Type::boolean(), Type::boolean());
        case Constant::IsProcedure:
            return Type::arrow(Type::top(), Type::boolean(), Type::arrow(Type::bot(), Type::top()));
        case Constant::IsEven:
            return Type::arrow(Type::number(), Type::boolean(), Type::refine(Constant::IsEven, Type::number()));
        case Constant::IsOdd:
            return Type::arrow(Type::number(), Type::boolean(), Type::refine(Constant::IsOdd, Type::number()));
    }
    return Type::top();
}

Type refinement(Constant c) { return Type::refine(c, delta_type(c).arg()); }

namespace {

void flatten_into(const Type& t, std::vector<Type>& out) {
    if (t.is(Type::Kind::Union)) {
        for (const auto& m : t.members()) flatten_into(m, out);
        return;
    }
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

}  // namespace

Type normalize(const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Top:
        case Type::Kind::Number:
        case Type::Kind::True:
        case Type::Kind::False: return t;
        case Type::Kind::Arrow: {
            Latent latent;
            if (t.latent()) latent = normalize(*t.latent());
            return Type::arrow(normalize(t.arg()), normalize(t.result()), std::move(latent));
        }
        case Type::Kind::Refine: return Type::refine(t.refiner(), normalize(t.base()));
        case Type::Kind::Union: {
            std::vector<Type> flat;
            for (const auto& m : t.members()) flatten_into(normalize(m), flat);
            if (flat.size() == 1) return flat.front();
            return Type::union_of(std::move(flat));
        }
    }
    return t;
}

bool type_equal(const Type& s, const Type& t) { return normalize(s) == normalize(t); }

bool mentions_refinement(const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Refine: return true;
        case Type::Kind::Arrow:
            return mentions_refinement(t.arg()) || mentions_refinement(t.result()) ||
                   (t.latent() && mentions_refinement(*t.latent()));
        case Type::Kind::Union:
            return std::any_of(t.members().begin(), t.members().end(), mentions_refinement);
        default: return false;
    }
}

void require_declared(const RefineEnv& delta, const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Refine:
            if (!delta.contains(t.refiner())) throw UndeclaredRefinement(t.refiner());
            require_declared(delta, t.base());
            return;
        case Type::Kind::Arrow:
            require_declared(delta, t.arg());
            require_declared(delta, t.result());
            if (t.latent()) require_declared(delta, *t.latent());
            return;
        case Type::Kind::Union:
            for (const auto& m : t.members()) require_declared(delta, m);
            return;
        default: return;
    }
}

namespace {

// Both arguments are normalized and every refinement in them is declared.
bool is_subtype(const Type& s, const Type& t) {
    if (s == t) return true;                     // S-Refl
    if (t.is(Type::Kind::Top)) return true;      // τ ≤ Top
    if (s.is(Type::Kind::Union)) {               // S-UnionSub
        return std::all_of(s.members().begin(), s.members().end(),
                           [&](const Type& m) { return is_subtype(m, t); });
    }
    if (t.is(Type::Kind::Union)) {               // S-UnionSuper
        bool found = std::any_of(t.members().begin(), t.members().end(),
                                 [&](const Type& m) { return is_subtype(s, m); });
        if (found) return true;
    }
    if (s.is(Type::Kind::Refine)) {
        // Refine(c, τ1) ≤ τ when τ1 ≤ τ, τ1 the argument type of c.
        return is_subtype(normalize(delta_type(s.refiner()).arg()), t);
    }
    if (s.is(Type::Kind::Arrow) && t.is(Type::Kind::Arrow)) {  // S-Fun
        if (t.latent() && s.latent() != t.latent()) return false;
        return is_subtype(t.arg(), s.arg()) && is_subtype(s.result(), t.result());
    }
    return false;
}

}  // namespace

bool subtype(const RefineEnv& delta, const Type& s, const Type& t) {
    require_declared(delta, s);
    require_declared(delta, t);
    return is_subtype(normalize(s), normalize(t));
}

}  // namespace lts
