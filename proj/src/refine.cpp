#include "lts/refine.hpp"

namespace lts {

RefineEnv declare_refinement(RefineEnv delta, Constant c) {
    delta.insert(c);
    return delta;
}

Type erase_type(const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Refine: return erase_type(t.base());
        case Type::Kind::Arrow: {
            Latent latent;
            if (t.latent()) latent = erase_type(*t.latent());
            return Type::arrow(erase_type(t.arg()), erase_type(t.result()), std::move(latent));
        }
        case Type::Kind::Union: {
            std::vector<Type> members;
            members.reserve(t.members().size());
            for (const auto& m : t.members()) members.push_back(erase_type(m));
            return Type::union_of(std::move(members));
        }
        default: return t;
    }
}

Expr erase_expr(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Abs: return Expr::abs(e.name(), erase_type(e.annot()), erase_expr(e.body()));
        case Expr::Kind::App: return Expr::app(erase_expr(e.rator()), erase_expr(e.rand()));
        case Expr::Kind::If:
            return Expr::if_(erase_expr(e.test()), erase_expr(e.then_branch()), erase_expr(e.else_branch()));
        default: return e;
    }
}

VisiblePred erase_pred(const VisiblePred& p) {
    if (p.is(VisiblePred::Kind::TypeOf)) return VisiblePred::type_of(erase_type(*p.type), p.var);
    return p;
}

TypeEnv erase_env(const TypeEnv& g) {
    TypeEnv out;
    for (const auto& [name, type] : g.bindings()) out = out.extend(name, erase_type(type));
    return out;
}

bool erased_judgment_holds(const RefineEnv& delta, const TypeEnv& g, const Expr& e) {
    Judgment original = typecheck(delta, g, e, Mode::Primary);
    CheckOptions erased_options;
    erased_options.constants = ConstantTyping::Erased;
    try {
        Judgment erased = typecheck(RefineEnv{}, erase_env(g), erase_expr(e), erased_options);
        Type expected = erase_type(original.type);
        VisiblePred expected_pred = erase_pred(original.pred);
        if (type_equal(erased.type, expected) && pred_equal(erased.pred, expected_pred)) return true;
        // The erased derivation may narrow a branch variable to Bot where the
        // refined one kept a refinement, giving a smaller least type.
        return subtype(RefineEnv{}, erased.type, expected) && subpred(erased.pred, expected_pred);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace lts
