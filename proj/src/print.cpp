#include "lts/syntax.hpp"

#include <sstream>

namespace lts {

namespace {

bool is_boolean_pair(std::span<const Type> members, std::size_t i) {
    return i + 1 < members.size() && members[i].is(Type::Kind::True) && members[i + 1].is(Type::Kind::False);
}

void write_type(std::ostream& out, const Type& t) {
    switch (t.kind()) {
        case Type::Kind::Top: out << "Top"; return;
        case Type::Kind::Number: out << "Number"; return;
        case Type::Kind::True: out << "True"; return;
        case Type::Kind::False: out << "False"; return;
        case Type::Kind::Arrow:
            out << "(-> ";
            write_type(out, t.arg());
            out << ' ';
            write_type(out, t.result());
            if (t.latent()) {
                out << " : ";
                write_type(out, *t.latent());
            }
            out << ')';
            return;
        case Type::Kind::Union: {
            auto members = t.members();
            if (members.empty()) {
                out << "Bot";
                return;
            }
            if (members.size() == 2 && is_boolean_pair(members, 0)) {
                out << "Boolean";
                return;
            }
            // An adjacent True/False pair inside a wider union is shown as
            // Boolean; reparsing yields a nested union with the same
            // normal form.
            out << "(U";
            for (std::size_t i = 0; i < members.size(); ++i) {
                out << ' ';
                if (is_boolean_pair(members, i)) {
                    out << "Boolean";
                    ++i;
                } else {
                    write_type(out, members[i]);
                }
            }
            out << ')';
            return;
        }
        case Type::Kind::Refine: out << "(Refinement " << constant_name(t.refiner()) << ')'; return;
    }
}

void write_expr(std::ostream& out, const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Var: out << e.name(); return;
        case Expr::Kind::Num: out << e.number().str(); return;
        case Expr::Kind::Bool: out << (e.truth() ? "#t" : "#f"); return;
        case Expr::Kind::Const: out << constant_name(e.constant()); return;
        case Expr::Kind::Abs:
            out << "(lambda (" << e.name() << " : ";
            write_type(out, e.annot());
            out << ") ";
            write_expr(out, e.body());
            out << ')';
            return;
        case Expr::Kind::App:
            out << '(';
            write_expr(out, e.rator());
            out << ' ';
            write_expr(out, e.rand());
            out << ')';
            return;
        case Expr::Kind::If:
            out << "(if ";
            write_expr(out, e.test());
            out << ' ';
            write_expr(out, e.then_branch());
            out << ' ';
            write_expr(out, e.else_branch());
            out << ')';
            return;
    }
}

}  // namespace

std::string print_type(const Type& t) {
    std::ostringstream out;
    write_type(out, t);
    return out.str();
}

std::string print_expr(const Expr& e) {
    std::ostringstream out;
    write_expr(out, e);
    return out.str();
}

std::string print_pred(const VisiblePred& p) {
    switch (p.kind) {
        case VisiblePred::Kind::TypeOf: return print_type(*p.type) + " @ " + p.var;
        case VisiblePred::Kind::Var: return p.var;
        case VisiblePred::Kind::True: return "tt";
        case VisiblePred::Kind::False: return "ff";
        case VisiblePred::Kind::None: return "none";
    }
    return "none";
}

}  // namespace lts
