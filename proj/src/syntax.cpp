#include "lts/syntax.hpp"

#include <algorithm>
#include <cassert>

namespace lts {

namespace {

struct ConstantEntry {
    Constant c;
    std::string_view name;
};

constexpr ConstantEntry kConstantNames[] = {
    {Constant::Add1, "add1"},
    {Constant::Not, "not"},
    {Constant::IsNumber, "number?"},
    {Constant::IsBoolean, "boolean?"},
    {Constant::IsProcedure, "procedure?"},
    {Constant::IsEven, "even?"},
    {Constant::IsOdd, "odd?"},
};

}  // namespace

std::string_view constant_name(Constant c) {
    for (const auto& entry : kConstantNames) {
        if (entry.c == c) return entry.name;
    }
    return "?";
}

std::optional<Constant> constant_from_name(std::string_view name) {
    for (const auto& entry : kConstantNames) {
        if (entry.name == name) return entry.c;
    }
    return std::nullopt;
}

SyntaxError::SyntaxError(std::string message, int line, int column, std::string token)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
            (token.empty() ? std::string() : " near '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

// ---------------------------------------------------------------------------
// Type

namespace {

Type::Node leaf(Type::Kind k) { return Type::Node{k, {}, std::nullopt, Constant::Add1}; }

}  // namespace

Type Type::top() {
    static const Type t(std::make_shared<const Node>(leaf(Kind::Top)));
    return t;
}

Type Type::number() {
    static const Type t(std::make_shared<const Node>(leaf(Kind::Number)));
    return t;
}

Type Type::true_type() {
    static const Type t(std::make_shared<const Node>(leaf(Kind::True)));
    return t;
}

Type Type::false_type() {
    static const Type t(std::make_shared<const Node>(leaf(Kind::False)));
    return t;
}

Type Type::boolean() { return union_of({true_type(), false_type()}); }

Type Type::bot() { return union_of({}); }

Type Type::arrow(Type arg, Type result, std::optional<Type> latent) {
    return Type(std::make_shared<const Node>(
        Node{Kind::Arrow, {std::move(arg), std::move(result)}, std::move(latent), Constant::Add1}));
}

Type Type::union_of(std::vector<Type> members) {
    return Type(std::make_shared<const Node>(Node{Kind::Union, std::move(members), std::nullopt, Constant::Add1}));
}

Type Type::refine(Constant c, Type base) {
    return Type(std::make_shared<const Node>(Node{Kind::Refine, {std::move(base)}, std::nullopt, c}));
}

Type::Kind Type::kind() const { return node_->kind; }

const Type& Type::arg() const {
    assert(is(Kind::Arrow));
    return node_->children[0];
}

const Type& Type::result() const {
    assert(is(Kind::Arrow));
    return node_->children[1];
}

const std::optional<Type>& Type::latent() const { return node_->latent; }

std::span<const Type> Type::members() const {
    assert(is(Kind::Union));
    return node_->children;
}

Constant Type::refiner() const {
    assert(is(Kind::Refine));
    return node_->refiner;
}

const Type& Type::base() const {
    assert(is(Kind::Refine));
    return node_->children[0];
}

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    if (x.kind == Type::Kind::Refine && x.refiner != y.refiner) return false;
    return x.latent == y.latent && x.children == y.children;
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::var(std::string name) {
    Node n;
    n.kind = Kind::Var;
    n.name = std::move(name);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::num(Integer value) {
    Node n;
    n.kind = Kind::Num;
    n.number = std::move(value);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::boolean(bool value) {
    auto make = [](bool truth) {
        Node n;
        n.kind = Kind::Bool;
        n.truth = truth;
        return Expr(std::make_shared<const Node>(std::move(n)));
    };
    static const Expr t = make(true);
    static const Expr f = make(false);
    return value ? t : f;
}

Expr Expr::constant(Constant c) {
    Node n;
    n.kind = Kind::Const;
    n.constant = c;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::abs(std::string param, Type annot, Expr body) {
    Node n;
    n.kind = Kind::Abs;
    n.name = std::move(param);
    n.annot = std::move(annot);
    n.children.push_back(std::move(body));
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::app(Expr rator, Expr rand) {
    Node n;
    n.kind = Kind::App;
    n.children = {std::move(rator), std::move(rand)};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::if_(Expr test, Expr then_branch, Expr else_branch) {
    Node n;
    n.kind = Kind::If;
    n.children = {std::move(test), std::move(then_branch), std::move(else_branch)};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
const Integer& Expr::number() const { return node_->number; }
bool Expr::truth() const { return node_->truth; }
Constant Expr::constant() const { return node_->constant; }
const Type& Expr::annot() const { return *node_->annot; }
const Expr& Expr::body() const { return node_->children[0]; }
const Expr& Expr::rator() const { return node_->children[0]; }
const Expr& Expr::rand() const { return node_->children[1]; }
const Expr& Expr::test() const { return node_->children[0]; }
const Expr& Expr::then_branch() const { return node_->children[1]; }
const Expr& Expr::else_branch() const { return node_->children[2]; }
std::span<const Expr> Expr::children() const { return node_->children; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Expr::Kind::Var: return x.name == y.name;
        case Expr::Kind::Num: return x.number == y.number;
        case Expr::Kind::Bool: return x.truth == y.truth;
        case Expr::Kind::Const: return x.constant == y.constant;
        case Expr::Kind::Abs:
            return x.name == y.name && *x.annot == *y.annot && x.children == y.children;
        case Expr::Kind::App:
        case Expr::Kind::If: return x.children == y.children;
    }
    return false;
}

// ---------------------------------------------------------------------------
// VisiblePred

VisiblePred VisiblePred::type_of(Type t, std::string x) {
    return VisiblePred{Kind::TypeOf, std::move(t), std::move(x)};
}
VisiblePred VisiblePred::of_var(std::string x) { return VisiblePred{Kind::Var, std::nullopt, std::move(x)}; }
VisiblePred VisiblePred::tt() { return VisiblePred{Kind::True, std::nullopt, {}}; }
VisiblePred VisiblePred::ff() { return VisiblePred{Kind::False, std::nullopt, {}}; }
VisiblePred VisiblePred::none() { return VisiblePred{Kind::None, std::nullopt, {}}; }

bool operator==(const VisiblePred& a, const VisiblePred& b) {
    return a.kind == b.kind && a.type == b.type && a.var == b.var;
}

// ---------------------------------------------------------------------------
// Classification and substitution

bool is_value(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Num:
        case Expr::Kind::Bool:
        case Expr::Kind::Const:
        case Expr::Kind::Abs: return true;
        default: return false;
    }
}

namespace {

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (e.kind()) {
        case Expr::Kind::Var:
            if (std::find(bound.begin(), bound.end(), e.name()) == bound.end()) out.insert(e.name());
            return;
        case Expr::Kind::Abs:
            bound.push_back(e.name());
            collect_free(e.body(), bound, out);
            bound.pop_back();
            return;
        default:
            for (const auto& child : e.children()) collect_free(child, bound, out);
    }
}

Expr subst(const Expr& e, const std::string& x, const Expr& v) {
    switch (e.kind()) {
        case Expr::Kind::Var: return e.name() == x ? v : e;
        case Expr::Kind::Num:
        case Expr::Kind::Bool:
        case Expr::Kind::Const: return e;
        case Expr::Kind::Abs:
            if (e.name() == x) return e;
            // v is closed, so no capture is possible.
            return Expr::abs(e.name(), e.annot(), subst(e.body(), x, v));
        case Expr::Kind::App: return Expr::app(subst(e.rator(), x, v), subst(e.rand(), x, v));
        case Expr::Kind::If:
            return Expr::if_(subst(e.test(), x, v), subst(e.then_branch(), x, v), subst(e.else_branch(), x, v));
    }
    return e;
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(e, bound, out);
    return out;
}

bool is_closed(const Expr& e) { return free_vars(e).empty(); }

Expr substitute(const Expr& body, const std::string& x, const Expr& v) {
    if (!is_closed(v)) throw std::invalid_argument("substitute: replacement '" + print_expr(v) + "' is not closed");
    return subst(body, x, v);
}

int depth(const Expr& e) {
    int deepest = 0;
    for (const auto& child : e.children()) deepest = std::max(deepest, depth(child));
    return deepest + 1;
}

std::size_t size(const Expr& e) {
    std::size_t n = 1;
    for (const auto& child : e.children()) n += size(child);
    return n;
}

}  // namespace lts
