#ifndef LTS_SYNTAX_HPP
#define LTS_SYNTAX_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lts {

using Integer = boost::multiprecision::cpp_int;

// The closed set of primitive operations.
enum class Constant { Add1, Not, IsNumber, IsBoolean, IsProcedure, IsEven, IsOdd };

inline constexpr Constant kAllConstants[] = {
    Constant::Add1,        Constant::Not,    Constant::IsNumber, Constant::IsBoolean,
    Constant::IsProcedure, Constant::IsEven, Constant::IsOdd,
};

std::string_view constant_name(Constant c);
std::optional<Constant> constant_from_name(std::string_view name);

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::string message, int line, int column, std::string token);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& token() const { return token_; }

private:
    int line_;
    int column_;
    std::string token_;
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

// Immutable type tree. Copies share structure; operator== is syntactic
// (see type_equal in types.hpp for the normalization-aware comparison).
class Type {
public:
    enum class Kind { Top, Number, True, False, Arrow, Union, Refine };

    static Type top();
    static Type number();
    static Type true_type();
    static Type false_type();
    // (U True False)
    static Type boolean();
    // (U)
    static Type bot();
    static Type arrow(Type arg, Type result, std::optional<Type> latent = std::nullopt);
    static Type union_of(std::vector<Type> members);
    // Refine(c, base); callers normally go through refinement() in types.hpp.
    static Type refine(Constant c, Type base);

    Kind kind() const;
    bool is(Kind k) const { return kind() == k; }

    // Arrow accessors.
    const Type& arg() const;
    const Type& result() const;
    const std::optional<Type>& latent() const;

    // Union accessor.
    std::span<const Type> members() const;

    // Refine accessors.
    Constant refiner() const;
    const Type& base() const;

    friend bool operator==(const Type& a, const Type& b);

    struct Node;  // implementation detail

private:
    explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

using Latent = std::optional<Type>;

struct Type::Node {
    Kind kind;
    std::vector<Type> children;  // arrow: {arg, result}; union: members; refine: {base}
    Latent latent;
    Constant refiner = Constant::Add1;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

class Expr {
public:
    enum class Kind { Var, Num, Bool, Const, Abs, App, If };

    static Expr var(std::string name);
    static Expr num(Integer value);
    static Expr boolean(bool value);
    static Expr constant(Constant c);
    static Expr abs(std::string param, Type annot, Expr body);
    static Expr app(Expr rator, Expr rand);
    static Expr if_(Expr test, Expr then_branch, Expr else_branch);

    Kind kind() const;
    bool is(Kind k) const { return kind() == k; }

    const std::string& name() const;  // Var name or Abs parameter
    const Integer& number() const;
    bool truth() const;
    Constant constant() const;
    const Type& annot() const;
    const Expr& body() const;
    const Expr& rator() const;
    const Expr& rand() const;
    const Expr& test() const;
    const Expr& then_branch() const;
    const Expr& else_branch() const;

    // Direct subexpressions in left-to-right order.
    std::span<const Expr> children() const;

    friend bool operator==(const Expr& a, const Expr& b);

    struct Node;  // implementation detail

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    Kind kind = Kind::Var;
    std::string name;
    Integer number;
    bool truth = false;
    Constant constant = Constant::Add1;
    std::optional<Type> annot;
    std::vector<Expr> children;
};

// ---------------------------------------------------------------------------
// Visible predicates
// ---------------------------------------------------------------------------

struct VisiblePred {
    enum class Kind { TypeOf, Var, True, False, None };

    Kind kind = Kind::None;
    std::optional<Type> type;  // TypeOf only
    std::string var;           // TypeOf and Var

    static VisiblePred type_of(Type t, std::string x);
    static VisiblePred of_var(std::string x);
    static VisiblePred tt();
    static VisiblePred ff();
    static VisiblePred none();

    bool is(Kind k) const { return kind == k; }

    friend bool operator==(const VisiblePred& a, const VisiblePred& b);
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Expr parse_expr(std::string_view text);
Type parse_type(std::string_view text);
VisiblePred parse_pred(std::string_view text);

// A source file: zero or more (declare-refinement c) directives, then one
// expression.
struct Program {
    std::vector<Constant> declared;
    Expr expr;
};
Program parse_program(std::string_view text);

std::string print_expr(const Expr& e);
std::string print_type(const Type& t);
std::string print_pred(const VisiblePred& p);

bool is_value(const Expr& e);
std::set<std::string> free_vars(const Expr& e);
bool is_closed(const Expr& e);

// Replaces free occurrences of x in body by the closed value v.
// Throws std::invalid_argument if v is not closed.
Expr substitute(const Expr& body, const std::string& x, const Expr& v);

// Number of nodes on the longest root-to-leaf path; leaves have depth 1.
int depth(const Expr& e);
std::size_t size(const Expr& e);

// True when name is usable as a variable in the surface syntax.
bool is_valid_identifier(std::string_view name);

}  // namespace lts

#endif  // LTS_SYNTAX_HPP
