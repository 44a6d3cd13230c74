#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sisio/dual.hpp"
#include "sisio/error.hpp"

namespace sisio {

// Names an expression may reference, mapped to positions in the evaluation
// vector. State variables are 1-indexed in text (x1, x2, ...) and 0-indexed in
// the vector.
class VariableSet {
public:
    static VariableSet states(std::size_t n);
    // x1..xn followed by the time index k at position n.
    static VariableSet states_and_time(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
    // Position of `name`, or size() when not present.
    [[nodiscard]] std::size_t find(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

enum class NodeKind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Function { Sin, Cos, Tan, Exp, Tanh, Abs, Sqrt, Sign };

struct ExprNode {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;
    std::size_t variable = 0;
    Function function = Function::Sin;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t position, const std::string& message);

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Immutable expression tree. Copies share structure.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

    static Expr parse(std::string_view text, const VariableSet& vars);
    static Expr constant(double v);
    static Expr variable(std::size_t index);

    [[nodiscard]] const ExprNode& root() const { return *root_; }
    [[nodiscard]] const std::shared_ptr<const ExprNode>& node() const noexcept { return root_; }
    [[nodiscard]] bool valid() const noexcept { return root_ != nullptr; }

    [[nodiscard]] double eval(std::span<const double> values) const;
    [[nodiscard]] Dual eval(std::span<const Dual> values) const;

    // Forward-mode derivative along e_j (right derivative at kinks).
    [[nodiscard]] double partial(std::span<const double> values, std::size_t j) const;
    // Left and right derivatives along e_j; they differ only at kinks.
    [[nodiscard]] std::pair<double, double> one_sided_partials(std::span<const double> values,
                                                               std::size_t j) const;

    // One more than the largest referenced variable position (0 for none).
    [[nodiscard]] std::size_t arity() const;
    [[nodiscard]] bool references(std::size_t variable) const;

    // Fully parenthesized text that parses back to an equivalent tree.
    [[nodiscard]] std::string to_string(const VariableSet& vars) const;

private:
    std::shared_ptr<const ExprNode> root_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Expr& b);
Expr call(Function f, const Expr& a);

const char* function_name(Function f) noexcept;

} // namespace sisio
