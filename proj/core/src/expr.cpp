#include "sisio/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace sisio {

namespace {

struct FunctionEntry {
    std::string_view name;
    Function function;
};

constexpr std::array<FunctionEntry, 8> kFunctions{{
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"tan", Function::Tan},
    {"exp", Function::Exp},
    {"tanh", Function::Tanh},
    {"abs", Function::Abs},
    {"sqrt", Function::Sqrt},
    {"sign", Function::Sign},
}};

double apply(Function f, double a) {
    switch (f) {
    case Function::Sin: return std::sin(a);
    case Function::Cos: return std::cos(a);
    case Function::Tan: return std::tan(a);
    case Function::Exp: return std::exp(a);
    case Function::Tanh: return std::tanh(a);
    case Function::Abs: return std::fabs(a);
    case Function::Sqrt: return std::sqrt(a);
    case Function::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    }
    return a;
}

Dual apply(Function f, Dual a) {
    switch (f) {
    case Function::Sin: return sin(a);
    case Function::Cos: return cos(a);
    case Function::Tan: return tan(a);
    case Function::Exp: return exp(a);
    case Function::Tanh: return tanh(a);
    case Function::Abs: return abs(a);
    case Function::Sqrt: return sqrt(a);
    case Function::Sign: return sign(a);
    }
    return a;
}

double power(double a, double b) { return std::pow(a, b); }
Dual power(Dual a, Dual b) { return pow(a, b); }

template <typename T>
T evaluate(const ExprNode& node, std::span<const T> values) {
    switch (node.kind) {
    case NodeKind::Constant: return T(node.value);
    case NodeKind::Variable: return values[node.variable];
    case NodeKind::Negate: return -evaluate(*node.lhs, values);
    case NodeKind::Add: return evaluate(*node.lhs, values) + evaluate(*node.rhs, values);
    case NodeKind::Sub: return evaluate(*node.lhs, values) - evaluate(*node.rhs, values);
    case NodeKind::Mul: return evaluate(*node.lhs, values) * evaluate(*node.rhs, values);
    case NodeKind::Div: return evaluate(*node.lhs, values) / evaluate(*node.rhs, values);
    case NodeKind::Pow: return power(evaluate(*node.lhs, values), evaluate(*node.rhs, values));
    case NodeKind::Call: return apply(node.function, evaluate(*node.lhs, values));
    }
    return T(0.0);
}

std::shared_ptr<const ExprNode> make_binary(NodeKind kind, std::shared_ptr<const ExprNode> lhs,
                                            std::shared_ptr<const ExprNode> rhs) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

std::shared_ptr<const ExprNode> make_unary(NodeKind kind, std::shared_ptr<const ExprNode> arg,
                                           Function f = Function::Sin) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->function = f;
    n->lhs = std::move(arg);
    return n;
}

// Recursive descent over
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | name '(' expr ')' | '(' expr ')'
class Parser {
public:
    Parser(std::string_view text, const VariableSet& vars) : text_(text), vars_(vars) {}

    std::shared_ptr<const ExprNode> parse() {
        auto e = expression();
        skip_space();
        if (pos_ != text_.size()) {
            fail(ErrorKind::Syntax, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
        throw ParseError(kind, pos_, msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(ErrorKind::Syntax, std::string("expected '") + c + "'");
        }
    }

    std::shared_ptr<const ExprNode> expression() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(NodeKind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = make_binary(NodeKind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<const ExprNode> term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(NodeKind::Mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make_binary(NodeKind::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<const ExprNode> unary() {
        if (accept('-')) {
            return make_unary(NodeKind::Negate, unary());
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    std::shared_ptr<const ExprNode> power() {
        auto base = primary();
        if (accept('^')) {
            return make_binary(NodeKind::Pow, base, unary());
        }
        return base;
    }

    std::shared_ptr<const ExprNode> primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail(ErrorKind::Syntax, "unexpected end of expression");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return name();
        }
        fail(ErrorKind::Syntax, "unexpected '" + std::string(1, c) + "'");
    }

    std::shared_ptr<const ExprNode> number() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr == first) {
            fail(ErrorKind::Syntax, "malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Constant;
        n->value = v;
        return n;
    }

    std::shared_ptr<const ExprNode> name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view ident = text_.substr(start, pos_ - start);
        skip_space();
        const bool is_call = pos_ < text_.size() && text_[pos_] == '(';

        for (const auto& entry : kFunctions) {
            if (entry.name != ident) continue;
            if (!is_call) {
                pos_ = start;
                fail(ErrorKind::Arity, "function '" + std::string(ident) + "' needs one argument");
            }
            ++pos_;
            auto arg = expression();
            if (accept(',')) {
                fail(ErrorKind::Arity, "function '" + std::string(ident) + "' takes exactly one argument");
            }
            expect(')');
            return make_unary(NodeKind::Call, arg, entry.function);
        }

        const std::size_t index = vars_.find(ident);
        if (index == vars_.size()) {
            pos_ = start;
            fail(ErrorKind::UnknownIdentifier, "unknown identifier '" + std::string(ident) + "'");
        }
        if (is_call) {
            fail(ErrorKind::Arity, "variable '" + std::string(ident) + "' is not callable");
        }
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Variable;
        n->variable = index;
        return n;
    }

    std::string_view text_;
    const VariableSet& vars_;
    std::size_t pos_ = 0;
};

std::size_t max_arity(const ExprNode& n) {
    std::size_t a = n.kind == NodeKind::Variable ? n.variable + 1 : 0;
    if (n.lhs) a = std::max(a, max_arity(*n.lhs));
    if (n.rhs) a = std::max(a, max_arity(*n.rhs));
    return a;
}

bool mentions(const ExprNode& n, std::size_t v) {
    if (n.kind == NodeKind::Variable && n.variable == v) return true;
    return (n.lhs && mentions(*n.lhs, v)) || (n.rhs && mentions(*n.rhs, v));
}

void print(const ExprNode& n, const VariableSet& vars, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        print(*n.lhs, vars, out);
        out += op;
        print(*n.rhs, vars, out);
        out += ')';
    };
    switch (n.kind) {
    case NodeKind::Constant: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        // Negative literals do not exist in the grammar.
        if (n.value < 0.0 || std::signbit(n.value)) {
            out += "(0-";
            std::snprintf(buf, sizeof buf, "%.17g", -n.value);
            out += buf;
            out += ')';
        } else {
            out += buf;
        }
        break;
    }
    case NodeKind::Variable: out += vars.name(n.variable); break;
    case NodeKind::Negate:
        out += "(-";
        print(*n.lhs, vars, out);
        out += ')';
        break;
    case NodeKind::Add: binary(" + "); break;
    case NodeKind::Sub: binary(" - "); break;
    case NodeKind::Mul: binary("*"); break;
    case NodeKind::Div: binary("/"); break;
    case NodeKind::Pow: binary("^"); break;
    case NodeKind::Call:
        out += function_name(n.function);
        out += '(';
        print(*n.lhs, vars, out);
        out += ')';
        break;
    }
}

} // namespace

VariableSet VariableSet::states(std::size_t n) {
    VariableSet v;
    v.names_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.names_.push_back("x" + std::to_string(i + 1));
    return v;
}

VariableSet VariableSet::states_and_time(std::size_t n) {
    VariableSet v = states(n);
    v.names_.emplace_back("k");
    return v;
}

std::size_t VariableSet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return names_.size();
}

ParseError::ParseError(ErrorKind kind, std::size_t position, const std::string& message)
    : Error(kind, message + " at position " + std::to_string(position)), position_(position) {}

const char* function_name(Function f) noexcept {
    for (const auto& e : kFunctions) {
        if (e.function == f) return e.name.data();
    }
    return "?";
}

Expr Expr::parse(std::string_view text, const VariableSet& vars) {
    return Expr(Parser(text, vars).parse());
}

Expr Expr::constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Constant;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Variable;
    n->variable = index;
    return Expr(std::move(n));
}

double Expr::eval(std::span<const double> values) const { return evaluate<double>(*root_, values); }

Dual Expr::eval(std::span<const Dual> values) const { return evaluate<Dual>(*root_, values); }

double Expr::partial(std::span<const double> values, std::size_t j) const {
    std::vector<Dual> seeded(values.begin(), values.end());
    seeded[j].deriv = 1.0;
    return eval(std::span<const Dual>(seeded)).deriv;
}

std::pair<double, double> Expr::one_sided_partials(std::span<const double> values, std::size_t j) const {
    std::vector<Dual> seeded(values.begin(), values.end());
    seeded[j].deriv = 1.0;
    const double right = eval(std::span<const Dual>(seeded)).deriv;
    seeded[j].deriv = -1.0;
    const double left = -eval(std::span<const Dual>(seeded)).deriv;
    return {left, right};
}

std::size_t Expr::arity() const { return max_arity(*root_); }

bool Expr::references(std::size_t variable) const { return mentions(*root_, variable); }

std::string Expr::to_string(const VariableSet& vars) const {
    std::string out;
    print(*root_, vars, out);
    return out;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Add, a.node(), b.node())); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Sub, a.node(), b.node())); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Mul, a.node(), b.node())); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Div, a.node(), b.node())); }
Expr operator-(const Expr& a) { return Expr(make_unary(NodeKind::Negate, a.node())); }
Expr pow(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Pow, a.node(), b.node())); }
Expr call(Function f, const Expr& a) { return Expr(make_unary(NodeKind::Call, a.node(), f)); }

} // namespace sisio
