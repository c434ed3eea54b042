#include "toruswell/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>

namespace toruswell::expr {

namespace {

struct Token {
    enum Kind { number, ident, op, lparen, rparen, comma, end } kind = end;
    double value = 0.0;
    std::string text;
    char symbol = 0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        cur_ = Token{};
        cur_.offset = pos_;
        if (pos_ >= src_.size()) {
            cur_.kind = Token::end;
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* endp = nullptr;
            const double v = std::strtod(begin, &endp);
            if (endp == begin) throw ParseError("malformed number", pos_);
            cur_.kind = Token::number;
            cur_.value = v;
            pos_ += static_cast<std::size_t>(endp - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = pos_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            cur_.kind = Token::ident;
            cur_.text = std::string(src_.substr(pos_, j - pos_));
            pos_ = j;
            return;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                cur_.kind = Token::op;
                cur_.symbol = c;
                break;
            case '(': cur_.kind = Token::lparen; break;
            case ')': cur_.kind = Token::rparen; break;
            case ',': cur_.kind = Token::comma; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_;
};

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& vars, bool allow_norm_q)
        : lex_(src), vars_(vars), allow_norm_q_(allow_norm_q) {}

    int parse_all(std::vector<Node>& pool) {
        pool_ = &pool;
        const int r = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::end) throw ParseError("trailing input", t.offset);
        return r;
    }

private:
    int add_node(Node n) {
        pool_->push_back(n);
        return static_cast<int>(pool_->size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        while (lex_.peek().kind == Token::op &&
               (lex_.peek().symbol == '+' || lex_.peek().symbol == '-')) {
            const Token t = lex_.take();
            const int rhs = parse_term();
            Node n;
            n.kind = t.symbol == '+' ? NodeKind::add : NodeKind::sub;
            n.lhs = lhs;
            n.rhs = rhs;
            n.offset = t.offset;
            lhs = add_node(n);
        }
        return lhs;
    }

    int parse_term() {
        int lhs = parse_unary();
        while (lex_.peek().kind == Token::op &&
               (lex_.peek().symbol == '*' || lex_.peek().symbol == '/')) {
            const Token t = lex_.take();
            const int rhs = parse_unary();
            Node n;
            n.kind = t.symbol == '*' ? NodeKind::mul : NodeKind::divide;
            n.lhs = lhs;
            n.rhs = rhs;
            n.offset = t.offset;
            lhs = add_node(n);
        }
        return lhs;
    }

    int parse_unary() {
        if (lex_.peek().kind == Token::op && lex_.peek().symbol == '-') {
            const Token t = lex_.take();
            const int arg = parse_unary();
            Node n;
            n.kind = NodeKind::neg;
            n.lhs = arg;
            n.offset = t.offset;
            return add_node(n);
        }
        return parse_power();
    }

    int parse_power() {
        const int base = parse_atom();
        if (lex_.peek().kind == Token::op && lex_.peek().symbol == '^') {
            const Token t = lex_.take();
            const int exponent = parse_unary();  // right associative, allows x^-2
            Node n;
            n.kind = NodeKind::pow;
            n.lhs = base;
            n.rhs = exponent;
            n.offset = t.offset;
            return add_node(n);
        }
        return base;
    }

    int parse_atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Token::number: {
                Node n;
                n.kind = NodeKind::constant;
                n.value = t.value;
                n.offset = t.offset;
                return add_node(n);
            }
            case Token::lparen: {
                const int inner = parse_expr();
                expect_rparen();
                return inner;
            }
            case Token::ident:
                return parse_ident(t);
            case Token::end:
                throw ParseError("expected expression", t.offset);
            default:
                throw ParseError("unexpected token", t.offset);
        }
    }

    int parse_ident(const Token& t) {
        if (t.text == "pi") {
            Node n;
            n.kind = NodeKind::constant;
            n.value = std::numbers::pi;
            n.offset = t.offset;
            return add_node(n);
        }
        if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
            if (lex_.peek().kind != Token::lparen)
                throw ParseError(t.text + " needs an argument list", lex_.peek().offset);
            lex_.take();
            const int arg = parse_expr();
            expect_rparen();
            Node n;
            n.kind = t.text == "sin"   ? NodeKind::sin_fn
                     : t.text == "cos" ? NodeKind::cos_fn
                                       : NodeKind::exp_fn;
            n.lhs = arg;
            n.offset = t.offset;
            return add_node(n);
        }
        if (t.text == "norm") {
            if (!allow_norm_q_)
                throw ParseError("norm(q) is only available for potentials", t.offset);
            if (lex_.peek().kind != Token::lparen)
                throw ParseError("norm needs an argument list", lex_.peek().offset);
            lex_.take();
            const Token arg = lex_.take();
            if (arg.kind != Token::ident || arg.text != "q")
                throw ParseError("norm takes the bare vector q", arg.offset);
            expect_rparen();
            Node n;
            n.kind = NodeKind::norm_q;
            n.offset = t.offset;
            return add_node(n);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == t.text) {
                Node n;
                n.kind = NodeKind::variable;
                n.var_index = static_cast<int>(i);
                n.offset = t.offset;
                return add_node(n);
            }
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.offset);
    }

    void expect_rparen() {
        const Token& t = lex_.peek();
        if (t.kind == Token::comma)
            throw ParseError("functions take exactly one argument", t.offset);
        if (t.kind != Token::rparen) throw ParseError("expected ')'", t.offset);
        lex_.take();
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
    bool allow_norm_q_;
    std::vector<Node>* pool_ = nullptr;
};

bool integral_exponent(const Node& n, double* out) {
    if (n.kind != NodeKind::constant) return false;
    const double r = std::round(n.value);
    if (std::abs(n.value - r) > 1e-9 || std::abs(r) > 64.0) return false;
    *out = r;
    return true;
}

double powi(double base, long long e) {
    if (e < 0) return 1.0 / powi(base, -e);
    double acc = 1.0;
    double cur = base;
    while (e > 0) {
        if (e & 1) acc *= cur;
        cur *= cur;
        e >>= 1;
    }
    return acc;
}

}  // namespace

Expression Expression::parse(std::string_view src, const std::vector<std::string>& variables,
                             bool allow_norm_q) {
    Expression e;
    e.src_ = std::string(src);
    e.num_vars_ = static_cast<int>(variables.size());
    Parser p(src, variables, allow_norm_q);
    e.root_ = p.parse_all(e.nodes_);

    // Postorder program for the stack evaluator.
    std::function<void(int)> walk = [&](int idx) {
        const Node& n = e.nodes_[static_cast<std::size_t>(idx)];
        if (n.lhs >= 0) walk(n.lhs);
        if (n.rhs >= 0) walk(n.rhs);
        e.postorder_.push_back(idx);
    };
    walk(e.root_);
    return e;
}

double Expression::evaluate(std::span<const double> vars) const {
    std::vector<double> stack;
    stack.reserve(postorder_.size());
    for (const int idx : postorder_) {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.kind) {
            case NodeKind::constant:
                stack.push_back(n.value);
                break;
            case NodeKind::variable:
                stack.push_back(vars[static_cast<std::size_t>(n.var_index)]);
                break;
            case NodeKind::norm_q: {
                double s = 0.0;
                for (double v : vars) s += v * v;
                stack.push_back(std::sqrt(s));
                break;
            }
            case NodeKind::neg:
                stack.back() = -stack.back();
                break;
            case NodeKind::sin_fn:
                stack.back() = std::sin(stack.back());
                break;
            case NodeKind::cos_fn:
                stack.back() = std::cos(stack.back());
                break;
            case NodeKind::exp_fn:
                stack.back() = std::exp(stack.back());
                break;
            default: {
                const double b = stack.back();
                stack.pop_back();
                const double a = stack.back();
                switch (n.kind) {
                    case NodeKind::add: stack.back() = a + b; break;
                    case NodeKind::sub: stack.back() = a - b; break;
                    case NodeKind::mul: stack.back() = a * b; break;
                    case NodeKind::divide:
                        if (b == 0.0) throw EvalError("division by zero", n.offset);
                        stack.back() = a / b;
                        break;
                    case NodeKind::pow: {
                        double e = 0.0;
                        if (integral_exponent(nodes_[static_cast<std::size_t>(n.rhs)], &e)) {
                            if (a == 0.0 && e < 0.0)
                                throw EvalError("zero base with negative exponent", n.offset);
                            stack.back() = powi(a, static_cast<long long>(e));
                        } else {
                            if (a <= 0.0)
                                throw EvalError(
                                    "nonpositive base with non-integer exponent", n.offset);
                            stack.back() = std::exp(b * std::log(a));
                        }
                        break;
                    }
                    default: break;
                }
            }
        }
    }
    return stack.back();
}

Expression::Dual Expression::eval_dual(std::span<const double> vars, int seed_var) const {
    std::vector<Dual> stack;
    stack.reserve(postorder_.size());
    for (const int idx : postorder_) {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.kind) {
            case NodeKind::constant:
                stack.push_back({n.value, 0.0});
                break;
            case NodeKind::variable:
                stack.push_back({vars[static_cast<std::size_t>(n.var_index)],
                                 n.var_index == seed_var ? 1.0 : 0.0});
                break;
            case NodeKind::norm_q: {
                double s = 0.0;
                for (double v : vars) s += v * v;
                const double r = std::sqrt(s);
                if (r == 0.0) throw EvalError("norm(q) not differentiable at 0", n.offset);
                stack.push_back({r, vars[static_cast<std::size_t>(seed_var)] / r});
                break;
            }
            case NodeKind::neg:
                stack.back() = {-stack.back().v, -stack.back().d};
                break;
            case NodeKind::sin_fn: {
                const Dual a = stack.back();
                stack.back() = {std::sin(a.v), std::cos(a.v) * a.d};
                break;
            }
            case NodeKind::cos_fn: {
                const Dual a = stack.back();
                stack.back() = {std::cos(a.v), -std::sin(a.v) * a.d};
                break;
            }
            case NodeKind::exp_fn: {
                const Dual a = stack.back();
                const double e = std::exp(a.v);
                stack.back() = {e, e * a.d};
                break;
            }
            default: {
                const Dual b = stack.back();
                stack.pop_back();
                const Dual a = stack.back();
                switch (n.kind) {
                    case NodeKind::add: stack.back() = {a.v + b.v, a.d + b.d}; break;
                    case NodeKind::sub: stack.back() = {a.v - b.v, a.d - b.d}; break;
                    case NodeKind::mul:
                        stack.back() = {a.v * b.v, a.d * b.v + a.v * b.d};
                        break;
                    case NodeKind::divide:
                        if (b.v == 0.0) throw EvalError("division by zero", n.offset);
                        stack.back() = {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
                        break;
                    case NodeKind::pow: {
                        double e = 0.0;
                        if (integral_exponent(nodes_[static_cast<std::size_t>(n.rhs)], &e)) {
                            if (a.v == 0.0 && e < 1.0) {
                                if (e <= 0.0)
                                    throw EvalError("zero base with negative exponent",
                                                    n.offset);
                            }
                            const long long ei = static_cast<long long>(e);
                            const double val = powi(a.v, ei);
                            const double der =
                                ei == 0 ? 0.0 : e * powi(a.v, ei - 1) * a.d;
                            stack.back() = {val, der};
                        } else {
                            if (a.v <= 0.0)
                                throw EvalError(
                                    "nonpositive base with non-integer exponent", n.offset);
                            const double val = std::exp(b.v * std::log(a.v));
                            stack.back() = {val, val * (b.d * std::log(a.v) +
                                                        b.v * a.d / a.v)};
                        }
                        break;
                    }
                    default: break;
                }
            }
        }
    }
    return stack.back();
}

std::vector<double> Expression::gradient(std::span<const double> vars) const {
    std::vector<double> g(vars.size(), 0.0);
    for (std::size_t i = 0; i < vars.size(); ++i)
        g[i] = eval_dual(vars, static_cast<int>(i)).d;
    return g;
}

}  // namespace toruswell::expr
