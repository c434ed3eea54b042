#pragma once

// Tiny expression language for user-supplied fields and potentials:
// real literals, pi, declared variables, + - * / ^ (with ^ right
// associative and binding tighter than unary minus), sin, cos, exp, and
// norm(q) for potentials. Parse and evaluation errors carry 0-based byte
// offsets into the source text.

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toruswell::expr {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

struct EvalError : std::runtime_error {
    std::size_t offset;
    EvalError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

enum class NodeKind {
    constant,
    variable,
    norm_q,
    add,
    sub,
    mul,
    divide,
    pow,
    neg,
    sin_fn,
    cos_fn,
    exp_fn,
};

struct Node {
    NodeKind kind = NodeKind::constant;
    double value = 0.0;   // constant payload
    int var_index = -1;   // variable payload
    int lhs = -1;         // child indices into the node pool
    int rhs = -1;
    std::size_t offset = 0;  // source position for error reporting
};

class Expression {
public:
    /// Parses src against the declared variable names. norm(q) is accepted
    /// only when allow_norm_q is set (potential context, where the variables
    /// are q1..qm). Throws ParseError.
    static Expression parse(std::string_view src, const std::vector<std::string>& variables,
                            bool allow_norm_q = false);

    /// Stack-program evaluation. Throws EvalError on domain errors.
    double evaluate(std::span<const double> vars) const;

    /// Forward-mode derivative in every variable.
    std::vector<double> gradient(std::span<const double> vars) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }
    const std::string& source() const { return src_; }
    int variable_count() const { return num_vars_; }

private:
    struct Dual {
        double v = 0.0;
        double d = 0.0;
    };
    Dual eval_dual(std::span<const double> vars, int seed_var) const;

    std::vector<Node> nodes_;
    std::vector<int> postorder_;
    int root_ = -1;
    int num_vars_ = 0;
    std::string src_;
};

}  // namespace toruswell::expr
