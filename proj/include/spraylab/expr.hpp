#pragma once

#include <cctype>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spraylab/field.hpp"

namespace spraylab {

// Small algebraic expression language over the chart coordinates
// x1..xn, y1..yn. Grammar (documented in docs/expression-language.md):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := ('-' | '+') factor | power
//   power   := atom ('^' signed-number)?          right-assoc, literal exponent
//   atom    := number | variable | call | '(' expr ')'
//   call    := ident '(' args ')'                 sqrt exp ln abs dot normsq
//
// dot/normsq take block names: dot(x,y), normsq(y).

enum class UnaryOp { Neg, Sqrt, Exp, Ln, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class VarBlock { Base, Fiber };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Var, Unary, Binary, Dot } kind;

    double number = 0.0;           // Number; also Pow exponent (rhs is Number)
    VarBlock block = VarBlock::Base;
    int index = 0;                 // Var: 0-based coordinate index
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    ExprPtr lhs, rhs;
    VarBlock dot_a = VarBlock::Base, dot_b = VarBlock::Base;
    std::size_t pos = 0;           // byte offset in the source, for diagnostics
};

struct ExprAst {
    ExprPtr root;
    int dim = 0;
};

inline bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprNode::Kind::Number:
            return a->number == b->number;
        case ExprNode::Kind::Var:
            return a->block == b->block && a->index == b->index;
        case ExprNode::Kind::Unary:
            return a->uop == b->uop && ast_equal(a->lhs, b->lhs);
        case ExprNode::Kind::Binary:
            return a->bop == b->bop && ast_equal(a->lhs, b->lhs) && ast_equal(a->rhs, b->rhs);
        case ExprNode::Kind::Dot:
            return a->dot_a == b->dot_a && a->dot_b == b->dot_b;
    }
    return false;
}

inline bool ast_equal(const ExprAst& a, const ExprAst& b) {
    return a.dim == b.dim && ast_equal(a.root, b.root);
}

// ---- parser ----

namespace detail {

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;

    explicit Lexer(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

class Parser {
public:
    Parser(const std::string& src, int dim) : lx_(src), dim_(dim) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        lx_.skip_ws();
        if (lx_.pos != lx_.src.size())
            throw SyntaxError(lx_.pos, "unexpected trailing input");
        return e;
    }

private:
    Lexer lx_;
    int dim_;

    static ExprPtr node(ExprNode n) { return std::make_shared<ExprNode>(std::move(n)); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            std::size_t at = lx_.pos;
            if (lx_.eat('+'))
                lhs = binary(BinaryOp::Add, lhs, parse_term(), at);
            else if (lx_.eat('-'))
                lhs = binary(BinaryOp::Sub, lhs, parse_term(), at);
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            std::size_t at = lx_.pos;
            if (lx_.eat('*'))
                lhs = binary(BinaryOp::Mul, lhs, parse_factor(), at);
            else if (lx_.eat('/'))
                lhs = binary(BinaryOp::Div, lhs, parse_factor(), at);
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        std::size_t at = lx_.pos;
        if (lx_.eat('-')) {
            ExprNode n;
            n.kind = ExprNode::Kind::Unary;
            n.uop = UnaryOp::Neg;
            n.lhs = parse_factor();
            n.pos = at;
            return node(std::move(n));
        }
        if (lx_.eat('+')) return parse_factor();
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        std::size_t at = lx_.pos;
        if (lx_.eat('^')) {
            // exponent restricted to a (possibly signed) numeric literal so
            // derivative rules stay elementary
            double sign = 1.0;
            while (true) {
                if (lx_.eat('-'))
                    sign = -sign;
                else if (lx_.eat('+'))
                    ;
                else
                    break;
            }
            std::size_t np = lx_.pos;
            double v = parse_number_literal(np);
            ExprNode rhs;
            rhs.kind = ExprNode::Kind::Number;
            rhs.number = sign * v;
            rhs.pos = np;
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.bop = BinaryOp::Pow;
            n.lhs = base;
            n.rhs = node(std::move(rhs));
            n.pos = at;
            return node(std::move(n));
        }
        return base;
    }

    double parse_number_literal(std::size_t& at) {
        lx_.skip_ws();
        at = lx_.pos;
        const char* begin = lx_.src.c_str() + lx_.pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError(lx_.pos, "expected numeric literal");
        lx_.pos += static_cast<std::size_t>(end - begin);
        return v;
    }

    ExprPtr parse_atom() {
        char c = lx_.peek();
        std::size_t at = lx_.pos;
        if (c == '\0') throw SyntaxError(at, "unexpected end of input");
        if (c == '(') {
            ++lx_.pos;
            ExprPtr e = parse_expr();
            if (!lx_.eat(')')) throw SyntaxError(lx_.pos, "expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t np;
            double v = parse_number_literal(np);
            ExprNode n;
            n.kind = ExprNode::Kind::Number;
            n.number = v;
            n.pos = np;
            return node(std::move(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident(at);
        throw SyntaxError(at, std::string("unexpected character '") + c + "'");
    }

    std::string read_ident() {
        lx_.skip_ws();
        std::size_t start = lx_.pos;
        while (lx_.pos < lx_.src.size() &&
               (std::isalnum(static_cast<unsigned char>(lx_.src[lx_.pos])) ||
                lx_.src[lx_.pos] == '_'))
            ++lx_.pos;
        return lx_.src.substr(start, lx_.pos - start);
    }

    VarBlock block_arg(std::size_t at, const std::string& id) {
        if (id == "x") return VarBlock::Base;
        if (id == "y") return VarBlock::Fiber;
        throw SyntaxError(at, "expected block name 'x' or 'y', got '" + id + "'");
    }

    ExprPtr parse_ident(std::size_t at) {
        std::string id = read_ident();
        if (id == "sqrt" || id == "exp" || id == "ln" || id == "abs") {
            if (!lx_.eat('(')) throw SyntaxError(lx_.pos, "expected '(' after " + id);
            ExprNode n;
            n.kind = ExprNode::Kind::Unary;
            n.uop = id == "sqrt"  ? UnaryOp::Sqrt
                    : id == "exp" ? UnaryOp::Exp
                    : id == "ln"  ? UnaryOp::Ln
                                  : UnaryOp::Abs;
            n.lhs = parse_expr();
            n.pos = at;
            if (lx_.eat(',')) throw ArityError(lx_.pos - 1, id + " takes one argument");
            if (!lx_.eat(')')) throw SyntaxError(lx_.pos, "expected ')'");
            return node(std::move(n));
        }
        if (id == "dot" || id == "normsq") {
            if (!lx_.eat('(')) throw SyntaxError(lx_.pos, "expected '(' after " + id);
            std::size_t a0 = lx_.pos;
            VarBlock a = block_arg(a0, read_ident());
            VarBlock b = a;
            if (id == "dot") {
                if (!lx_.eat(',')) throw ArityError(lx_.pos, "dot takes two block arguments");
                std::size_t b0 = lx_.pos;
                b = block_arg(b0, read_ident());
            } else if (lx_.peek() == ',') {
                throw ArityError(lx_.pos, "normsq takes one block argument");
            }
            if (!lx_.eat(')')) throw SyntaxError(lx_.pos, "expected ')'");
            ExprNode n;
            n.kind = ExprNode::Kind::Dot;
            n.dot_a = a;
            n.dot_b = b;
            n.pos = at;
            return node(std::move(n));
        }
        // coordinate variable x<k> / y<k>
        if ((id[0] == 'x' || id[0] == 'y') && id.size() > 1) {
            bool digits = true;
            for (std::size_t i = 1; i < id.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(id[i]))) digits = false;
            if (digits) {
                int k = 0;
                try {
                    k = std::stoi(id.substr(1));
                } catch (const std::out_of_range&) {
                    throw IndexOutOfRange(at, "variable index too large in '" + id + "'");
                }
                if (k < 1 || k > dim_)
                    throw IndexOutOfRange(at, "variable " + id + " exceeds dimension " +
                                                  std::to_string(dim_));
                ExprNode n;
                n.kind = ExprNode::Kind::Var;
                n.block = id[0] == 'x' ? VarBlock::Base : VarBlock::Fiber;
                n.index = k - 1;
                n.pos = at;
                return node(std::move(n));
            }
        }
        throw UnknownIdentifier(at, "unknown identifier '" + id + "'");
    }
};

inline int precedence_of(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::Binary:
            switch (n.bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub:
                    return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div:
                    return 2;
                case BinaryOp::Pow:
                    return 4;
            }
            return 0;
        case ExprNode::Kind::Unary:
            return n.uop == UnaryOp::Neg ? 3 : 5;
        default:
            return 5;
    }
}

inline void print_node(const ExprNode& n, std::string& out) {
    auto child = [&out](const ExprNode& parent, const ExprNode& c, bool right_side) {
        int pp = precedence_of(parent), cp = precedence_of(c);
        bool parens = cp < pp;
        // left-assoc binary: parenthesize equal-precedence right children
        if (!parens && right_side && parent.kind == ExprNode::Kind::Binary &&
            parent.bop != BinaryOp::Pow && cp == pp)
            parens = true;
        if (parens) out += '(';
        print_node(c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case ExprNode::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", n.number);
            out += buf;
            break;
        }
        case ExprNode::Kind::Var:
            out += (n.block == VarBlock::Base ? 'x' : 'y');
            out += std::to_string(n.index + 1);
            break;
        case ExprNode::Kind::Unary:
            if (n.uop == UnaryOp::Neg) {
                out += '-';
                child(n, *n.lhs, false);
            } else {
                out += n.uop == UnaryOp::Sqrt ? "sqrt" : n.uop == UnaryOp::Exp ? "exp"
                                                     : n.uop == UnaryOp::Ln    ? "ln"
                                                                               : "abs";
                out += '(';
                print_node(*n.lhs, out);
                out += ')';
            }
            break;
        case ExprNode::Kind::Binary: {
            child(n, *n.lhs, false);
            out += n.bop == BinaryOp::Add   ? " + "
                   : n.bop == BinaryOp::Sub ? " - "
                   : n.bop == BinaryOp::Mul ? "*"
                   : n.bop == BinaryOp::Div ? "/"
                                            : "^";
            child(n, *n.rhs, true);
            break;
        }
        case ExprNode::Kind::Dot:
            if (n.dot_a == n.dot_b) {
                out += "normsq(";
                out += n.dot_a == VarBlock::Base ? 'x' : 'y';
            } else {
                out += "dot(";
                out += n.dot_a == VarBlock::Base ? 'x' : 'y';
                out += ',';
                out += n.dot_b == VarBlock::Base ? 'x' : 'y';
            }
            out += ')';
            break;
    }
}

}  // namespace detail

inline ExprAst parse_expression(const std::string& src, int dim) {
    if (src.empty()) throw SyntaxError(0, "empty expression");
    detail::Parser p(src, dim);
    return ExprAst{p.parse(), dim};
}

inline std::string print_expression(const ExprAst& ast) {
    std::string out;
    detail::print_node(*ast.root, out);
    return out;
}

// ---- compiled field ----

class ExprField final : public ScalarFieldBase<ExprField> {
public:
    ExprField(ExprAst ast, std::shared_ptr<const Chart> chart)
        : ScalarFieldBase(std::move(chart)), ast_(std::move(ast)) {
        if (ast_.dim != dim()) throw ConfigError("expression dimension mismatch with chart");
    }

    const ExprAst& ast() const { return ast_; }

    template <class T>
    T evalT(const T* x, const T* y) const {
        return eval_node<T>(*ast_.root, x, y);
    }

private:
    ExprAst ast_;

    template <class T>
    T eval_node(const ExprNode& node, const T* x, const T* y) const {
        switch (node.kind) {
            case ExprNode::Kind::Number:
                return T(node.number);
            case ExprNode::Kind::Var:
                return node.block == VarBlock::Base ? x[node.index] : y[node.index];
            case ExprNode::Kind::Unary: {
                T a = eval_node<T>(*node.lhs, x, y);
                switch (node.uop) {
                    case UnaryOp::Neg:
                        return -a;
                    case UnaryOp::Sqrt:
                        return checked_sqrt(a);
                    case UnaryOp::Exp: {
                        using std::exp;
                        return exp(a);
                    }
                    case UnaryOp::Ln:
                        return checked_log(a);
                    case UnaryOp::Abs:
                        return checked_abs(a);
                }
                break;
            }
            case ExprNode::Kind::Binary: {
                T a = eval_node<T>(*node.lhs, x, y);
                if (node.bop == BinaryOp::Pow) return checked_pow(a, node.rhs->number);
                T b = eval_node<T>(*node.rhs, x, y);
                switch (node.bop) {
                    case BinaryOp::Add:
                        return a + b;
                    case BinaryOp::Sub:
                        return a - b;
                    case BinaryOp::Mul:
                        return a * b;
                    case BinaryOp::Div:
                        return checked_div(a, b);
                    default:
                        break;
                }
                break;
            }
            case ExprNode::Kind::Dot: {
                const T* a = node.dot_a == VarBlock::Base ? x : y;
                const T* b = node.dot_b == VarBlock::Base ? x : y;
                T s = a[0] * b[0];
                for (int i = 1; i < dim(); ++i) s += a[i] * b[i];
                return s;
            }
        }
        throw DomainError("malformed expression node");
    }
};

inline ScalarFieldPtr compile_expression(const ExprAst& ast,
                                         std::shared_ptr<const Chart> chart) {
    return std::make_shared<ExprField>(ast, std::move(chart));
}

inline ScalarFieldPtr compile_expression(const std::string& src,
                                         std::shared_ptr<const Chart> chart) {
    return compile_expression(parse_expression(src, chart->dim()), std::move(chart));
}

}  // namespace spraylab
