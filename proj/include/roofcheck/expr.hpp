#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "roofcheck/weights.hpp"

namespace roofcheck {

enum class AtomKind { O, UPlus, UMinus, V, Ttilde, Ttilde4, TtildeMinus, F, IrredE };

enum class ExprKind { Atom, Twist, Dual, Wedge, Sym, Tensor, Sum };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    AtomKind atom = AtomKind::O;  // Atom
    Weight label{};               // Atom IrredE
    int64_t a = 0, b = 0;         // Twist
    int k = 0;                    // Wedge / Sym
    std::vector<ExprPtr> child;
};

ExprPtr make_atom(AtomKind k);
ExprPtr make_irred(const Weight& label);
ExprPtr make_twist(ExprPtr e, int64_t a, int64_t b);
ExprPtr make_dual(ExprPtr e);
ExprPtr make_wedge(int k, ExprPtr e);
ExprPtr make_sym(int k, ExprPtr e);
ExprPtr make_tensor(ExprPtr l, ExprPtr r);
ExprPtr make_sum(ExprPtr l, ExprPtr r);

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int line, int column);
};

// Grammar: expr := term ('+' term)*; term := postfix ('*' postfix)*;
// postfix := primary tw*; tw := '(' int ',' int ')';
// primary := atom | 'dual(' expr ')' | ('wedge'|'sym') k '(' expr ')' | '(' expr ')'
// atom := O | U+ | U- | V | Ttilde | Ttilde4 | F | E[ i i i i i ]
ExprPtr parse_expr(const std::string& text);

// canonical text form; parse(print(e)) has identical structure
std::string print_expr(const ExprPtr& e);

bool expr_equal(const ExprPtr& x, const ExprPtr& y);

}  // namespace roofcheck
