#include "roofcheck/expr.hpp"

#include <cctype>

namespace roofcheck {

namespace {
ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr make_atom(AtomKind k) {
    Expr e;
    e.kind = ExprKind::Atom;
    e.atom = k;
    return node(std::move(e));
}

ExprPtr make_irred(const Weight& label) {
    Expr e;
    e.kind = ExprKind::Atom;
    e.atom = AtomKind::IrredE;
    e.label = label;
    return node(std::move(e));
}

ExprPtr make_twist(ExprPtr c, int64_t a, int64_t b) {
    if (a == 0 && b == 0) return c;
    if (c->kind == ExprKind::Twist) {
        a += c->a;
        b += c->b;
        c = c->child[0];
        if (a == 0 && b == 0) return c;
    }
    Expr e;
    e.kind = ExprKind::Twist;
    e.a = a;
    e.b = b;
    e.child = {std::move(c)};
    return node(std::move(e));
}

ExprPtr make_dual(ExprPtr c) {
    Expr e;
    e.kind = ExprKind::Dual;
    e.child = {std::move(c)};
    return node(std::move(e));
}

ExprPtr make_wedge(int k, ExprPtr c) {
    Expr e;
    e.kind = ExprKind::Wedge;
    e.k = k;
    e.child = {std::move(c)};
    return node(std::move(e));
}

ExprPtr make_sym(int k, ExprPtr c) {
    Expr e;
    e.kind = ExprKind::Sym;
    e.k = k;
    e.child = {std::move(c)};
    return node(std::move(e));
}

ExprPtr make_tensor(ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = ExprKind::Tensor;
    e.child = {std::move(l), std::move(r)};
    return node(std::move(e));
}

ExprPtr make_sum(ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = ExprKind::Sum;
    e.child = {std::move(l), std::move(r)};
    return node(std::move(e));
}

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column)),
      line(line),
      column(column) {}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    void advance() {
        if (pos < s.size()) {
            if (s[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }

    bool eof() {
        skip_ws();
        return pos >= s.size();
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    int64_t integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) advance();
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance();
        if (pos == digits) fail("expected integer");
        return std::stoll(s.substr(start, pos - start));
    }

    // identifier: letters optionally followed by digits ('Ttilde4'), with a
    // trailing '+'/'-' glued on for the two spinor-side atoms
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) advance();
        if (pos == start) fail("expected name");
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance();
        std::string name = s.substr(start, pos - start);
        if (name == "U" && pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            name += s[pos];
            advance();
        }
        return name;
    }
};

struct Parser {
    Lexer lx;

    explicit Parser(const std::string& text) : lx(text) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        if (!lx.eof()) lx.fail("trailing input");
        return e;
    }

    ExprPtr sum() {
        ExprPtr e = term();
        while (lx.peek() == '+') {
            lx.advance();
            e = make_sum(e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = postfix();
        while (lx.peek() == '*') {
            lx.advance();
            e = make_tensor(e, postfix());
        }
        return e;
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (lx.peek() == '(') {
            lx.advance();
            int64_t a = lx.integer();
            lx.expect(',');
            int64_t b = lx.integer();
            lx.expect(')');
            e = make_twist(e, a, b);
        }
        return e;
    }

    ExprPtr primary() {
        if (lx.eat('(')) {
            ExprPtr e = sum();
            lx.expect(')');
            return e;
        }
        int line = lx.line, col = lx.col;
        std::string name = lx.ident();
        if (name == "O") return make_atom(AtomKind::O);
        if (name == "U+") return make_atom(AtomKind::UPlus);
        if (name == "U-") return make_atom(AtomKind::UMinus);
        if (name == "V") return make_atom(AtomKind::V);
        if (name == "Ttilde") return make_atom(AtomKind::Ttilde);
        if (name == "Ttilde4") return make_atom(AtomKind::Ttilde4);
        if (name == "TtildeMinus") return make_atom(AtomKind::TtildeMinus);
        if (name == "F") return make_atom(AtomKind::F);
        if (name == "E") {
            lx.expect('[');
            Weight w;
            for (int i = 0; i < 5; ++i) {
                w.a[i] = lx.integer();
                if (i < 4 && lx.peek() == ',') lx.advance();
            }
            lx.expect(']');
            return make_irred(w);
        }
        if (name == "dual") {
            lx.expect('(');
            ExprPtr e = sum();
            lx.expect(')');
            return make_dual(e);
        }
        bool wedge = name.starts_with("wedge");
        bool sympow = name.starts_with("sym");
        if (wedge || sympow) {
            std::string digits = name.substr(wedge ? 5 : 3);
            int k;
            if (digits.empty()) {
                k = static_cast<int>(lx.integer());
            } else {
                k = std::stoi(digits);
            }
            lx.expect('(');
            ExprPtr e = sum();
            lx.expect(')');
            return wedge ? make_wedge(k, e) : make_sym(k, e);
        }
        throw ParseError("unknown atom '" + name + "'", line, col);
    }
};

void print_rec(const ExprPtr& e, std::string& out, int parent_prec) {
    // precedence: sum 0, tensor 1, postfix/primary 2
    switch (e->kind) {
        case ExprKind::Atom:
            switch (e->atom) {
                case AtomKind::O: out += "O"; break;
                case AtomKind::UPlus: out += "U+"; break;
                case AtomKind::UMinus: out += "U-"; break;
                case AtomKind::V: out += "V"; break;
                case AtomKind::Ttilde: out += "Ttilde"; break;
                case AtomKind::Ttilde4: out += "Ttilde4"; break;
                case AtomKind::TtildeMinus: out += "TtildeMinus"; break;
                case AtomKind::F: out += "F"; break;
                case AtomKind::IrredE:
                    out += "E[";
                    for (int i = 0; i < 5; ++i) {
                        if (i) out += " ";
                        out += std::to_string(e->label.a[i]);
                    }
                    out += "]";
                    break;
            }
            break;
        case ExprKind::Twist: {
            // twist argument must be atomic-looking to re-parse as postfix
            const ExprPtr& c = e->child[0];
            bool wrap = c->kind == ExprKind::Tensor || c->kind == ExprKind::Sum;
            if (wrap) out += "(";
            print_rec(c, out, 2);
            if (wrap) out += ")";
            out += "(" + std::to_string(e->a) + "," + std::to_string(e->b) + ")";
            break;
        }
        case ExprKind::Dual:
            out += "dual(";
            print_rec(e->child[0], out, 0);
            out += ")";
            break;
        case ExprKind::Wedge:
        case ExprKind::Sym:
            out += (e->kind == ExprKind::Wedge ? "wedge" : "sym");
            out += std::to_string(e->k);
            out += "(";
            print_rec(e->child[0], out, 0);
            out += ")";
            break;
        case ExprKind::Tensor: {
            bool wrap = parent_prec > 1;
            if (wrap) out += "(";
            print_rec(e->child[0], out, 1);
            out += " * ";
            print_rec(e->child[1], out, 2);
            if (wrap) out += ")";
            break;
        }
        case ExprKind::Sum: {
            bool wrap = parent_prec > 0;
            if (wrap) out += "(";
            print_rec(e->child[0], out, 0);
            out += " + ";
            print_rec(e->child[1], out, 1);
            if (wrap) out += ")";
            break;
        }
    }
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_rec(e, out, 0);
    return out;
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case ExprKind::Atom:
            return x->atom == y->atom && (x->atom != AtomKind::IrredE || x->label == y->label);
        case ExprKind::Twist:
            if (x->a != y->a || x->b != y->b) return false;
            break;
        case ExprKind::Wedge:
        case ExprKind::Sym:
            if (x->k != y->k) return false;
            break;
        default:
            break;
    }
    if (x->child.size() != y->child.size()) return false;
    for (std::size_t i = 0; i < x->child.size(); ++i)
        if (!expr_equal(x->child[i], y->child[i])) return false;
    return true;
}

}  // namespace roofcheck
