#include "roofcheck/bundles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace roofcheck {

namespace {

int family_rank(Family fam) { return fam == V4 ? 4 : 5; }

// twist of the determinant of the dual tautological bundle
std::pair<int64_t, int64_t> det_twist(Family fam) {
    switch (fam) {
        case V4: return {1, 1};
        case UP: return {2, 0};
        default: return {0, 2};
    }
}

bool all_zero(const GLWeight& w) {
    return std::all_of(w.begin(), w.end(), [](int64_t x) { return x == 0; });
}

}  // namespace

bool Piece::pure(Family fam) const {
    for (int i = 0; i < 3; ++i)
        if (i != fam && !f[i].empty()) return false;
    return !f[fam].empty();
}

Piece make_piece(Family fam, GLWeight w, int64_t a, int64_t b) {
    if (!gl_dominant(w)) throw std::invalid_argument("make_piece: non-dominant Schur weight");
    if (!w.empty() && static_cast<int>(w.size()) != family_rank(fam))
        throw std::invalid_argument("make_piece: weight length does not match family rank");
    Piece p;
    p.a = a;
    p.b = b;
    if (!w.empty()) {
        int64_t c = w.back();
        if (c != 0)
            for (auto& x : w) x -= c;
        auto [da, db] = det_twist(fam);
        p.a += c * da;
        p.b += c * db;
        if (!all_zero(w)) p.f[fam] = std::move(w);
    }
    return p;
}

Piece make_line(int64_t a, int64_t b) {
    Piece p;
    p.a = a;
    p.b = b;
    return p;
}

namespace {

void add_to(PieceSum& dst, const Piece& p, int64_t mult) {
    auto it = dst.emplace(p, 0).first;
    it->second += mult;
    if (it->second == 0) dst.erase(it);
}

}  // namespace

PieceSum piece_tensor(const Piece& x, const Piece& y) {
    PieceSum acc{{make_line(x.a + y.a, x.b + y.b), 1}};
    for (int fi = 0; fi < 3; ++fi) {
        Family fam = static_cast<Family>(fi);
        const GLWeight& xw = x.f[fi];
        const GLWeight& yw = y.f[fi];
        if (xw.empty() && yw.empty()) continue;
        PieceSum next;
        if (xw.empty() || yw.empty()) {
            const GLWeight& w = xw.empty() ? yw : xw;
            for (const auto& [p, m] : acc) {
                Piece q = make_piece(fam, w, p.a, p.b);
                for (int j = 0; j < 3; ++j)
                    if (j != fi) q.f[j] = p.f[j];
                add_to(next, q, m);
            }
        } else {
            GLMultiset prod = lr_tensor(xw, yw);
            for (const auto& [p, m] : acc)
                for (const auto& [w, lm] : prod) {
                    Piece q = make_piece(fam, w, p.a, p.b);
                    for (int j = 0; j < 3; ++j)
                        if (j != fi) q.f[j] = p.f[j];
                    add_to(next, q, m * lm);
                }
        }
        acc = std::move(next);
    }
    return acc;
}

PieceSum sum_tensor(const PieceSum& x, const PieceSum& y) {
    PieceSum out;
    for (const auto& [px, mx] : x)
        for (const auto& [py, my] : y)
            for (const auto& [p, m] : piece_tensor(px, py)) add_to(out, p, mx * my * m);
    return out;
}

PieceSum sum_add(const PieceSum& x, const PieceSum& y) {
    PieceSum out = x;
    for (const auto& [p, m] : y) add_to(out, p, m);
    return out;
}

PieceSum sum_twist(const PieceSum& x, int64_t a, int64_t b) {
    PieceSum out;
    for (const auto& [p, m] : x) {
        Piece q = p;
        q.a += a;
        q.b += b;
        out[q] = m;
    }
    return out;
}

Piece piece_dual(const Piece& p) {
    Piece q = make_line(-p.a, -p.b);
    for (int fi = 0; fi < 3; ++fi) {
        if (p.f[fi].empty()) continue;
        Piece c = make_piece(static_cast<Family>(fi), gl_dual(p.f[fi]), q.a, q.b);
        q.a = c.a;
        q.b = c.b;
        q.f[fi] = c.f[fi];
    }
    return q;
}

PieceSum sum_dual(const PieceSum& x) {
    PieceSum out;
    for (const auto& [p, m] : x) add_to(out, piece_dual(p), m);
    return out;
}

mpz_class piece_rank(const Piece& p) {
    mpz_class r = 1;
    for (int fi = 0; fi < 3; ++fi)
        if (!p.f[fi].empty()) r *= gl_dim(p.f[fi]);
    return r;
}

mpz_class sum_rank(const PieceSum& x) {
    mpz_class r = 0;
    for (const auto& [p, m] : x) r += m * piece_rank(p);
    return r;
}

namespace {

PieceSum schur_power(bool wedge, int k, const PieceSum& base) {
    if (k == 0) return {{make_line(0, 0), 1}};
    if (k == 1) return base;
    if (k < 0) throw std::invalid_argument("schur power: negative exponent");
    if (base.size() != 1 || base.begin()->second != 1)
        throw std::invalid_argument("schur power: operand must be a single tautological factor");
    const Piece& p = base.begin()->first;
    if (p.is_line()) {
        if (wedge) return {};  // k >= 2 exceeds rank 1
        return {{make_line(k * p.a, k * p.b), 1}};
    }
    Family fam = V4;
    int nfac = 0;
    for (int fi = 0; fi < 3; ++fi)
        if (!p.f[fi].empty()) {
            fam = static_cast<Family>(fi);
            ++nfac;
        }
    if (nfac != 1)
        throw std::invalid_argument("schur power: operand must be a single tautological factor");
    const int r = family_rank(fam);
    const GLWeight& w = p.f[fam];
    if (wedge && k > r) return {};
    if (w == wedge_weight(1, r)) {
        // standard dual tautological bundle twisted by O(a,b)
        GLWeight res = wedge ? wedge_weight(k, r) : sym_weight(k, r);
        return {{make_piece(fam, res, k * p.a, k * p.b), 1}};
    }
    if (w == wedge_weight(r - 1, r)) {
        // the un-dualized tautological bundle times det of the dual, twisted
        auto [da, db] = det_twist(fam);
        GLWeight res = gl_dual(wedge ? wedge_weight(k, r) : sym_weight(k, r));
        return {{make_piece(fam, res, k * (p.a + da), k * (p.b + db)), 1}};
    }
    throw std::invalid_argument("schur power: operand is not a tautological bundle");
}

}  // namespace

PieceSum normalize(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Atom:
            switch (e->atom) {
                case AtomKind::O: return {{make_line(0, 0), 1}};
                case AtomKind::V: return {{make_piece(V4, gl_dual(wedge_weight(1, 4)), 0, 0), 1}};
                case AtomKind::UPlus:
                    return {{make_piece(UP, gl_dual(wedge_weight(1, 5)), 0, 0), 1}};
                case AtomKind::UMinus:
                    return {{make_piece(UM, gl_dual(wedge_weight(1, 5)), 0, 0), 1}};
                case AtomKind::IrredE: return {{piece_from_roof_label(e->label), 1}};
                default:
                    throw std::domain_error("normalize: composite atom needs sequence rewriting");
            }
        case ExprKind::Twist: return sum_twist(normalize(e->child[0]), e->a, e->b);
        case ExprKind::Dual: return sum_dual(normalize(e->child[0]));
        case ExprKind::Tensor: return sum_tensor(normalize(e->child[0]), normalize(e->child[1]));
        case ExprKind::Sum: return sum_add(normalize(e->child[0]), normalize(e->child[1]));
        case ExprKind::Wedge:
        case ExprKind::Sym:
            if (e->k == 0) return {{make_line(0, 0), 1}};
            return schur_power(e->kind == ExprKind::Wedge, e->k, normalize(e->child[0]));
    }
    throw std::logic_error("normalize: unreachable");
}

Weight roof_label(const Piece& p) {
    if (!p.f[UP].empty() || !p.f[UM].empty())
        throw std::invalid_argument("roof_label: piece is not pure V4");
    GLWeight w = p.f[V4].empty() ? GLWeight{0, 0, 0, 0} : p.f[V4];
    return Weight{{w[0] - w[1], w[1] - w[2], w[2] - w[3], w[3] + p.a, w[3] + p.b}};
}

std::optional<Weight> spinor_plus_label(const Piece& p) {
    if (!p.f[V4].empty() || !p.f[UM].empty() || p.b != 0) return std::nullopt;
    GLWeight w = p.f[UP].empty() ? GLWeight{0, 0, 0, 0, 0} : p.f[UP];
    return Weight{{w[0] - w[1], w[1] - w[2], w[2] - w[3], w[3] + w[4] + p.a, w[3] - w[4]}};
}

std::optional<Weight> spinor_minus_label(const Piece& p) {
    if (!p.f[V4].empty() || !p.f[UP].empty() || p.a != 0) return std::nullopt;
    GLWeight w = p.f[UM].empty() ? GLWeight{0, 0, 0, 0, 0} : p.f[UM];
    return Weight{{w[0] - w[1], w[1] - w[2], w[2] - w[3], w[3] - w[4], w[3] + w[4] + p.b}};
}

Piece piece_from_roof_label(const Weight& label) {
    const auto& l = label.a;
    if (l[0] < 0 || l[1] < 0 || l[2] < 0)
        throw std::invalid_argument("roof irreducible needs non-negative first three coordinates");
    GLWeight w{l[0] + l[1] + l[2], l[1] + l[2], l[2], 0};
    return make_piece(V4, std::move(w), l[3], l[4]);
}

namespace {

// all subdiagrams nu interlacing w (w_i >= nu_i >= w_{i+1}), i.e. w/nu a
// horizontal strip; returns (strip size, nu)
std::vector<std::pair<int, GLWeight>> horizontal_strips(const GLWeight& w) {
    const std::size_t n = w.size();
    int64_t wsum = std::accumulate(w.begin(), w.end(), int64_t{0});
    std::vector<std::pair<int, GLWeight>> out;
    GLWeight nu(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) nu[i] = w[i + 1];
    while (true) {
        int64_t nsum = std::accumulate(nu.begin(), nu.end(), int64_t{0});
        out.emplace_back(static_cast<int>(wsum - nsum), nu);
        std::size_t i = 0;
        while (i + 1 < n && nu[i] == w[i]) {
            nu[i] = w[i + 1];
            ++i;
        }
        if (i + 1 >= n) break;
        ++nu[i];
    }
    return out;
}

}  // namespace

std::vector<std::pair<int, PieceSum>> side_v4_filtration(const Piece& p, Family side) {
    if (side == V4) throw std::invalid_argument("side_v4_filtration: side must be UP or UM");
    if (p.f[side].empty()) return {{0, {{p, 1}}}};
    const Family other = side == UP ? UM : UP;
    std::map<int, PieceSum> graded;
    for (const auto& [d, nu] : horizontal_strips(p.f[side])) {
        // sub line O(1,-1) for the plus factor, O(-1,1) for the minus one
        int sgn = side == UP ? 1 : -1;
        Piece base = make_line(p.a + sgn * d, p.b - sgn * d);
        base.f[other] = p.f[other];
        PieceSum acc{{base, 1}};
        auto fold = [&acc](const GLWeight& w) {
            if (w.empty() || all_zero(w)) return;
            PieceSum next;
            for (const auto& [q, m] : acc)
                for (const auto& [r, lm] : piece_tensor(q, make_piece(V4, w, 0, 0)))
                    add_to(next, r, m * lm);
            acc = std::move(next);
        };
        fold(nu);
        if (!p.f[V4].empty()) fold(p.f[V4]);
        for (const auto& [q, m] : acc) add_to(graded[d], q, m);
    }
    std::vector<std::pair<int, PieceSum>> out;
    for (auto it = graded.rbegin(); it != graded.rend(); ++it)
        out.emplace_back(it->first, std::move(it->second));
    return out;
}

std::vector<std::pair<int, PieceSum>> v4_filtration(const Piece& p) {
    // depth-graded pieces, higher depth = deeper subobject
    std::map<int, PieceSum> graded;
    const bool has_up = !p.f[UP].empty();
    const bool has_um = !p.f[UM].empty();
    std::vector<std::pair<int, GLWeight>> up_strips, um_strips;
    if (has_up) up_strips = horizontal_strips(p.f[UP]);
    if (has_um) um_strips = horizontal_strips(p.f[UM]);
    if (!has_up) up_strips = {{0, {}}};
    if (!has_um) um_strips = {{0, {}}};

    for (const auto& [du, nu_u] : up_strips)
        for (const auto& [dm, nu_m] : um_strips) {
            // sub line bundles: O(1,-1)^du from the plus side, O(-1,1)^dm
            // from the minus side
            Piece base = make_line(p.a + du - dm, p.b - du + dm);
            PieceSum acc{{base, 1}};
            auto fold = [&acc](const GLWeight& w) {
                if (w.empty() || all_zero(w)) return;
                PieceSum next;
                for (const auto& [q, m] : acc)
                    for (const auto& [r, lm] : piece_tensor(q, make_piece(V4, w, 0, 0)))
                        add_to(next, r, m * lm);
                acc = std::move(next);
            };
            GLWeight v4_from_up = nu_u, v4_from_um = nu_m;
            fold(v4_from_up);
            fold(v4_from_um);
            if (!p.f[V4].empty()) fold(p.f[V4]);
            for (const auto& [q, m] : acc) add_to(graded[du + dm], q, m);
        }

    std::vector<std::pair<int, PieceSum>> out;
    for (auto it = graded.rbegin(); it != graded.rend(); ++it)
        out.emplace_back(it->first, std::move(it->second));
    return out;
}

}  // namespace roofcheck
