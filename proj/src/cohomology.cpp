#include "roofcheck/cohomology.hpp"

#include <sstream>
#include <stdexcept>

namespace roofcheck {

mpz_class CohTable::chi() const {
    if (undetermined) throw std::logic_error("chi of an undetermined table");
    mpz_class c = 0;
    for (const auto& [d, v] : h) c += (d % 2) ? -v : v;
    return c;
}

std::string to_string(const CohTable& t) {
    if (t.undetermined) return "undetermined";
    if (t.h.empty()) return "0";
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [d, v] : t.h) {
        if (!first) os << ", ";
        first = false;
        os << d << ": " << v;
    }
    os << "}";
    return os.str();
}

CohTable table_shift(const CohTable& t, int k) {
    CohTable out;
    out.undetermined = t.undetermined;
    for (const auto& [d, v] : t.h) out.h[d + k] = v;
    return out;
}

CohTable table_add(const CohTable& x, const CohTable& y) {
    CohTable out;
    out.undetermined = x.undetermined || y.undetermined;
    if (out.undetermined) return out;
    out.h = x.h;
    for (const auto& [d, v] : y.h) {
        auto it = out.h.emplace(d, 0).first;
        it->second += v;
        if (it->second == 0) out.h.erase(it);
    }
    return out;
}

CohTable table_scale(const CohTable& x, int64_t m) {
    if (m == 0) return {};
    CohTable out;
    out.undetermined = x.undetermined;
    for (const auto& [d, v] : x.h) out.h[d] = m * v;
    return out;
}

CohTable bott_table(const Weight& label) {
    CohomologyResult r = bott(label);
    CohTable t;
    if (!r.zero) t.h[r.degree] = r.dim;
    return t;
}

CohTable splice_filtration(const std::vector<CohTable>& sub_first) {
    CohTable out;
    for (const auto& t : sub_first)
        if (t.undetermined) {
            out.undetermined = true;
            return out;
        }
    for (std::size_t i = 0; i < sub_first.size(); ++i)
        for (std::size_t j = i + 1; j < sub_first.size(); ++j)
            for (const auto& [d, v] : sub_first[j].h)
                if (sub_first[i].h.count(d + 1)) {
                    out.undetermined = true;
                    return out;
                }
    for (const auto& t : sub_first) out = table_add(out, t);
    return out;
}

namespace {

CohTable filtration_table(const Piece& p) {
    std::vector<CohTable> layers;
    for (const auto& [depth, grade] : v4_filtration(p)) {
        CohTable t;
        for (const auto& [q, m] : grade)
            t = table_add(t, table_scale(bott_table(roof_label(q)), m));
        layers.push_back(std::move(t));
    }
    return splice_filtration(layers);
}

}  // namespace

// The fiber direction carries S_nu(V4 dual) twisted by the relative
// hyperplane power; the rank-5 Bott walk sorts that weight into a Schur
// functor of the side's dual bundle, concentrated in one degree, and the
// spinor-side Bott walk finishes on the base. No splicing happens, so the
// table is always determinate.
CohTable projection_table(const Piece& p, Family side) {
    GLWeight nu = p.f[V4].empty() ? GLWeight{0, 0, 0, 0} : p.f[V4];
    // O(a,b) = Q^a (x) pullback O(a+b) over the minus side, where Q = O(1,-1)
    // is the relative hyperplane; mirrored over the plus side
    int64_t fiber = side == UM ? -p.a : -p.b;
    std::array<int64_t, 5> v{nu[0] + 4, nu[1] + 3, nu[2] + 2, nu[3] + 1, fiber};
    int ell = 0;
    for (int i = 0; i < 4; ++i) {
        if (v[i] == v[4]) return {};
        if (v[i] < v[4]) ++ell;
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    GLWeight kappa(5);
    for (int i = 0; i < 5; ++i) kappa[i] = v[i] - (4 - i);
    Piece pushed = make_piece(side, std::move(kappa), side == UM ? 0 : p.a + p.b,
                              side == UM ? p.a + p.b : 0);
    PieceSum prod{{pushed, 1}};
    if (!p.f[side].empty()) {
        Piece fac;
        fac.f[side] = p.f[side];
        prod = piece_tensor(fac, pushed);
    }
    CohTable out;
    for (const auto& [q, m] : prod) {
        auto label = side == UM ? spinor_minus_label(q) : spinor_plus_label(q);
        if (!label) throw std::logic_error("projection_table: pushed piece is not pure");
        out = table_add(out, table_scale(bott_table(*label), m));
    }
    return table_shift(out, ell);
}

namespace {

// mixed piece: resolve one side's factor into V4 grades, push every grade
// down the other projection, splice
CohTable graded_projection(const Piece& p, Family resolve) {
    const Family keep = resolve == UP ? UM : UP;
    std::vector<CohTable> layers;
    for (const auto& [d, grade] : side_v4_filtration(p, resolve)) {
        CohTable t;
        for (const auto& [q, m] : grade)
            t = table_add(t, table_scale(projection_table(q, keep), m));
        layers.push_back(std::move(t));
    }
    return splice_filtration(layers);
}

}  // namespace

bool leray_vanishing(const Piece& p) {
    if (p.is_line() || !p.f[V4].empty()) return false;
    if (p.f[UM].empty()) return p.b >= -4 && p.b <= -1;
    if (p.f[UP].empty()) return p.a >= -4 && p.a <= -1;
    return false;
}

CohTable cohomology_piece(const Piece& p) {
    static std::map<Piece, CohTable> cache;
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    CohTable result;
    if (p.f[UP].empty() && p.f[UM].empty()) {
        result = bott_table(roof_label(p));
    } else if (p.f[UM].empty() && p.f[V4].empty() && p.b == 0) {
        // pulled back from the plus side
        result = bott_table(*spinor_plus_label(p));
    } else if (leray_vanishing(p)) {
        result = {};
    } else if (p.f[UP].empty() && p.f[V4].empty() && p.a == 0) {
        result = bott_table(*spinor_minus_label(p));
    } else if (p.f[UP].empty() || p.f[UM].empty()) {
        result = projection_table(p, p.f[UP].empty() ? UM : UP);
    } else {
        result = graded_projection(p, UP);
        if (result.undetermined) result = graded_projection(p, UM);
        if (result.undetermined) result = filtration_table(p);
    }
    cache.emplace(p, result);
    return result;
}

CohTable cohomology_sum(const PieceSum& s) {
    CohTable out;
    for (const auto& [p, m] : s) {
        if (m < 0) throw std::invalid_argument("cohomology of a virtual sum");
        out = table_add(out, table_scale(cohomology_piece(p), m));
    }
    return out;
}

mpz_class euler_char_piece(const Piece& p) {
    static std::map<Piece, mpz_class> cache;
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    mpz_class chi = 0;
    for (const auto& [depth, grade] : v4_filtration(p))
        for (const auto& [q, m] : grade) chi += m * bott_table(roof_label(q)).chi();
    cache.emplace(p, chi);
    return chi;
}

mpz_class euler_char(const PieceSum& s) {
    mpz_class chi = 0;
    for (const auto& [p, m] : s) chi += m * euler_char_piece(p);
    return chi;
}

}  // namespace roofcheck
