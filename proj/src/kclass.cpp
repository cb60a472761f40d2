#include "roofcheck/kclass.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace roofcheck {

VirtualSum virtual_add(const VirtualSum& x, const VirtualSum& y, int64_t scale) {
    VirtualSum out = x;
    for (const auto& [p, m] : y) {
        auto it = out.emplace(p, 0).first;
        it->second += scale * m;
        if (it->second == 0) out.erase(it);
    }
    return out;
}

namespace {

constexpr int kTwistLo = -3, kTwistHi = 3;
constexpr std::size_t kTwistCount = (kTwistHi - kTwistLo + 1) * (kTwistHi - kTwistLo + 1);

const std::vector<mpz_class>& piece_probe_vector(const Piece& p) {
    static std::map<Piece, std::vector<mpz_class>> cache;
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    const auto& labels = KClass::probe_labels();
    std::vector<mpz_class> v(labels.size());
    for (std::size_t g = 0; g < labels.size(); g += kTwistCount) {
        const Weight& base = labels[g];
        Piece probe = piece_from_roof_label(Weight{{base[0], base[1], base[2], 0, 0}});
        PieceSum prod = piece_tensor(p, probe);
        for (std::size_t t = 0; t < kTwistCount; ++t) {
            const Weight& L = labels[g + t];
            mpz_class chi = 0;
            for (const auto& [q, m] : prod) {
                Piece tw = q;
                tw.a += L[3];
                tw.b += L[4];
                chi += m * euler_char_piece(tw);
            }
            v[g + t] = std::move(chi);
        }
    }
    return cache.emplace(p, std::move(v)).first->second;
}

}  // namespace

const std::vector<Weight>& KClass::probe_labels() {
    static const std::vector<Weight> labels = [] {
        std::vector<Weight> out;
        for (int64_t a1 = 0; a1 <= 1; ++a1)
            for (int64_t a2 = 0; a2 <= 1; ++a2)
                for (int64_t a3 = 0; a3 <= 1; ++a3)
                    for (int64_t a4 = kTwistLo; a4 <= kTwistHi; ++a4)
                        for (int64_t a5 = kTwistLo; a5 <= kTwistHi; ++a5)
                            out.push_back(Weight{{a1, a2, a3, a4, a5}});
        return out;
    }();
    return labels;
}

KClass::KClass() : v(probe_labels().size(), 0) {}

KClass KClass::of(const VirtualSum& x) {
    KClass out;
    for (const auto& [p, m] : x) {
        const auto& pv = piece_probe_vector(p);
        for (std::size_t i = 0; i < pv.size(); ++i) out.v[i] += m * pv[i];
    }
    return out;
}

bool KClass::is_zero() const {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

KClass& KClass::operator+=(const KClass& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

KClass& KClass::operator-=(const KClass& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

KClass KClass::scaled(int64_t m) const {
    KClass out = *this;
    for (auto& c : out.v) c *= m;
    return out;
}

std::string KClass::describe(std::size_t max_terms) const {
    std::size_t nonzero = 0;
    for (const auto& c : v) nonzero += c != 0;
    if (nonzero == 0) return "0";
    std::ostringstream os;
    os << "nonzero against " << nonzero << "/" << v.size() << " probes;";
    const auto& labels = probe_labels();
    std::size_t shown = 0;
    for (std::size_t i = 0; i < v.size() && shown < max_terms; ++i) {
        if (v[i] == 0) continue;
        os << " <., E" << to_string(labels[i]) << "> = " << v[i] << ";";
        ++shown;
    }
    return os.str();
}

std::vector<std::vector<mpz_class>> hermite_rows(std::vector<std::vector<mpz_class>> rows) {
    if (rows.empty()) return rows;
    const std::size_t ncol = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncol && r < rows.size(); ++c) {
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            if (rows[r][c] == 0) {
                std::swap(rows[r], rows[i]);
                continue;
            }
            mpz_class g, u, w;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), rows[r][c].get_mpz_t(),
                       rows[i][c].get_mpz_t());
            mpz_class a = rows[r][c] / g, b = rows[i][c] / g;
            for (std::size_t k = c; k < ncol; ++k) {
                mpz_class nr = u * rows[r][k] + w * rows[i][k];
                rows[i][k] = a * rows[i][k] - b * rows[r][k];
                rows[r][k] = std::move(nr);
            }
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (std::size_t k = c; k < ncol; ++k) rows[r][k] = -rows[r][k];
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t k = c; k < ncol; ++k) rows[i][k] -= q * rows[r][k];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

namespace {

std::vector<std::vector<mpz_class>> class_rows(const std::vector<KClass>& xs) {
    std::vector<std::vector<mpz_class>> rows;
    rows.reserve(xs.size());
    for (const auto& x : xs) rows.push_back(x.coords());
    return rows;
}

int modular_probe_rank(uint64_t p, std::vector<std::size_t>* pivot_cols);

// Pivot columns of the probe pairing matrix over a wordsize prime. Full rank
// mod p certifies exact independence over the integers. Every KClass vector
// is a pairing vector of an actual class against the probe family, and the
// pairing matrix has the full rank of the group, so restriction to these
// columns is injective on every vector the engine can ever build. All exact
// lattice work below happens in this fixed 80-column window, which keeps the
// Hermite reductions small.
const std::vector<std::size_t>& probe_support() {
    static const std::vector<std::size_t> support = [] {
        std::vector<std::size_t> cols;
        modular_probe_rank(9223372036854775783ull, &cols);
        return cols;
    }();
    return support;
}

std::vector<std::vector<mpz_class>> project_rows(const std::vector<KClass>& xs) {
    const auto& sup = probe_support();
    std::vector<std::vector<mpz_class>> rows;
    rows.reserve(xs.size());
    for (const auto& x : xs) {
        std::vector<mpz_class> r;
        r.reserve(sup.size());
        for (std::size_t c : sup) r.push_back(x.coords()[c]);
        rows.push_back(std::move(r));
    }
    return rows;
}

struct Echelon {
    int rank = 0;
    std::vector<std::size_t> cols;  // pivot columns, ascending
    mpz_class det;                  // determinant of the pivot submatrix, up to sign
};

// fraction-free elimination; every intermediate entry is a minor of the
// input, so the sizes stay polynomially bounded
Echelon bareiss(std::vector<std::vector<mpz_class>> m) {
    Echelon e;
    if (m.empty()) {
        e.det = 1;
        return e;
    }
    const std::size_t rows = m.size(), cols = m[0].size();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                mpz_class t = m[r][c] * m[i][k] - m[i][c] * m[r][k];
                mpz_divexact(m[i][k].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        e.cols.push_back(c);
        ++r;
    }
    e.rank = static_cast<int>(r);
    e.det = prev;
    return e;
}

// canonical Hermite form of the lattice spanned by the rows restricted to
// the given full-rank column set. den is a nonzero multiple of the lattice
// determinant there, so den * unit vectors lie in the lattice and all
// arithmetic can stay reduced modulo den.
std::vector<std::vector<mpz_class>> hermite_mod(const std::vector<std::vector<mpz_class>>& rows,
                                                const std::vector<std::size_t>& cols,
                                                const mpz_class& den) {
    const std::size_t n = cols.size();
    mpz_class d = abs(den);
    std::vector<std::vector<mpz_class>> m;
    m.reserve(rows.size() + n);
    for (const auto& row : rows) {
        std::vector<mpz_class> r(n);
        for (std::size_t j = 0; j < n; ++j) mpz_fdiv_r(r[j].get_mpz_t(), row[cols[j]].get_mpz_t(),
                                                       d.get_mpz_t());
        m.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<mpz_class> r(n, 0);
        r[j] = d;
        m.push_back(std::move(r));
    }
    auto mod_row = [&](std::vector<mpz_class>& r) {
        for (auto& x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            if (m[r][c] == 0) {
                std::swap(m[r], m[i]);
                continue;
            }
            mpz_class g, u, w;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), m[r][c].get_mpz_t(),
                       m[i][c].get_mpz_t());
            mpz_class a = m[r][c] / g, b = m[i][c] / g;
            for (std::size_t k = c; k < n; ++k) {
                mpz_class nr = u * m[r][k] + w * m[i][k];
                m[i][k] = a * m[i][k] - b * m[r][k];
                m[r][k] = std::move(nr);
            }
            mod_row(m[r]);
            mod_row(m[i]);
            if (m[r][c] == 0) m[r][c] = d;  // gcd landed on the stacked modulus
        }
        if (m[r][c] == 0) continue;
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t k = c; k < n; ++k) m[i][k] -= q * m[r][k];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

}  // namespace

bool same_lattice(const std::vector<KClass>& a, const std::vector<KClass>& b) {
    std::vector<std::vector<mpz_class>> pa = project_rows(a), pb = project_rows(b);
    Echelon ea = bareiss(pa), eb = bareiss(pb);
    if (ea.rank != eb.rank) return false;
    if (ea.rank == 0) return true;
    std::vector<std::vector<mpz_class>> stacked = pa;
    stacked.insert(stacked.end(), pb.begin(), pb.end());
    if (bareiss(stacked).rank != ea.rank) return false;  // spans differ
    // equal spans, so both lattices restrict faithfully to a's pivot columns
    std::vector<std::vector<mpz_class>> pbc;
    pbc.reserve(pb.size());
    for (const auto& row : pb) {
        std::vector<mpz_class> r;
        r.reserve(ea.cols.size());
        for (std::size_t c : ea.cols) r.push_back(row[c]);
        pbc.push_back(std::move(r));
    }
    Echelon eb2 = bareiss(pbc);
    if (eb2.rank != ea.rank) return false;
    return hermite_mod(pa, ea.cols, ea.det) == hermite_mod(pb, ea.cols, eb2.det);
}

int lattice_rank(const std::vector<KClass>& gens) { return bareiss(project_rows(gens)).rank; }

bool lattice_member(const std::vector<KClass>& gens, const KClass& target) {
    if (target.is_zero()) return true;
    std::vector<std::vector<mpz_class>> pg = project_rows(gens);
    std::vector<std::vector<mpz_class>> pt = project_rows({target});
    Echelon eg = bareiss(pg);
    if (eg.rank == 0) return false;
    std::vector<std::vector<mpz_class>> stacked = pg;
    stacked.push_back(pt[0]);
    if (bareiss(stacked).rank != eg.rank) return false;  // outside the span
    std::vector<std::vector<mpz_class>> h = hermite_mod(pg, eg.cols, eg.det);
    std::vector<mpz_class> v(eg.cols.size());
    for (std::size_t j = 0; j < eg.cols.size(); ++j) v[j] = pt[0][eg.cols[j]];
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (v[i] == 0) continue;
        if (!mpz_divisible_p(v[i].get_mpz_t(), h[i][i].get_mpz_t())) return false;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), v[i].get_mpz_t(), h[i][i].get_mpz_t());
        for (std::size_t k = i; k < v.size(); ++k) v[k] -= q * h[i][k];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

namespace {

std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m) {
    const std::size_t R = m.size();
    const std::size_t C = R ? m[0].size() : 0;
    std::vector<mpz_class> inv;
    std::size_t t = 0;
    while (t < R && t < C) {
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < R && !found; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (m[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                    break;
                }
        if (!found) break;
        std::swap(m[t], m[pi]);
        if (pj != t)
            for (std::size_t i = 0; i < R; ++i) std::swap(m[i][t], m[i][pj]);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class g, u, w;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), m[t][t].get_mpz_t(),
                           m[i][t].get_mpz_t());
                mpz_class a = m[t][t] / g, b = m[i][t] / g;
                for (std::size_t k = t; k < C; ++k) {
                    mpz_class nt = u * m[t][k] + w * m[i][k];
                    m[i][k] = a * m[i][k] - b * m[t][k];
                    m[t][k] = std::move(nt);
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class g, u, w;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), m[t][t].get_mpz_t(),
                           m[t][j].get_mpz_t());
                mpz_class a = m[t][t] / g, b = m[t][j] / g;
                for (std::size_t i = t; i < R; ++i) {
                    mpz_class nt = u * m[i][t] + w * m[i][j];
                    m[i][j] = a * m[i][j] - b * m[i][t];
                    m[i][t] = std::move(nt);
                }
                dirty = true;  // column work may refill the pivot column
            }
        }
        inv.push_back(abs(m[t][t]));
        ++t;
    }
    // normalize the divisibility chain; diag(a, b) and diag(gcd, lcm) present
    // the same group
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < inv.size(); ++i) {
            if (inv[i + 1] % inv[i] == 0) continue;
            mpz_class g = gcd(inv[i], inv[i + 1]);
            mpz_class l = inv[i] / g * inv[i + 1];
            inv[i] = g;
            inv[i + 1] = l;
            changed = true;
        }
    }
    return inv;
}

}  // namespace

LatticeSummary lattice_summary(const std::vector<KClass>& gens) {
    auto h = hermite_rows(class_rows(gens));
    LatticeSummary out;
    out.rank = static_cast<int>(h.size());
    out.invariant_factors = smith_invariants(std::move(h));
    return out;
}

namespace {

// rank of the probe pairing matrix modulo a wordsize prime; a full-rank
// pivot set found mod p is exactly independent over the integers, so the
// result is a certified lower bound for the true rank
int modular_probe_rank(uint64_t p, std::vector<std::size_t>* pivot_cols) {
    const auto& labels = KClass::probe_labels();
    const std::size_t n = labels.size();
    std::vector<std::vector<uint64_t>> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = piece_probe_vector(piece_from_roof_label(labels[i]));
        m[i].resize(n);
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = mpz_fdiv_ui(row[j].get_mpz_t(), p);
    }
    auto mulmod = [p](uint64_t a, uint64_t b) {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (std::size_t c = 0; c < n && rank < static_cast<int>(n); ++c) {
        std::size_t piv = rank;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[rank], m[piv]);
        uint64_t inv = powmod(m[rank][c], p - 2);
        for (std::size_t i = rank + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            uint64_t f = mulmod(m[i][c], inv);
            for (std::size_t k = c; k < n; ++k)
                m[i][k] = (m[i][k] + p - mulmod(f, m[rank][k])) % p;
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++rank;
    }
    return rank;
}

}  // namespace

int probe_class_rank() {
    int best = 0;
    for (uint64_t p : {uint64_t{9223372036854775783ull}, uint64_t{2305843009213693951ull}}) {
        best = std::max(best, modular_probe_rank(p, nullptr));
        if (best >= 80) break;
    }
    return best;
}

}  // namespace roofcheck
