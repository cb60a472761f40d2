#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "roofcheck/expr.hpp"
#include "roofcheck/lr.hpp"
#include "roofcheck/weights.hpp"

namespace roofcheck {

// The three tautological families a product piece can involve. V4 is the
// rank-4 bundle on the roof; UPlus / UMinus are the rank-5 bundles pulled
// back from the two projections.
enum Family : int { V4 = 0, UP = 1, UM = 2 };

// One completely-reducible product: a Schur functor of each dual tautological
// bundle (empty = trivial factor) times a line twist O(a,b). Canonical form:
// each Schur weight is a partition with last entry 0 (determinant powers are
// folded into the twist).
struct Piece {
    std::array<GLWeight, 3> f{};
    int64_t a = 0, b = 0;

    auto operator<=>(const Piece&) const = default;

    bool is_line() const { return f[0].empty() && f[1].empty() && f[2].empty(); }
    bool pure(Family fam) const;
};

// canonicalize a raw Schur weight for the given family, folding determinant
// powers into the twist
Piece make_piece(Family fam, GLWeight w, int64_t a, int64_t b);
Piece make_line(int64_t a, int64_t b);

// formal non-negative combination of pieces
using PieceSum = std::map<Piece, int64_t>;

PieceSum piece_tensor(const Piece& x, const Piece& y);
PieceSum sum_tensor(const PieceSum& x, const PieceSum& y);
PieceSum sum_add(const PieceSum& x, const PieceSum& y);
PieceSum sum_twist(const PieceSum& x, int64_t a, int64_t b);
Piece piece_dual(const Piece& p);
PieceSum sum_dual(const PieceSum& x);

mpz_class piece_rank(const Piece& p);
mpz_class sum_rank(const PieceSum& x);

// full decomposition of an expression over atoms O, U+, U-, V, E[...];
// composite atoms (Ttilde, Ttilde4, F) are rejected here and handled by the
// sequence rewriter
PieceSum normalize(const ExprPtr& e);

// weight label of a pure-V4 piece as an irreducible on the roof
Weight roof_label(const Piece& p);
// weight label of a pure-UPlus piece with b = 0 (bundle pulled back from the
// plus side), and the minus-side mirror
std::optional<Weight> spinor_plus_label(const Piece& p);
std::optional<Weight> spinor_minus_label(const Piece& p);

// inverse dictionary: roof irreducible from its weight label
Piece piece_from_roof_label(const Weight& label);

// Pieri resolution of the UPlus / UMinus factors into pure-V4 graded pieces.
// Returned filtration is ordered subobject-first (descending depth); depth =
// total power of the sub line bundles O(1,-1) / O(-1,1).
std::vector<std::pair<int, PieceSum>> v4_filtration(const Piece& p);

// same resolution applied to one side only; the other side's factor is kept
// on every grade
std::vector<std::pair<int, PieceSum>> side_v4_filtration(const Piece& p, Family side);

}  // namespace roofcheck
