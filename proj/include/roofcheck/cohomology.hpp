#pragma once

#include <map>
#include <string>
#include <vector>

#include "roofcheck/bott.hpp"
#include "roofcheck/bundles.hpp"

namespace roofcheck {

// Cohomology table of a bundle: nonzero degree -> dimension. A table may come
// out of a filtration whose connecting maps cannot be ruled out; it is then
// flagged undetermined and carries no ranks (the Euler characteristic is
// still exact, computed separately).
struct CohTable {
    bool undetermined = false;
    std::map<int, mpz_class> h;

    bool operator==(const CohTable&) const = default;

    bool is_zero() const { return !undetermined && h.empty(); }
    mpz_class chi() const;
};

std::string to_string(const CohTable& t);

CohTable table_shift(const CohTable& t, int k);
CohTable table_add(const CohTable& x, const CohTable& y);
CohTable table_scale(const CohTable& x, int64_t m);

// exact table of one irreducible piece given its weight label
CohTable bott_table(const Weight& label);

// Splice the tables of filtration layers, ordered subobject-first. The result
// is the degreewise sum unless some deeper layer could absorb a connecting
// map: that happens when a shallower layer is nonzero in a degree d and a
// deeper one in d+1, and then the table is undetermined.
CohTable splice_filtration(const std::vector<CohTable>& sub_first);

// true when the piece is a pullback from one side twisted into the acyclic
// fiberwise range of the opposite projection (a projective-space fiber sees
// O(-1)..O(-4)); certifies vanishing without a weight walk
bool leray_vanishing(const Piece& p);

// Exact pushforward along one projection for a piece with no factor from the
// opposite side. The fiber direction joins the rank-4 factor in a rank-5
// weight sorted against rho; a repeat kills the piece, otherwise it lands in
// a Schur functor of the side's bundle shifted by the sort length. Always
// determinate.
CohTable projection_table(const Piece& p, Family side);

CohTable cohomology_piece(const Piece& p);
CohTable cohomology_sum(const PieceSum& s);

// exact regardless of splice outcomes
mpz_class euler_char_piece(const Piece& p);
mpz_class euler_char(const PieceSum& s);

}  // namespace roofcheck
