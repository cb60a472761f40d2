#pragma once

#include <string>
#include <vector>

#include "roofcheck/bundles.hpp"
#include "roofcheck/cohomology.hpp"

namespace roofcheck {

// Signed piece combinations are Grothendieck-group elements; PieceSum already
// carries integer multiplicities, so the alias just marks intent.
using VirtualSum = PieceSum;

VirtualSum virtual_add(const VirtualSum& x, const VirtualSum& y, int64_t scale = 1);

// A K-theory class represented by its Euler pairings against a fixed family
// of irreducible probe bundles. The probe family spans the full lattice
// (probe_class_rank() checks this), so equal vectors mean equal classes.
class KClass {
public:
    KClass();

    static const std::vector<Weight>& probe_labels();
    static KClass of(const VirtualSum& x);

    bool operator==(const KClass&) const = default;
    bool is_zero() const;
    KClass& operator+=(const KClass& o);
    KClass& operator-=(const KClass& o);
    friend KClass operator+(KClass x, const KClass& y) { return x += y; }
    friend KClass operator-(KClass x, const KClass& y) { return x -= y; }
    KClass scaled(int64_t m) const;

    const std::vector<mpz_class>& coords() const { return v; }
    // short human-readable description of a (usually nonzero) class
    std::string describe(std::size_t max_terms = 3) const;

private:
    std::vector<mpz_class> v;
};

// row-style Hermite normal form of the lattice spanned by the given rows;
// zero rows dropped, pivots positive, entries above each pivot reduced
std::vector<std::vector<mpz_class>> hermite_rows(std::vector<std::vector<mpz_class>> rows);

bool same_lattice(const std::vector<KClass>& a, const std::vector<KClass>& b);

// exact rank of the lattice spanned by the given classes
int lattice_rank(const std::vector<KClass>& gens);

// exact membership of target in the integer span of gens
bool lattice_member(const std::vector<KClass>& gens, const KClass& target);

struct LatticeSummary {
    int rank = 0;
    // Smith invariant factors of the generator matrix, divisibility order
    std::vector<mpz_class> invariant_factors;

    bool operator==(const LatticeSummary&) const = default;
};

LatticeSummary lattice_summary(const std::vector<KClass>& gens);

// exact rank of the lattice spanned by the probe classes themselves
int probe_class_rank();

}  // namespace roofcheck
