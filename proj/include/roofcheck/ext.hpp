#pragma once

#include <string>

#include "roofcheck/sequences.hpp"

namespace roofcheck {

// Ext between divisor pushforwards (equivalently, between pullbacks in the
// hyperplane-section model; both reduce to the same two cohomology groups on
// the roof). certified_zero means both ingredient groups vanish outright.
struct ExtTable {
    CohTable table;
    bool certified_zero = false;

    bool operator==(const ExtTable&) const = default;
};

std::string to_string(const ExtTable& t);

// Let A = H(F^v (x) G) and B = H(F^v (x) G(-1,-1)). The defining long exact
// sequence gives Ext^m = A^m + B^(m-1) whenever the supports of A and of B
// shifted by +1 never meet in adjacent degrees; otherwise Undetermined.
ExtTable ext_divisor(const ExprPtr& F, const ExprPtr& G);

// chi(A) - chi(B); always exact, agrees with the alternating sum of any
// determinate ext_divisor table
mpz_class euler_pairing(const ExprPtr& F, const ExprPtr& G);

}  // namespace roofcheck
