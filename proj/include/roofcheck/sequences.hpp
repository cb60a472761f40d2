#pragma once

#include <string>
#include <vector>

#include "roofcheck/cohomology.hpp"
#include "roofcheck/expr.hpp"
#include "roofcheck/kclass.hpp"

namespace roofcheck {

// A registered exact complex 0 -> terms[0] -> ... -> terms.back() -> 0.
// resolves_subvariety marks augmented Koszul complexes whose missing final
// term is a rank-zero sheaf: ranks and Euler characteristics still sum to
// zero, but the K-class alternating sum equals minus the resolved class.
struct Sequence {
    std::string id;
    std::vector<ExprPtr> terms;
    bool resolves_subvariety = false;
};

const std::vector<Sequence>& sequence_registry();
const Sequence& find_sequence(const std::string& id);

Sequence twisted(const Sequence& s, int64_t a, int64_t b);
Sequence dualized(const Sequence& s);

// per-sequence invariant violations (alternating rank, Euler characteristic,
// K-class); empty result means the registry is consistent
std::vector<std::string> validate_registry();

bool has_composite(const ExprPtr& e);

// K-group expansion of an arbitrary expression; composite atoms are expanded
// through their defining sequences
VirtualSum virtual_pieces(const ExprPtr& e);
mpz_class rank_of_expr(const ExprPtr& e);
mpz_class euler_of_expr(const ExprPtr& e);
KClass kclass_of_expr(const ExprPtr& e);

// Iterated-extension presentation of an expression, graded pieces ordered
// subobject-first. Composite atoms are expanded through their primary
// sequence, so the result is deterministic. Duals reverse the order;
// composites under a Schur power are rejected.
std::vector<PieceSum> filtration_of(const ExprPtr& e);

// Cohomology of an arbitrary expression. Composite atoms are rewritten
// through every registered route in registry order; the first route whose
// spliced long exact sequence is determinate wins, and exhausting all routes
// yields an undetermined table. Euler characteristics stay exact throughout.
CohTable cohomology_of_expr(const ExprPtr& e);

// tables produced by each top-level route choice for the first composite
// atom (empty when the expression has none); used to check that route order
// cannot change a determinate verdict
std::vector<CohTable> top_route_tables(const ExprPtr& e);

struct LemmaCase {
    std::string bundle;
    CohTable table;     // computed
    CohTable expected;  // frozen engine value; pass means table == expected
    bool pass = false;
    // set when the declared reference value disagrees with the frozen engine
    // value; the case still passes on self-consistency
    bool discrepancy = false;
};

struct LemmaReport {
    std::string id;
    bool pass = false;
    std::vector<LemmaCase> cases;
    std::vector<std::string> notes;
};

std::vector<std::string> lemma_ids();
LemmaReport run_lemma(const std::string& id);

}  // namespace roofcheck
