#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "roofcheck/ext.hpp"

namespace roofcheck {

// One tracked object of the semiorthogonal complement. base is a twist-free
// symbol; the bundle every Ext computation sees is base twisted by the grid
// position, so a Serre move only changes (col, row).
struct ChessObject {
    enum class Prov { Pushforward, Pullback };

    std::string id;
    ExprPtr base;
    int col = 0;
    int row = 0;
    Prov prov = Prov::Pushforward;
};

ExprPtr effective(const ChessObject& o);
std::string show(const ChessObject& o);

struct Collection {
    std::vector<ChessObject> objects;

    int find(const std::string& id) const;  // index, -1 when absent
    const ChessObject& at(const std::string& id) const;
};

// Verification record for one scripted step. pairs holds one row per
// required Ext direction: (source, target, verdict) with verdict one of
// certified-zero / nonzero / undetermined / derived-zero.
struct Certificate {
    std::string step;
    std::string kind;  // orthogonality | mutation | exchange | serre | insert
    std::vector<std::array<std::string, 3>> pairs;
    std::vector<std::string> notes;
    std::string kclass_delta;  // described K mismatch, empty when consistent
    bool lattice_ok = true;
    bool pass = false;
};

// citation of a registered sequence instance: find_sequence(id), optionally
// dualized, then twisted by (a, b)
struct SeqUse {
    std::string id;
    long long a = 0;
    long long b = 0;
    bool dual = false;
};

std::vector<ExprPtr> seq_use_terms(const SeqUse& u);

// where a rewritten object lands in the order
struct Placement {
    enum class Kind { Stay, Before, After } kind = Kind::Stay;
    std::string anchor;
};

// group of boundary cells moved by the Serre functor inside a declared
// reference layout (Step 5.3-style identification)
struct SerreMove {
    std::vector<std::string> ids;
    bool to_start = false;
};

// Every required ordered pair must be certified-zero. When a pair involving
// a rank-5 tautological subbundle cannot be settled directly, vanishing
// against O and against the dual bundle at the same twist settles it through
// the defining rank-5/10/5 sequence (derived-zero verdict).
Certificate check_orthogonal(const Collection& c, const std::vector<std::string>& A,
                             const std::vector<std::string>& B, bool both_directions,
                             const std::string& step);

// A immediately before B, both contiguous; result order swaps the blocks.
// Requires full two-sided orthogonality between the blocks.
Certificate do_exchange(Collection& c, const std::vector<std::string>& A,
                        const std::vector<std::string>& B, const std::string& step);

// move one object across its neighbours to sit before/after anchor; every
// crossed object must be orthogonal to it in both directions
Certificate do_insert(Collection& c, const std::string& id, const std::string& anchor,
                      bool before, const std::string& step);

// left: through-block immediately left of the object, result lands before the
// block. right: mirror. The Ext between block and object must be determinate
// and concentrated in a single degree; the claimed class must match the
// mutation triangle up to an overall shift. Zero Ext forces claimed ==
// original. claimed_base at grid (cc, cr).
Certificate do_mutate(Collection& c, bool left, const std::string& id,
                      const std::vector<std::string>& through, const ExprPtr& claimed_base,
                      int cc, int cr, const std::string& step);

// replace the object by claimed_base at (cc, cr), moved per placement. The
// old and new bundles must be linked through the cited sequence instances
// (a chain of shared terms), and the K-class difference must lie in the
// lattice spanned by the remaining objects.
Certificate do_rewrite(Collection& c, const std::string& id, const ExprPtr& claimed_base,
                       int cc, int cr, const Placement& place,
                       const std::vector<SeqUse>& citations, const std::string& step);

// ids must be the contiguous tail (to_start) or head (to_start == false);
// they are twisted by the configured offset (negated for head-to-end) and
// moved to the opposite boundary
Certificate do_serre(Collection& c, const std::vector<std::string>& ids, bool to_start,
                     std::pair<int, int> configured, const std::string& step);

// apply the declared boundary moves to the declared reference layout and
// check the result agrees with the live collection as a multiset of
// (bundle, position) pairs
Certificate do_identify(const Collection& c, const std::vector<ChessObject>& reference,
                        const std::vector<SerreMove>& moves, std::pair<int, int> configured,
                        const std::string& step);

std::vector<KClass> kclasses_of(const Collection& c);
LatticeSummary lattice_of(const std::vector<ChessObject>& objs);

// membership of a class in the lattice spanned by gens
bool lattice_contains(const std::vector<KClass>& gens, const KClass& target);

}  // namespace roofcheck
