#include "roofcheck/ext.hpp"

namespace roofcheck {

std::string to_string(const ExtTable& t) {
    if (t.certified_zero) return "certified-zero";
    return to_string(t.table);
}

ExtTable ext_divisor(const ExprPtr& F, const ExprPtr& G) {
    ExprPtr core = make_tensor(make_dual(F), G);
    CohTable A = cohomology_of_expr(core);
    CohTable B = cohomology_of_expr(make_twist(core, -1, -1));

    ExtTable out;
    if (A.is_zero() && B.is_zero()) {
        out.certified_zero = true;
        return out;
    }
    if (A.undetermined || B.undetermined) {
        out.table.undetermined = true;
        return out;
    }
    for (const auto& [p, v] : B.h) {
        if (v == 0) continue;
        if (A.h.count(p) || A.h.count(p + 1) || A.h.count(p + 2)) {
            out.table.undetermined = true;
            return out;
        }
    }
    out.table = table_add(A, table_shift(B, 1));
    return out;
}

mpz_class euler_pairing(const ExprPtr& F, const ExprPtr& G) {
    ExprPtr core = make_tensor(make_dual(F), G);
    return euler_of_expr(core) - euler_of_expr(make_twist(core, -1, -1));
}

}  // namespace roofcheck
