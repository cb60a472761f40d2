#include "roofcheck/weights.hpp"

#include <stdexcept>

namespace roofcheck {

Weight reflect(int i, const Weight& w) {
    const auto& a = w.a;
    switch (i) {
        case 1:
            return Weight{{-a[0], a[0] + a[1], a[2], a[3], a[4]}};
        case 2:
            return Weight{{a[0] + a[1], -a[1], a[1] + a[2], a[3], a[4]}};
        case 3:
            return Weight{{a[0], a[1] + a[2], -a[2], a[2] + a[3], a[2] + a[4]}};
        case 4:
            return Weight{{a[0], a[1], a[2] + a[3], -a[3], a[4]}};
        case 5:
            return Weight{{a[0], a[1], a[2] + a[4], a[3], -a[4]}};
        default:
            throw std::invalid_argument("reflect: index must be in 1..5");
    }
}

bool is_strictly_dominant(const Weight& w) {
    for (int i = 0; i < 5; ++i)
        if (w.a[i] <= 0) return false;
    return true;
}

bool is_dominant(const Weight& w) {
    for (int i = 0; i < 5; ++i)
        if (w.a[i] < 0) return false;
    return true;
}

bool has_zero_coordinate(const Weight& w) {
    for (int i = 0; i < 5; ++i)
        if (w.a[i] == 0) return true;
    return false;
}

bool is_singular(const Weight& w) {
    Weight v = w;
    // the dominance walk terminates within the longest-element length
    for (int steps = 0; steps <= 24; ++steps) {
        if (has_zero_coordinate(v)) return true;
        if (is_strictly_dominant(v)) return false;
        for (int i = 0; i < 5; ++i) {
            if (v.a[i] < 0) {
                v = reflect(i + 1, v);
                break;
            }
        }
    }
    throw std::logic_error("is_singular: dominance walk did not terminate");
}

// Product formula over positive roots, in the doubled orthogonal basis so all
// intermediate values stay integral.
mpz_class weyl_dim(const Weight& lambda) {
    if (!is_dominant(lambda)) throw std::invalid_argument("weyl_dim: non-dominant weight");
    const auto& a = lambda.a;
    // doubled orthogonal coordinates of lambda, plus the doubled rho (8,6,4,2,0)
    const int64_t y[5] = {
        2 * a[0] + 2 * a[1] + 2 * a[2] + a[3] + a[4] + 8,
        2 * a[1] + 2 * a[2] + a[3] + a[4] + 6,
        2 * a[2] + a[3] + a[4] + 4,
        a[3] + a[4] + 2,
        a[4] - a[3],
    };
    const int64_t r[5] = {8, 6, 4, 2, 0};
    mpz_class num = 1, den = 1;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            num *= mpz_class(y[i]) * y[i] - mpz_class(y[j]) * y[j];
            den *= r[i] * r[i] - r[j] * r[j];
        }
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

std::string to_string(const Weight& w) {
    std::string s = "(";
    for (int i = 0; i < 5; ++i) {
        if (i) s += ",";
        s += std::to_string(w.a[i]);
    }
    s += ")";
    return s;
}

}  // namespace roofcheck
