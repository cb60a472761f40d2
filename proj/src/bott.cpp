#include "roofcheck/bott.hpp"

#include <map>
#include <stdexcept>

namespace roofcheck {

CohomologyResult bott(const Weight& lambda) {
    Weight v = lambda + rho;
    int d = 0;
    for (int steps = 0; steps <= 24; ++steps) {
        if (has_zero_coordinate(v)) return CohomologyResult{};
        if (is_strictly_dominant(v)) {
            Weight mu = v - rho;
            return CohomologyResult{false, d, mu, weyl_dim(mu)};
        }
        for (int i = 0; i < 5; ++i) {
            if (v.a[i] < 0) {
                v = reflect(i + 1, v);
                ++d;
                break;
            }
        }
    }
    throw std::logic_error("bott: more than 24 reflections");
}

namespace {

using Mat = std::array<std::array<int64_t, 5>, 5>;

Mat identity_mat() {
    Mat m{};
    for (int i = 0; i < 5; ++i) m[i][i] = 1;
    return m;
}

Mat reflection_mat(int i) {
    // columns of the matrix are reflect(i, e_j)
    Mat m{};
    for (int j = 0; j < 5; ++j) {
        Weight e{};
        e.a[j] = 1;
        Weight r = reflect(i, e);
        for (int k = 0; k < 5; ++k) m[k][j] = r.a[k];
    }
    return m;
}

Mat mul(const Mat& x, const Mat& y) {
    Mat m{};
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) {
            int64_t s = 0;
            for (int j = 0; j < 5; ++j) s += x[i][j] * y[j][k];
            m[i][k] = s;
        }
    return m;
}

Weight apply_mat(const Mat& m, const Weight& w) {
    Weight r{};
    for (int i = 0; i < 5; ++i) {
        int64_t s = 0;
        for (int j = 0; j < 5; ++j) s += m[i][j] * w.a[j];
        r.a[i] = s;
    }
    return r;
}

}  // namespace

WeylGroup::WeylGroup() {
    Mat gens[5];
    for (int i = 0; i < 5; ++i) gens[i] = reflection_mat(i + 1);

    // breadth-first closure; elements are keyed by their action on rho,
    // which is a free orbit
    std::map<Weight, std::size_t> seen;
    mats_.push_back(identity_mat());
    len_.push_back(0);
    seen[rho] = 0;
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t k : frontier) {
            for (int i = 0; i < 5; ++i) {
                Mat w = mul(gens[i], mats_[k]);
                Weight key = apply_mat(w, rho);
                if (seen.contains(key)) continue;
                seen[key] = mats_.size();
                mats_.push_back(w);
                len_.push_back(len_[k] + 1);
                next.push_back(mats_.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    if (mats_.size() != 1920) throw std::logic_error("WeylGroup: enumeration size mismatch");
}

const WeylGroup& WeylGroup::get() {
    static const WeylGroup g;
    return g;
}

Weight WeylGroup::apply(std::size_t k, const Weight& w) const { return apply_mat(mats_[k], w); }

int WeylGroup::max_length() const {
    int m = 0;
    for (int l : len_)
        if (l > m) m = l;
    return m;
}

CohomologyResult bott_oracle(const Weight& lambda) {
    const WeylGroup& g = WeylGroup::get();
    const Weight v = lambda + rho;
    bool found = false;
    CohomologyResult res{};
    for (std::size_t k = 0; k < g.size(); ++k) {
        Weight wv = g.apply(k, v);
        if (!is_strictly_dominant(wv)) continue;
        if (found) throw std::logic_error("bott_oracle: dominant representative not unique");
        found = true;
        Weight mu = wv - rho;
        res = CohomologyResult{false, g.length(k), mu, weyl_dim(mu)};
    }
    return res;
}

}  // namespace roofcheck
