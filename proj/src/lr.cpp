#include "roofcheck/lr.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace roofcheck {

bool gl_dominant(const GLWeight& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] < w[i]) return false;
    return true;
}

mpz_class gl_dim(const GLWeight& w) {
    if (!gl_dominant(w)) throw std::invalid_argument("gl_dim: non-dominant weight");
    const int r = static_cast<int>(w.size());
    mpz_class num = 1, den = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            num *= w[i] - w[j] + j - i;
            den *= j - i;
        }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

GLWeight gl_dual(const GLWeight& w) {
    GLWeight d(w.rbegin(), w.rend());
    for (auto& x : d) x = -x;
    return d;
}

namespace {

// interlacing rows (Gelfand-Tsetlin): enumerate all rows m of length n-1 with
// top[i] >= m[i] >= top[i+1], accumulating the weight entry sum(top)-sum(m)
void gt_recurse(const GLWeight& top, GLWeight& weight_acc, std::map<GLWeight, int64_t>& out) {
    const std::size_t n = top.size();
    if (n == 1) {
        GLWeight w = weight_acc;
        w.push_back(top[0]);
        std::reverse(w.begin(), w.end());
        ++out[w];
        return;
    }
    GLWeight m(n - 1);
    int64_t top_sum = std::accumulate(top.begin(), top.end(), int64_t{0});
    // depth-first over interlacing choices
    struct Frame {
        std::size_t i;
    };
    std::vector<int64_t> lo(n - 1), hi(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        hi[i] = top[i];
        lo[i] = top[i + 1];
    }
    // iterate odometer-style
    for (std::size_t i = 0; i + 1 < n; ++i) m[i] = lo[i];
    while (true) {
        int64_t m_sum = std::accumulate(m.begin(), m.end(), int64_t{0});
        weight_acc.push_back(top_sum - m_sum);
        gt_recurse(m, weight_acc, out);
        weight_acc.pop_back();
        std::size_t i = 0;
        while (i + 1 < n && m[i] == hi[i]) {
            m[i] = lo[i];
            ++i;
        }
        if (i + 1 >= n) break;
        ++m[i];
    }
}

}  // namespace

const std::map<GLWeight, int64_t>& gl_weight_system(const GLWeight& w) {
    static std::map<GLWeight, std::map<GLWeight, int64_t>> cache;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    if (!gl_dominant(w)) throw std::invalid_argument("gl_weight_system: non-dominant weight");
    std::map<GLWeight, int64_t> out;
    GLWeight acc;
    gt_recurse(w, acc, out);
    return cache.emplace(w, std::move(out)).first->second;
}

GLMultiset lr_tensor(const GLWeight& alpha, const GLWeight& beta) {
    if (alpha.size() != beta.size()) throw std::invalid_argument("lr_tensor: rank mismatch");
    const int r = static_cast<int>(alpha.size());
    // walk over the weight system of the factor with the smaller dimension
    const GLWeight* base = &alpha;
    const GLWeight* walk = &beta;
    if (gl_dim(alpha) < gl_dim(beta)) std::swap(base, walk);

    GLMultiset out;
    std::vector<std::pair<int64_t, int>> v(r);  // (entry, original slot)
    for (const auto& [mu, mult] : gl_weight_system(*walk)) {
        // v = base + mu + delta with delta = (r-1, ..., 0)
        bool skip = false;
        for (int i = 0; i < r; ++i) v[i] = {(*base)[i] + mu[i] + (r - 1 - i), i};
        std::sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.first > y.first; });
        for (int i = 0; i + 1 < r; ++i)
            if (v[i].first == v[i + 1].first) {
                skip = true;
                break;
            }
        if (skip) continue;
        // sign of the sorting permutation
        int sign = 1;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (v[i].second > v[j].second) sign = -sign;
        GLWeight gamma(r);
        for (int i = 0; i < r; ++i) gamma[i] = v[i].first - (r - 1 - i);
        out[gamma] += sign * mult;
        if (out[gamma] == 0) out.erase(gamma);
    }
    for (const auto& [g, m] : out)
        if (m < 0) throw std::logic_error("lr_tensor: negative multiplicity");
    return out;
}

GLWeight wedge_weight(int k, int rank) {
    if (k < 0 || k > rank) throw std::invalid_argument("wedge_weight: k out of range");
    GLWeight w(rank, 0);
    for (int i = 0; i < k; ++i) w[i] = 1;
    return w;
}

GLWeight sym_weight(int k, int rank) {
    if (k < 0) throw std::invalid_argument("sym_weight: negative k");
    GLWeight w(rank, 0);
    if (rank > 0) w[0] = k;
    return w;
}

}  // namespace roofcheck
