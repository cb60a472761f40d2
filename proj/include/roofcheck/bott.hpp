#pragma once

#include <cstddef>
#include <vector>

#include "roofcheck/weights.hpp"

namespace roofcheck {

// Cohomology of an irreducible homogeneous bundle: either no cohomology at
// all, or a single group in one degree.
struct CohomologyResult {
    bool zero = true;
    int degree = 0;     // meaningful only when !zero
    Weight weight{};    // dominant weight of the resulting representation
    mpz_class dim = 0;  // = weyl_dim(weight)

    bool operator==(const CohomologyResult& o) const {
        if (zero != o.zero) return false;
        if (zero) return true;
        return degree == o.degree && weight == o.weight && dim == o.dim;
    }
};

// Dominance-walk algorithm: reflect lambda+rho at the leftmost negative entry
// until strictly positive (degree = number of reflections) or a zero entry
// appears (no cohomology).
CohomologyResult bott(const Weight& lambda);

// Full rank-5 Weyl group of order 1920, realized as integer matrices in
// fundamental-weight coordinates with cached lengths.
class WeylGroup {
  public:
    static const WeylGroup& get();

    std::size_t size() const { return mats_.size(); }
    int length(std::size_t k) const { return len_[k]; }
    Weight apply(std::size_t k, const Weight& w) const;
    int max_length() const;

  private:
    WeylGroup();
    using Mat = std::array<std::array<int64_t, 5>, 5>;
    std::vector<Mat> mats_;
    std::vector<int> len_;
};

// Brute-force cross-check: scan all 1920 group elements for one sending
// lambda+rho strictly dominant; asserts uniqueness when found.
CohomologyResult bott_oracle(const Weight& lambda);

}  // namespace roofcheck
