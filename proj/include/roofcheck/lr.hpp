#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace roofcheck {

// GL(r)-dominant weight: weakly decreasing integer tuple, negative entries
// allowed (determinant twists stay closed-form).
using GLWeight = std::vector<int64_t>;

// decomposition result: dominant weight -> multiplicity
using GLMultiset = std::map<GLWeight, int64_t>;

bool gl_dominant(const GLWeight& w);

// GL(r) Weyl dimension formula.
mpz_class gl_dim(const GLWeight& w);

// dual representation: reverse and negate
GLWeight gl_dual(const GLWeight& w);

// weights of the irreducible with highest weight w, with multiplicities
// (Gelfand-Tsetlin enumeration; memoized)
const std::map<GLWeight, int64_t>& gl_weight_system(const GLWeight& w);

// tensor product decomposition by the Racah-Speiser sign-sort walk over the
// weight system of the smaller factor
GLMultiset lr_tensor(const GLWeight& alpha, const GLWeight& beta);

// k-th wedge / symmetric power highest weights (single Schur functors)
GLWeight wedge_weight(int k, int rank);
GLWeight sym_weight(int k, int rank);

}  // namespace roofcheck
