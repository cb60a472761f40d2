#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace roofcheck {

// Weight in fundamental-weight coordinates (a1..a5) of the rank-5 lattice.
// Node layout: 1-2-3 chain, nodes 4 and 5 both attached to node 3.
struct Weight {
    std::array<int64_t, 5> a{};

    int64_t& operator[](int i) { return a[i]; }
    int64_t operator[](int i) const { return a[i]; }
    bool operator==(const Weight&) const = default;
    auto operator<=>(const Weight&) const = default;
};

inline Weight operator+(const Weight& x, const Weight& y) {
    Weight r;
    for (int i = 0; i < 5; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline Weight operator-(const Weight& x, const Weight& y) {
    Weight r;
    for (int i = 0; i < 5; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

inline const Weight rho{{1, 1, 1, 1, 1}};

// Simple reflection s_i, i in 1..5, acting in fundamental-weight coordinates.
Weight reflect(int i, const Weight& w);

bool is_strictly_dominant(const Weight& w);
bool is_dominant(const Weight& w);
bool has_zero_coordinate(const Weight& w);

// Singularity of a vector under the dominance walk: its reflection orbit
// either reaches a strictly positive vector (regular) or hits a zero entry.
bool is_singular(const Weight& w);

// Dimension of the irreducible representation with dominant highest weight.
// Throws std::invalid_argument on non-dominant input.
mpz_class weyl_dim(const Weight& lambda);

std::string to_string(const Weight& w);

}  // namespace roofcheck
