#pragma once

// Discrete torus geometry: the lattice Z^d / (M Z)^d with M = L^N, and the
// integer helpers (wrapping, minimal images, exact squared distances) used
// throughout the kernel and flow modules.

#include <array>
#include <cstdint>

#include "longrange/errors.hpp"

namespace longrange {

inline constexpr int max_dimension = 4;

using Point = std::array<std::int64_t, max_dimension>;

// base^exp in 64-bit integer arithmetic, throwing on overflow.
std::int64_t ipow_checked(std::int64_t base, int exp);

struct LatticeSpec {
    int d = 1;
    std::int64_t L = 2;
    int N = 1;
    std::int64_t M = 2;  // torus side, always L^N
    double alpha = 1.0;

    // Validates ranges (1 <= d <= 4, L >= 2, N >= 1, alpha in (0,2]) and
    // computes M = L^N exactly.
    static LatticeSpec make(int d, std::int64_t L, int N, double alpha);

    // M^d, guarded against 64-bit overflow.
    std::int64_t volume() const;
};

// Canonical coordinate in [0, M).
inline std::int64_t torus_wrap(std::int64_t x, std::int64_t M) {
    std::int64_t r = x % M;
    return r < 0 ? r + M : r;
}

// Circular distance min(|x| mod M, M - |x| mod M) in {0, ..., M/2}.
inline std::int64_t torus_circ_dist(std::int64_t x, std::int64_t M) {
    std::int64_t r = torus_wrap(x, M);
    return r <= M - r ? r : M - r;
}

// 4 |a - b|^2 on the torus, exactly, as an integer. The factor 4 keeps
// half-integer thresholds (range L^j / 2) exact in integer comparisons.
std::int64_t torus_dist2_x4(const Point& a, const Point& b, const LatticeSpec& spec);

// Euclidean torus distance |a - b|.
double torus_distance(const Point& a, const Point& b, const LatticeSpec& spec);

// Row-major index of a displacement with coordinates wrapped to [0, M).
std::int64_t displacement_index(const Point& x, const LatticeSpec& spec);

// Inverse of displacement_index.
Point displacement_from_index(std::int64_t idx, const LatticeSpec& spec);

inline Point make_point(std::int64_t x0 = 0, std::int64_t x1 = 0, std::int64_t x2 = 0,
                        std::int64_t x3 = 0) {
    return Point{x0, x1, x2, x3};
}

}
