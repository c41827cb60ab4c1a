#include "longrange/lattice.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace longrange {

std::int64_t ipow_checked(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base)
            throw resource_error("integer power overflow: " + std::to_string(base) + "^" +
                                 std::to_string(exp));
        r *= base;
    }
    return r;
}

LatticeSpec LatticeSpec::make(int d, std::int64_t L, int N, double alpha) {
    if (d < 1 || d > max_dimension)
        throw config_error("dimension d must be in [1, 4], got " + std::to_string(d));
    if (L < 2) throw config_error("scale base L must be >= 2, got " + std::to_string(L));
    if (N < 1) throw config_error("depth N must be >= 1, got " + std::to_string(N));
    if (!(alpha > 0.0) || alpha > 2.0)
        throw config_error("alpha must lie in (0, 2], got " + std::to_string(alpha));
    LatticeSpec s;
    s.d = d;
    s.L = L;
    s.N = N;
    s.M = ipow_checked(L, N);
    s.alpha = alpha;
    return s;
}

std::int64_t LatticeSpec::volume() const { return ipow_checked(M, d); }

std::int64_t torus_dist2_x4(const Point& a, const Point& b, const LatticeSpec& spec) {
    std::int64_t sum = 0;
    for (int i = 0; i < spec.d; ++i) {
        std::int64_t twice = 2 * torus_circ_dist(a[i] - b[i], spec.M);
        sum += twice * twice;
    }
    return sum;
}

double torus_distance(const Point& a, const Point& b, const LatticeSpec& spec) {
    return 0.5 * std::sqrt(static_cast<double>(torus_dist2_x4(a, b, spec)));
}

std::int64_t displacement_index(const Point& x, const LatticeSpec& spec) {
    std::int64_t idx = 0;
    for (int i = 0; i < spec.d; ++i) idx = idx * spec.M + torus_wrap(x[i], spec.M);
    return idx;
}

Point displacement_from_index(std::int64_t idx, const LatticeSpec& spec) {
    Point x{0, 0, 0, 0};
    for (int i = spec.d - 1; i >= 0; --i) {
        x[i] = idx % spec.M;
        idx /= spec.M;
    }
    return x;
}

}
