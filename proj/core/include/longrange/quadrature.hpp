#pragma once

// Quadrature building blocks: Gauss-Legendre rules and a dyadically graded
// panel integrator for momentum integrals on (0, hi] whose integrands are
// steep near k = 0 and oscillatory (through a cos(k r) factor) for large k.

#include <cmath>
#include <cstdint>
#include <vector>

namespace longrange {

// Nodes and weights on [-1, 1], computed by Newton iteration on the Legendre
// recurrence; accurate to machine precision for the small orders used here.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
    explicit GaussLegendre(int n);
};

template <class F>
double gl_panel(const GaussLegendre& rule, double a, double b, F&& f) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) sum += rule.w[i] * f(mid + half * rule.x[i]);
    return half * sum;
}

// Integrates f over (hi * 2^-levels, hi] with one panel per dyadic interval
// [hi 2^-(i+1), hi 2^-i]. Panels are split into ceil(width * osc_scale / 6)
// sub-panels so that an oscillation cos(k * osc_scale) stays resolved by the
// fixed-order rule; pass osc_scale = 0 for smooth integrands. The caller
// chooses `levels` large enough that the remaining stub at 0 is negligible
// for its integrand.
template <class F>
double integrate_graded(F&& f, double hi, int levels, double osc_scale,
                        const GaussLegendre& rule) {
    double total = 0.0;
    double upper = hi;
    for (int i = 0; i < levels; ++i) {
        const double lower = 0.5 * upper;
        const double width = upper - lower;
        int nsub = 1;
        if (osc_scale > 0.0) {
            double need = width * osc_scale / 6.0;
            if (need > 1.0) nsub = static_cast<int>(std::ceil(need));
        }
        const double h = width / nsub;
        for (int s = 0; s < nsub; ++s)
            total += gl_panel(rule, lower + s * h, lower + (s + 1) * h, f);
        upper = lower;
    }
    return total;
}

}
