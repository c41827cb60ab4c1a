#pragma once

// Truncated polynomial ring in the formal variables sigma_a, sigma_b, fbar:
// total degree <= 2, sigma_a^2 = sigma_b^2 = 0, so exactly the monomials
// 1, sa, sb, sa sb, f, sa f, sb f, f^2 survive (f = fbar, the summed field
// direction). Coefficients are plain polynomial coefficients; divided-power
// bookkeeping lives at the call sites that take derivatives.

#include <array>
#include <cmath>
#include <cstddef>

#include "longrange/errors.hpp"

namespace longrange {

struct Jet {
    // Monomial slots, in this order.
    static constexpr int one = 0;
    static constexpr int sa = 1;
    static constexpr int sb = 2;
    static constexpr int sasb = 3;
    static constexpr int f = 4;
    static constexpr int saf = 5;
    static constexpr int sbf = 6;
    static constexpr int ff = 7;

    std::array<double, 8> c{};

    static Jet constant(double v) {
        Jet x;
        x.c[one] = v;
        return x;
    }
    static Jet monomial(int slot, double v) {
        Jet x;
        x.c[static_cast<std::size_t>(slot)] = v;
        return x;
    }

    friend Jet operator+(Jet a, const Jet& b) {
        for (std::size_t i = 0; i < 8; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend Jet operator-(Jet a, const Jet& b) {
        for (std::size_t i = 0; i < 8; ++i) a.c[i] -= b.c[i];
        return a;
    }
    Jet operator-() const {
        Jet x = *this;
        for (auto& v : x.c) v = -v;
        return x;
    }
    Jet& operator+=(const Jet& b) {
        for (std::size_t i = 0; i < 8; ++i) c[i] += b.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& b) {
        for (std::size_t i = 0; i < 8; ++i) c[i] -= b.c[i];
        return *this;
    }
    friend Jet operator*(const Jet& a, double s) {
        Jet x = a;
        for (auto& v : x.c) v *= s;
        return x;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    Jet& operator*=(double s) {
        for (auto& v : c) v *= s;
        return *this;
    }

    friend Jet operator*(const Jet& a, const Jet& b);
    Jet& operator*=(const Jet& b) { return *this = *this * b; }

    friend bool operator==(const Jet&, const Jet&) = default;

    double l1_norm() const {
        double s = 0.0;
        for (double v : c) s += std::abs(v);
        return s;
    }
};

namespace jet_detail {

// Per-slot degrees (sigma_a, sigma_b, fbar).
inline constexpr int deg_a[8] = {0, 1, 0, 1, 0, 1, 0, 0};
inline constexpr int deg_b[8] = {0, 0, 1, 1, 0, 0, 1, 0};
inline constexpr int deg_f[8] = {0, 0, 0, 0, 1, 1, 1, 2};

inline constexpr int slot_of(int ia, int ib, int p) {
    if (ia > 1 || ib > 1 || ia + ib + p > 2) return -1;
    for (int s = 0; s < 8; ++s)
        if (deg_a[s] == ia && deg_b[s] == ib && deg_f[s] == p) return s;
    return -1;
}

struct ProductTable {
    int target[8][8] = {};
    constexpr ProductTable() {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                target[i][j] = slot_of(deg_a[i] + deg_a[j], deg_b[i] + deg_b[j],
                                       deg_f[i] + deg_f[j]);
    }
};

inline constexpr ProductTable product_table{};

}  // namespace jet_detail

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (std::size_t i = 0; i < 8; ++i) {
        if (a.c[i] == 0.0) continue;
        for (std::size_t j = 0; j < 8; ++j) {
            int t = jet_detail::product_table.target[i][j];
            if (t >= 0) out.c[static_cast<std::size_t>(t)] += a.c[i] * b.c[j];
        }
    }
    return out;
}

// exp(x) = e^(x_0) (1 + n + n^2/2) with n the nilpotent part; n^3 vanishes
// in the truncated ring, so this is the exact ring exponential.
inline Jet jet_exp(const Jet& x) {
    Jet n = x;
    n.c[Jet::one] = 0.0;
    Jet series = Jet::constant(1.0) + n + 0.5 * (n * n);
    return std::exp(x.c[Jet::one]) * series;
}

// log(x) = log(x_0) + u - u^2/2 with u = n / x_0; requires x_0 > 0.
inline Jet jet_log(const Jet& x) {
    if (!(x.c[Jet::one] > 0.0))
        throw numerical_error("jet log requires a positive constant term");
    Jet u = x;
    u.c[Jet::one] = 0.0;
    u *= 1.0 / x.c[Jet::one];
    Jet series = u - 0.5 * (u * u);
    series.c[Jet::one] = std::log(x.c[Jet::one]);
    return series;
}

}
