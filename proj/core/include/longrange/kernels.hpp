#pragma once

// Fractional-Laplacian kernels: the Fourier multiplier lambda(k)^(alpha/2),
// torus kernels and resolvents built by exact DFT over torus momenta, Z^d
// kernels by refining trapezoid quadrature, and the Green-function diagonal
// tau^(alpha).
//
// alpha lies in (0, 2); the boundary value alpha = 2 is additionally accepted
// and reproduces the nearest-neighbour Laplacian, which is used as an exact
// control in tests.

#include <cstdint>
#include <vector>

#include "longrange/lattice.hpp"

namespace longrange {

// Memory budget for dense kernels: M^d entries (plus FFT scratch of the same
// order) must stay below this.
inline constexpr std::int64_t max_kernel_entries = std::int64_t(1) << 26;

struct KernelField {
    LatticeSpec spec;
    double m2 = 0.0;
    std::vector<double> values;  // row K(0, x), row-major over displacements

    double at(const Point& x) const { return values[displacement_index(x, spec)]; }
};

// lambda(k) = 4 sum_i sin^2(k_i / 2), in [0, 4d].
double multiplier_lambda(const double* k, int d);

// Inverse DFT of a real, reflection-even multiplier given on the full torus
// momentum grid (row-major over m, momenta k = 2 pi m / M): the kernel row
// (1/M^d) sum_m mult(m) exp(i k.x).
std::vector<double> inverse_dft(const LatticeSpec& spec, const std::vector<double>& multiplier);

// Forward counterpart, sum_x values(x) exp(-i k.x): the circulant eigenvalues
// of a reflection-even kernel row, expanded to the full momentum grid.
// inverse_dft(spec, forward_dft(spec, v)) recovers v up to rounding.
std::vector<double> forward_dft(const LatticeSpec& spec, const std::vector<double>& values);

// The multiplier grid lambda(2 pi m / M)^(alpha/2), row-major over m.
std::vector<double> multiplier_grid(const LatticeSpec& spec);

// Kernel of (-Delta)^(alpha/2) on the torus: inverse DFT of the multiplier
// over momenta 2 pi m / M. For alpha = 2 the exact nearest-neighbour stencil
// is filled in directly.
KernelField torus_frac_laplacian(const LatticeSpec& spec);

// Kernel of ((-Delta)^(alpha/2) + m^2)^(-1). m2 = 0 requires alpha < d and
// excludes the zero Fourier mode (Green function on mean-zero functions).
KernelField resolvent(const LatticeSpec& spec, double m2);

// Entry of the Z^d kernel at displacement x by tensor-trapezoid quadrature of
// the momentum integral, refined by doubling until two successive resolutions
// agree within tol (mixed absolute/relative). resolution is the per-dimension
// node count of the first level and must be >= 1024.
double zd_frac_laplacian(const Point& x, int d, double alpha, std::int64_t resolution,
                         double tol = 1e-9);

// tau^(alpha) = (2 pi)^-d int lambda(k)^(-alpha/2) dk, the massless Green
// function diagonal on Z^d; requires alpha < d. Midpoint quadrature under the
// substitution k_i = pi u_i^5 (which absorbs the |k|^-alpha singularity),
// refined by doubling from `resolution` nodes per dimension until successive
// levels agree within tol.
double greens_diagonal_tau(int d, double alpha, std::int64_t resolution, double tol = 1e-8);

}
