#pragma once

// Finite-range decomposition of the torus resolvent: dyadic time-slicing of
// C = int_0^inf exp(-t(lambda^(alpha/2) + m^2)) dt at boundaries t_j = L^(alpha j),
// computed per Fourier mode, then hard-truncated to range < L^j / 2 with all
// truncation residue reassigned to the last slice. Telescoping to the
// resolvent is exact by construction; slices are positive semidefinite before
// truncation, and the post-truncation minimum eigenvalue is recorded as a
// diagnostic rather than asserted.

#include <vector>

#include "longrange/kernels.hpp"

namespace longrange {

struct SliceInfo {
    int j = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;            // infinity for the last slice
    double range = 0.0;           // truncation radius L^j / 2, infinity for the last slice
    double max_amp = 0.0;         // max |C_j| after truncation
    double trunc_mass = 0.0;      // removed l1 mass / total l1 mass, before truncation
    double min_eigenvalue = 0.0;  // smallest circulant eigenvalue after truncation
};

struct CovarianceDecomposition {
    LatticeSpec spec;
    double m2 = 0.0;
    std::vector<KernelField> slices;  // slices[j-1] = C_j for j = 1..N
    std::vector<double> w1;           // w1[j] = w_j^(1) = sum_x w_j(0,x), j = 0..N
    std::vector<SliceInfo> info;      // info[j-1] describes slice j

    const KernelField& slice(int j) const;  // 1-based scale index
};

CovarianceDecomposition decompose(const LatticeSpec& spec, double m2);

struct RangeReport {
    // Per slice j = 1..N-1; the last slice has no range constraint.
    std::vector<double> out_of_range_max;
    std::vector<double> trunc_mass;
};

RangeReport verify_finite_range(const CovarianceDecomposition& decomp);

struct ScalingReport {
    bool vacuous = false;     // fewer than two scales below the mass scale
    double slope = 0.0;       // fitted d log(max_amp) / dj
    double expected = 0.0;    // -(d - alpha) ln L
    std::vector<double> fitted_c;  // max_amp_j / (L^-(d-alpha)(j-1) (1+m^4 L^(2 alpha (j-1)))^-1)
};

ScalingReport verify_scaling(const CovarianceDecomposition& decomp);

// Dense partial sums w_0, ..., w_N (w_0 = 0, w_j = w_{j-1} + C_j),
// materialized on demand; the decomposition itself stores only the slices to
// stay within the M^d x N budget.
std::vector<KernelField> partial_sums(const CovarianceDecomposition& decomp);

}
