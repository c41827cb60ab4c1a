#pragma once

#include <vector>

#include "longrange/kernels.hpp"

namespace longrange {

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
};

// Ordinary least squares of log(y) against log(r). Requires at least two
// distinct abscissae and strictly positive values.
DecayFit fit_loglog(const std::vector<double>& r, const std::vector<double>& y);

// Power-law fit of |kernel| over displacements with |x| in [r_min, r_max],
// on coordinate axes by default or averaged over the shell |x| in [r, r+1)
// with full_shell. The window must stay within M/4 to avoid wrap-around.
// sign is +1 or -1; values must be strictly positive after multiplying by it.
DecayFit fit_decay_exponent(const KernelField& kernel, double r_min, double r_max,
                            int sign = 1, bool full_shell = false);

}
