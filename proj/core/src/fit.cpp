#include "longrange/fit.hpp"

#include <cmath>
#include <string>

#include "longrange/errors.hpp"

namespace longrange {

DecayFit fit_loglog(const std::vector<double>& r, const std::vector<double>& y) {
    if (r.size() != y.size()) throw config_error("fit: r and y lengths differ");
    if (r.size() < 2) throw numerical_error("fit error: fewer than two samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    const double n = static_cast<double>(r.size());
    std::vector<double> lx(r.size()), ly(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0))
            throw numerical_error("fit error: nonpositive abscissa " + std::to_string(r[i]));
        if (!(y[i] > 0.0))
            throw numerical_error("fit error: nonpositive value at r = " + std::to_string(r[i]));
        lx[i] = std::log(r[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    for (std::size_t i = 0; i < r.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw numerical_error("fit error: all abscissae coincide");
    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = syy - fit.slope * sxy;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (fit.r_squared < 0.0) fit.r_squared = 0.0;
    if (fit.r_squared > 1.0) fit.r_squared = 1.0;
    fit.r_min = r.front();
    fit.r_max = r.front();
    for (std::size_t i = 1; i < r.size(); ++i) {
        fit.r_min = std::min(fit.r_min, r[i]);
        fit.r_max = std::max(fit.r_max, r[i]);
    }
    return fit;
}

DecayFit fit_decay_exponent(const KernelField& kernel, double r_min, double r_max,
                            int sign, bool full_shell) {
    const LatticeSpec& spec = kernel.spec;
    if (sign != 1 && sign != -1) throw config_error("fit sign must be +1 or -1");
    if (!(r_min > 0.0) || !(r_max >= r_min))
        throw config_error("fit window must satisfy 0 < r_min <= r_max");
    if (r_max > static_cast<double>(spec.M) / 4.0)
        throw config_error("fit window exceeds M/4; wrap-around would bias the fit");
    const double s = static_cast<double>(sign);

    std::vector<double> rs, ys;
    if (!full_shell) {
        const std::int64_t lo = static_cast<std::int64_t>(std::ceil(r_min));
        const std::int64_t hi = static_cast<std::int64_t>(std::floor(r_max));
        for (std::int64_t r = lo; r <= hi; ++r) {
            for (int axis = 0; axis < spec.d; ++axis) {
                Point x{0, 0, 0, 0};
                x[axis] = r;
                double v = s * kernel.at(x);
                if (!(v > 0.0))
                    throw numerical_error("fit error: nonpositive value on axis " +
                                          std::to_string(axis) + " at r = " + std::to_string(r));
                rs.push_back(static_cast<double>(r));
                ys.push_back(v);
            }
        }
    } else {
        const std::int64_t lo = static_cast<std::int64_t>(std::ceil(r_min));
        const std::int64_t hi = static_cast<std::int64_t>(std::floor(r_max));
        std::vector<double> sum(static_cast<std::size_t>(hi - lo + 1), 0.0);
        std::vector<std::int64_t> count(static_cast<std::size_t>(hi - lo + 1), 0);
        const Point origin{0, 0, 0, 0};
        const std::int64_t volume = spec.volume();
        for (std::int64_t idx = 0; idx < volume; ++idx) {
            Point x = displacement_from_index(idx, spec);
            double dist = torus_distance(origin, x, spec);
            std::int64_t shell = static_cast<std::int64_t>(std::floor(dist));
            if (shell < lo || shell > hi) continue;
            double v = s * kernel.values[static_cast<std::size_t>(idx)];
            if (!(v > 0.0))
                throw numerical_error("fit error: nonpositive value in shell r = " +
                                      std::to_string(shell));
            sum[static_cast<std::size_t>(shell - lo)] += v;
            ++count[static_cast<std::size_t>(shell - lo)];
        }
        for (std::int64_t r = lo; r <= hi; ++r) {
            std::size_t i = static_cast<std::size_t>(r - lo);
            if (count[i] == 0) continue;
            rs.push_back(static_cast<double>(r));
            ys.push_back(sum[i] / static_cast<double>(count[i]));
        }
    }
    if (rs.size() < 2) throw numerical_error("fit error: window contains fewer than two radii");
    DecayFit fit = fit_loglog(rs, ys);
    fit.r_min = r_min;
    fit.r_max = r_max;
    return fit;
}

}
