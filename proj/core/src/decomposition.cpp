#include "longrange/decomposition.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace longrange {

namespace {

double time_boundary(const LatticeSpec& spec, int j) {
    if (j <= 0) return 0.0;
    return std::pow(static_cast<double>(spec.L), spec.alpha * static_cast<double>(j));
}

double row_sum(const std::vector<double>& row) {
    double s = 0.0;
    for (double v : row) s += v;
    return s;
}

double max_abs(const std::vector<double>& row) {
    double m = 0.0;
    for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

double min_value(const std::vector<double>& row) {
    double m = row.empty() ? 0.0 : row[0];
    for (double v : row) m = std::min(m, v);
    return m;
}

}  // namespace

const KernelField& CovarianceDecomposition::slice(int j) const {
    if (j < 1 || j > spec.N)
        throw config_error("slice index " + std::to_string(j) + " outside 1.." +
                           std::to_string(spec.N));
    return slices[static_cast<std::size_t>(j - 1)];
}

CovarianceDecomposition decompose(const LatticeSpec& spec, double m2) {
    if (m2 < 0.0) throw config_error("decomposition mass m2 must be >= 0");
    if (m2 == 0.0 && !(spec.alpha < spec.d))
        throw config_error("massless decomposition requires alpha < d");
    const std::int64_t volume = spec.volume();
    const int N = spec.N;
    if (volume > max_kernel_entries / (N + 1))
        throw resource_error("decomposition of " + std::to_string(N) + " slices on " +
                             std::to_string(volume) + " sites exceeds the memory budget");

    std::vector<double> mu = multiplier_grid(spec);
    for (auto& v : mu) v += m2;

    std::vector<double> res_mult(static_cast<std::size_t>(volume));
    for (std::size_t i = 0; i < res_mult.size(); ++i)
        res_mult[i] = mu[i] > 0.0 ? 1.0 / mu[i] : 0.0;
    std::vector<double> resolvent_row = inverse_dft(spec, res_mult);

    CovarianceDecomposition out;
    out.spec = spec;
    out.m2 = m2;
    out.slices.reserve(static_cast<std::size_t>(N));
    out.info.resize(static_cast<std::size_t>(N));
    out.w1.assign(static_cast<std::size_t>(N + 1), 0.0);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> accum(static_cast<std::size_t>(volume), 0.0);
    std::vector<double> window(static_cast<std::size_t>(volume));

    for (int j = 1; j <= N - 1; ++j) {
        const double t_lo = time_boundary(spec, j - 1);
        const double t_hi = time_boundary(spec, j);
        const double dt = t_hi - t_lo;
        for (std::size_t i = 0; i < window.size(); ++i) {
            double m = mu[i];
            window[i] = m > 0.0 ? std::exp(-t_lo * m) * (-std::expm1(-dt * m)) / m : 0.0;
        }
        std::vector<double> row = inverse_dft(spec, window);

        const std::int64_t threshold = ipow_checked(spec.L, 2 * j);  // (L^j)^2 against 4 r^2
        const Point origin{0, 0, 0, 0};
        double pre_l1 = 0.0;
        double removed_l1 = 0.0;
        for (std::int64_t idx = 0; idx < volume; ++idx) {
            double v = row[static_cast<std::size_t>(idx)];
            pre_l1 += std::abs(v);
            Point x = displacement_from_index(idx, spec);
            if (torus_dist2_x4(x, origin, spec) >= threshold) {
                removed_l1 += std::abs(v);
                row[static_cast<std::size_t>(idx)] = 0.0;
            }
        }
        for (std::int64_t idx = 0; idx < volume; ++idx)
            accum[static_cast<std::size_t>(idx)] += row[static_cast<std::size_t>(idx)];

        SliceInfo& info = out.info[static_cast<std::size_t>(j - 1)];
        info.j = j;
        info.t_lo = t_lo;
        info.t_hi = t_hi;
        info.range = 0.5 * std::pow(static_cast<double>(spec.L), j);
        info.max_amp = max_abs(row);
        info.trunc_mass = pre_l1 > 0.0 ? removed_l1 / pre_l1 : 0.0;
        info.min_eigenvalue = min_value(forward_dft(spec, row));
        out.slices.push_back(KernelField{spec, m2, std::move(row)});
        row = std::vector<double>();
    }

    // Last slice: the tail window plus every truncation residue, defined so
    // that the slices telescope to the resolvent identically.
    std::vector<double> last(static_cast<std::size_t>(volume));
    for (std::int64_t idx = 0; idx < volume; ++idx)
        last[static_cast<std::size_t>(idx)] = resolvent_row[static_cast<std::size_t>(idx)] -
                                              accum[static_cast<std::size_t>(idx)];
    SliceInfo& info = out.info[static_cast<std::size_t>(N - 1)];
    info.j = N;
    info.t_lo = time_boundary(spec, N - 1);
    info.t_hi = inf;
    info.range = inf;
    info.max_amp = max_abs(last);
    info.trunc_mass = 0.0;
    info.min_eigenvalue = min_value(forward_dft(spec, last));
    out.slices.push_back(KernelField{spec, m2, std::move(last)});

    for (int j = 1; j <= N; ++j)
        out.w1[static_cast<std::size_t>(j)] =
            out.w1[static_cast<std::size_t>(j - 1)] +
            row_sum(out.slices[static_cast<std::size_t>(j - 1)].values);

    return out;
}

RangeReport verify_finite_range(const CovarianceDecomposition& decomp) {
    const LatticeSpec& spec = decomp.spec;
    const std::int64_t volume = spec.volume();
    const Point origin{0, 0, 0, 0};
    RangeReport report;
    for (int j = 1; j <= spec.N - 1; ++j) {
        const std::int64_t threshold = ipow_checked(spec.L, 2 * j);
        const KernelField& slice = decomp.slice(j);
        double worst = 0.0;
        for (std::int64_t idx = 0; idx < volume; ++idx) {
            Point x = displacement_from_index(idx, spec);
            if (torus_dist2_x4(x, origin, spec) >= threshold)
                worst = std::max(worst, std::abs(slice.values[static_cast<std::size_t>(idx)]));
        }
        report.out_of_range_max.push_back(worst);
        report.trunc_mass.push_back(decomp.info[static_cast<std::size_t>(j - 1)].trunc_mass);
    }
    return report;
}

ScalingReport verify_scaling(const CovarianceDecomposition& decomp) {
    const LatticeSpec& spec = decomp.spec;
    ScalingReport report;
    report.expected = -(static_cast<double>(spec.d) - spec.alpha) *
                      std::log(static_cast<double>(spec.L));

    const double m4 = decomp.m2 * decomp.m2;
    for (int j = 1; j <= spec.N - 1; ++j) {
        double decay = std::pow(static_cast<double>(spec.L),
                                -(static_cast<double>(spec.d) - spec.alpha) * (j - 1));
        double mass_factor =
            1.0 + m4 * std::pow(static_cast<double>(spec.L), 2.0 * spec.alpha * (j - 1));
        double bound = decay / mass_factor;
        report.fitted_c.push_back(decomp.info[static_cast<std::size_t>(j - 1)].max_amp / bound);
    }

    // Mass scale: smallest j >= 1 with m^2 L^(alpha (j-1)) >= 1.
    int j_m = spec.N + 1;
    for (int j = 1; j <= spec.N; ++j) {
        if (decomp.m2 * std::pow(static_cast<double>(spec.L), spec.alpha * (j - 1)) >= 1.0) {
            j_m = j;
            break;
        }
    }
    // The regression starts at j = 2: the first window [0, L^alpha) has no
    // lower dyadic boundary and its amplitude sits below the envelope shared
    // by all later slices.
    const int lo = 2;
    const int hi = std::min(j_m - 1, spec.N - 1);
    if (spec.N < 4 || hi < lo + 1) {
        report.vacuous = true;
        return report;
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(hi - lo + 1);
    for (int j = lo; j <= hi; ++j) {
        double x = static_cast<double>(j);
        double y = std::log(decomp.info[static_cast<std::size_t>(j - 1)].max_amp);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return report;
}

std::vector<KernelField> partial_sums(const CovarianceDecomposition& decomp) {
    const LatticeSpec& spec = decomp.spec;
    const std::int64_t volume = spec.volume();
    if (volume > max_kernel_entries / (spec.N + 1))
        throw resource_error("partial sums exceed the memory budget");
    std::vector<KernelField> w;
    w.reserve(static_cast<std::size_t>(spec.N + 1));
    w.push_back(KernelField{spec, decomp.m2,
                            std::vector<double>(static_cast<std::size_t>(volume), 0.0)});
    for (int j = 1; j <= spec.N; ++j) {
        std::vector<double> next = w.back().values;
        const auto& slice = decomp.slice(j).values;
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += slice[i];
        w.push_back(KernelField{spec, decomp.m2, std::move(next)});
    }
    return w;
}

}
