#include "longrange/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace longrange {

namespace {

constexpr double pi = std::numbers::pi;

// FFTW plan creation/destruction is not thread-safe.
std::mutex fftw_mutex;

void check_budget(const LatticeSpec& spec) {
    if (spec.volume() > max_kernel_entries)
        throw resource_error("kernel of " + std::to_string(spec.volume()) +
                             " entries exceeds the memory budget of " +
                             std::to_string(max_kernel_entries));
}

std::int64_t half_spectrum_size(const LatticeSpec& spec) {
    std::int64_t half = 1;
    for (int i = 0; i < spec.d - 1; ++i) half *= spec.M;
    return half * (spec.M / 2 + 1);
}

}  // namespace

std::vector<double> inverse_dft(const LatticeSpec& spec, const std::vector<double>& multiplier) {
    const std::int64_t volume = spec.volume();
    if (multiplier.size() != static_cast<std::size_t>(volume))
        throw config_error("multiplier grid size does not match the torus volume");
    const int d = spec.d;
    const int m = static_cast<int>(spec.M);
    const std::int64_t half_volume = half_spectrum_size(spec);

    fftw_complex* in;
    double* out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        in = fftw_alloc_complex(static_cast<std::size_t>(half_volume));
        out = fftw_alloc_real(static_cast<std::size_t>(volume));
        if (!in || !out) {
            if (in) fftw_free(in);
            if (out) fftw_free(out);
            throw resource_error("FFTW allocation failed");
        }
        int dims[max_dimension];
        for (int i = 0; i < d; ++i) dims[i] = m;
        plan = fftw_plan_dft_c2r(d, dims, in, out, FFTW_ESTIMATE);
    }

    // Fill the half-spectrum (last coordinate 0..M/2) from the full grid.
    const int last = m / 2 + 1;
    for (std::int64_t idx = 0; idx < half_volume; ++idx) {
        std::int64_t rest = idx;
        std::int64_t klast = rest % last;
        rest /= last;
        std::int64_t full = rest * m + klast;
        in[idx][0] = multiplier[static_cast<std::size_t>(full)];
        in[idx][1] = 0.0;
    }

    fftw_execute(plan);

    std::vector<double> values(static_cast<std::size_t>(volume));
    const double norm = 1.0 / static_cast<double>(volume);
    for (std::int64_t i = 0; i < volume; ++i) values[static_cast<std::size_t>(i)] = out[i] * norm;

    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    return values;
}

std::vector<double> forward_dft(const LatticeSpec& spec, const std::vector<double>& values) {
    const std::int64_t volume = spec.volume();
    if (values.size() != static_cast<std::size_t>(volume))
        throw config_error("kernel row size does not match the torus volume");
    const int d = spec.d;
    const int m = static_cast<int>(spec.M);
    const std::int64_t half_volume = half_spectrum_size(spec);

    double* in;
    fftw_complex* out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        in = fftw_alloc_real(static_cast<std::size_t>(volume));
        out = fftw_alloc_complex(static_cast<std::size_t>(half_volume));
        if (!in || !out) {
            if (in) fftw_free(in);
            if (out) fftw_free(out);
            throw resource_error("FFTW allocation failed");
        }
        int dims[max_dimension];
        for (int i = 0; i < d; ++i) dims[i] = m;
        plan = fftw_plan_dft_r2c(d, dims, in, out, FFTW_ESTIMATE);
    }

    for (std::int64_t i = 0; i < volume; ++i) in[i] = values[static_cast<std::size_t>(i)];
    fftw_execute(plan);

    // Expand the half-spectrum to the full grid. The input row is even under
    // reflection, so the spectrum is real; bins beyond M/2 mirror via
    // conjugate symmetry out(k) = conj(out(-k)).
    std::vector<double> mult(static_cast<std::size_t>(volume));
    const int last = m / 2 + 1;
    for (std::int64_t idx = 0; idx < volume; ++idx) {
        std::int64_t rest = idx;
        std::int64_t klast = rest % m;
        rest /= m;
        std::int64_t half_idx;
        if (klast < last) {
            half_idx = rest * last + klast;
        } else {
            std::int64_t r = rest;
            std::int64_t mirrored = 0;
            std::int64_t stride = 1;
            for (int i = 0; i < d - 1; ++i) {
                std::int64_t c = r % m;
                mirrored += torus_wrap(-c, m) * stride;
                stride *= m;
                r /= m;
            }
            half_idx = mirrored * last + (m - klast);
        }
        mult[static_cast<std::size_t>(idx)] = out[half_idx][0];
    }

    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    return mult;
}

// Multiplier lambda(2 pi m / M)^(alpha/2) over the full momentum grid.
std::vector<double> multiplier_grid(const LatticeSpec& spec) {
    const std::int64_t volume = spec.volume();
    std::vector<double> sin2(static_cast<std::size_t>(spec.M));
    for (std::int64_t j = 0; j < spec.M; ++j) {
        double s = std::sin(pi * static_cast<double>(j) / static_cast<double>(spec.M));
        sin2[static_cast<std::size_t>(j)] = 4.0 * s * s;
    }
    std::vector<double> mult(static_cast<std::size_t>(volume));
    const double half_alpha = 0.5 * spec.alpha;
    for (std::int64_t idx = 0; idx < volume; ++idx) {
        std::int64_t rest = idx;
        double lam = 0.0;
        for (int i = 0; i < spec.d; ++i) {
            lam += sin2[static_cast<std::size_t>(rest % spec.M)];
            rest /= spec.M;
        }
        mult[static_cast<std::size_t>(idx)] = std::pow(lam, half_alpha);
    }
    return mult;
}

double multiplier_lambda(const double* k, int d) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
        double s = std::sin(0.5 * k[i]);
        sum += 4.0 * s * s;
    }
    return sum;
}

KernelField torus_frac_laplacian(const LatticeSpec& spec) {
    check_budget(spec);
    KernelField field{spec, 0.0, {}};
    if (spec.alpha == 2.0) {
        // Exact nearest-neighbour stencil.
        field.values.assign(static_cast<std::size_t>(spec.volume()), 0.0);
        Point origin{0, 0, 0, 0};
        field.values[static_cast<std::size_t>(displacement_index(origin, spec))] = 2.0 * spec.d;
        for (int i = 0; i < spec.d; ++i) {
            Point p{0, 0, 0, 0};
            p[i] = 1;
            double bump = spec.M == 2 ? -2.0 : -1.0;  // +1 and -1 coincide on M = 2
            field.values[static_cast<std::size_t>(displacement_index(p, spec))] = bump;
            if (spec.M > 2) {
                p[i] = spec.M - 1;
                field.values[static_cast<std::size_t>(displacement_index(p, spec))] = -1.0;
            }
        }
        return field;
    }
    field.values = inverse_dft(spec, multiplier_grid(spec));
    return field;
}

KernelField resolvent(const LatticeSpec& spec, double m2) {
    if (m2 < 0.0) throw config_error("resolvent mass m2 must be >= 0");
    if (m2 == 0.0 && !(spec.alpha < spec.d))
        throw config_error("massless Green function requires alpha < d");
    check_budget(spec);
    std::vector<double> mult = multiplier_grid(spec);
    for (auto& v : mult) v = 1.0 / (v + m2);
    if (m2 == 0.0) mult[0] = 0.0;  // zero mode excluded
    KernelField field{spec, m2, inverse_dft(spec, mult)};
    return field;
}

namespace {

// One level of the periodic trapezoid rule (equivalently the n-point DFT
// grid) for the Z^d kernel entry.
double zd_level(const Point& x, int d, double alpha, std::int64_t n) {
    const double half_alpha = 0.5 * alpha;
    std::vector<double> sin2(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        double s = std::sin(pi * static_cast<double>(j) / static_cast<double>(n));
        sin2[static_cast<std::size_t>(j)] = 4.0 * s * s;
    }
    std::vector<std::vector<double>> cosx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        cosx[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
        for (std::int64_t j = 0; j < n; ++j)
            cosx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::cos(2.0 * pi * static_cast<double>(j) * static_cast<double>(x[i]) /
                         static_cast<double>(n));
    }
    double total = 0.0;
    if (d == 1) {
        for (std::int64_t j = 0; j < n; ++j)
            total += std::pow(sin2[static_cast<std::size_t>(j)], half_alpha) *
                     cosx[0][static_cast<std::size_t>(j)];
    } else if (d == 2) {
        for (std::int64_t j0 = 0; j0 < n; ++j0) {
            double s0 = sin2[static_cast<std::size_t>(j0)];
            double c0 = cosx[0][static_cast<std::size_t>(j0)];
            double row = 0.0;
            for (std::int64_t j1 = 0; j1 < n; ++j1)
                row += std::pow(s0 + sin2[static_cast<std::size_t>(j1)], half_alpha) *
                       cosx[1][static_cast<std::size_t>(j1)];
            total += c0 * row;
        }
    } else {
        for (std::int64_t j0 = 0; j0 < n; ++j0) {
            double s0 = sin2[static_cast<std::size_t>(j0)];
            double c0 = cosx[0][static_cast<std::size_t>(j0)];
            for (std::int64_t j1 = 0; j1 < n; ++j1) {
                double s01 = s0 + sin2[static_cast<std::size_t>(j1)];
                double c01 = c0 * cosx[1][static_cast<std::size_t>(j1)];
                double row = 0.0;
                for (std::int64_t j2 = 0; j2 < n; ++j2)
                    row += std::pow(s01 + sin2[static_cast<std::size_t>(j2)], half_alpha) *
                           cosx[2][static_cast<std::size_t>(j2)];
                total += c01 * row;
            }
        }
    }
    double cells = std::pow(static_cast<double>(n), d);
    return total / cells;
}

double tau_level(int d, double alpha, std::int64_t n) {
    // k_i = pi u_i^5 on a midpoint grid over (0, 1)^d.
    const double half_alpha = 0.5 * alpha;
    std::vector<double> sin2(static_cast<std::size_t>(n));
    std::vector<double> wt(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        double u = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        double u2 = u * u;
        double k = pi * u2 * u2 * u;
        double s = std::sin(0.5 * k);
        sin2[static_cast<std::size_t>(j)] = 4.0 * s * s;
        wt[static_cast<std::size_t>(j)] = 5.0 * pi * u2 * u2;
    }
    double total = 0.0;
    if (d == 1) {
        for (std::int64_t j = 0; j < n; ++j)
            total += std::pow(sin2[static_cast<std::size_t>(j)], -half_alpha) *
                     wt[static_cast<std::size_t>(j)];
    } else if (d == 2) {
        for (std::int64_t j0 = 0; j0 < n; ++j0)
            for (std::int64_t j1 = 0; j1 < n; ++j1)
                total += std::pow(sin2[static_cast<std::size_t>(j0)] +
                                      sin2[static_cast<std::size_t>(j1)],
                                  -half_alpha) *
                         wt[static_cast<std::size_t>(j0)] * wt[static_cast<std::size_t>(j1)];
    } else {
        for (std::int64_t j0 = 0; j0 < n; ++j0) {
            double s0 = sin2[static_cast<std::size_t>(j0)];
            double w0 = wt[static_cast<std::size_t>(j0)];
            for (std::int64_t j1 = 0; j1 < n; ++j1) {
                double s01 = s0 + sin2[static_cast<std::size_t>(j1)];
                double w01 = w0 * wt[static_cast<std::size_t>(j1)];
                double row = 0.0;
                for (std::int64_t j2 = 0; j2 < n; ++j2)
                    row += std::pow(s01 + sin2[static_cast<std::size_t>(j2)], -half_alpha) *
                           wt[static_cast<std::size_t>(j2)];
                total += w01 * row;
            }
        }
    }
    double cells = std::pow(static_cast<double>(n), d);
    return total * std::pow(2.0 / (2.0 * pi), d) / cells;
}

constexpr std::int64_t max_level_evals = std::int64_t(1) << 31;

}  // namespace

double zd_frac_laplacian(const Point& x, int d, double alpha, std::int64_t resolution,
                         double tol) {
    if (d < 1 || d > 3) throw config_error("zd_frac_laplacian supports d in [1, 3]");
    if (resolution < 1024) throw config_error("zd_frac_laplacian requires resolution >= 1024");
    if (!(alpha > 0.0) || alpha > 2.0) throw config_error("alpha must lie in (0, 2]");
    double prev = zd_level(x, d, alpha, resolution);
    for (std::int64_t n = 2 * resolution;; n *= 2) {
        double evals = std::pow(static_cast<double>(n), d);
        if (evals > static_cast<double>(max_level_evals))
            throw numerical_error("zd_frac_laplacian did not converge within the refinement cap");
        double cur = zd_level(x, d, alpha, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
}

double greens_diagonal_tau(int d, double alpha, std::int64_t resolution, double tol) {
    if (d < 1 || d > 3) throw config_error("greens_diagonal_tau supports d in [1, 3]");
    if (!(alpha > 0.0) || alpha > 2.0) throw config_error("alpha must lie in (0, 2]");
    if (!(alpha < d)) throw config_error("tau integral diverges for alpha >= d");
    if (resolution < 2) throw config_error("greens_diagonal_tau needs resolution >= 2");
    double prev = tau_level(d, alpha, resolution);
    for (std::int64_t n = 2 * resolution;; n *= 2) {
        double evals = std::pow(static_cast<double>(n), d);
        if (evals > static_cast<double>(max_level_evals))
            throw numerical_error("greens_diagonal_tau did not converge within the refinement cap");
        double cur = tau_level(d, alpha, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
}

}
