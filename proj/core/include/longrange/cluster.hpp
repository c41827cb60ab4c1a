#pragma once

// Polymer-gas machinery: Ursell functions of touching graphs, the truncated
// cluster series for log z, the exact brute-force partition function on small
// tori, and the per-block convergence sums. All of it is templated over the
// coefficient ring (double or Jet).

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "longrange/geometry.hpp"
#include "longrange/jet.hpp"

namespace longrange {

template <class T>
using ClusterActivity = std::unordered_map<Polymer, T, PolymerHash>;

inline double activity_norm(double v) { return std::abs(v); }
inline double activity_norm(const Jet& v) { return v.l1_norm(); }

template <class T>
T activity_one() {
    if constexpr (std::is_same_v<T, Jet>)
        return Jet::constant(1.0);
    else
        return 1.0;
}

// Ursell function u(X_1..X_n) of the touching graph with edge weights -1:
// the sum over connected spanning subgraphs of the product of edge weights.
// Computed by brute force over edge subsets with a connectivity filter,
// memoized by raw edge mask and (n <= 5) by graph isomorphism class. A cache
// instance is not synchronized; use one per thread or invocation.
class UrsellCache {
  public:
    // Edge mask over pairs i < j in the standard order (0,1),(0,2),..,(1,2),..
    double ursell_graph(int n, std::uint32_t edge_mask);

    double ursell(const BlockGrid& grid, const std::vector<const Polymer*>& tuple);

  private:
    std::unordered_map<std::uint64_t, double> raw_;
    std::unordered_map<std::uint64_t, double> iso_;
};

// One-shot convenience around UrsellCache.
double ursell(const BlockGrid& grid, const std::vector<Polymer>& tuple);

inline int edge_bit(int i, int j, int n) {
    // bits for pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

template <class T>
struct ClusterSeries {
    T log_z{};
    std::vector<double> order_l1;  // magnitude of each series order 1..n_max
    double tail_estimate = 0.0;    // geometric extrapolation beyond n_max
};

namespace cluster_detail {

template <class T>
std::vector<const Polymer*> validated_support(const BlockGrid& grid,
                                              const ClusterActivity<T>& activity) {
    std::vector<const Polymer*> support;
    support.reserve(activity.size());
    for (const auto& [polymer, value] : activity) {
        if (polymer.empty()) throw config_error("activity on the empty polymer");
        if (!grid.is_connected(polymer))
            throw config_error("activity on disconnected polymer " +
                               polymer_to_string(grid, polymer));
        (void)value;
        support.push_back(&polymer);
    }
    return support;
}

}  // namespace cluster_detail

// Truncated cluster series log z = sum_{n<=n_max} (1/n!) sum over ordered
// tuples of support polymers of p(X_1)..p(X_n) u(X_1,..,X_n). Repeats are
// allowed; the tail estimate extrapolates the per-order magnitudes
// geometrically.
template <class T>
ClusterSeries<T> log_partition(const BlockGrid& grid, const ClusterActivity<T>& activity,
                               int n_max) {
    if (n_max < 1 || n_max > 6) throw config_error("cluster series requires 1 <= n_max <= 6");
    std::vector<const Polymer*> support = cluster_detail::validated_support(grid, activity);
    const std::size_t s = support.size();

    double tuples = 0.0;
    for (int n = 1; n <= n_max; ++n) tuples += std::pow(static_cast<double>(s), n);
    if (tuples > static_cast<double>(1 << 24))
        throw resource_error("cluster series over " + std::to_string(s) +
                             " polymers at order " + std::to_string(n_max) +
                             " exceeds the tuple budget");

    std::vector<std::vector<bool>> touch(s, std::vector<bool>(s, false));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = i; k < s; ++k)
            touch[i][k] = touch[k][i] = grid.touching(*support[i], *support[k]);

    std::vector<T> values;
    values.reserve(s);
    for (std::size_t i = 0; i < s; ++i) values.push_back(activity.at(*support[i]));

    UrsellCache cache;
    ClusterSeries<T> out;
    double factorial = 1.0;
    for (int n = 1; n <= n_max && s > 0; ++n) {
        factorial *= n;
        T order_sum{};
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        while (true) {
            std::uint32_t mask = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (touch[idx[static_cast<std::size_t>(i)]][idx[static_cast<std::size_t>(j)]])
                        mask |= std::uint32_t(1) << edge_bit(i, j, n);
            double u = cache.ursell_graph(n, mask);
            if (u != 0.0) {
                T prod = values[idx[0]];
                for (int i = 1; i < n; ++i) prod = prod * values[idx[static_cast<std::size_t>(i)]];
                order_sum += prod * (u / factorial);
            }
            int pos = n - 1;
            for (; pos >= 0; --pos) {
                if (++idx[static_cast<std::size_t>(pos)] < s) break;
                idx[static_cast<std::size_t>(pos)] = 0;
            }
            if (pos < 0) break;
        }
        out.order_l1.push_back(activity_norm(order_sum));
        out.log_z += order_sum;
    }

    const std::size_t k = out.order_l1.size();
    if (k >= 2 && out.order_l1[k - 2] > 0.0 && out.order_l1[k - 1] > 0.0) {
        double ratio = out.order_l1[k - 1] / out.order_l1[k - 2];
        out.tail_estimate = ratio < 1.0 ? out.order_l1[k - 1] * ratio / (1.0 - ratio)
                                        : std::numeric_limits<double>::infinity();
    }
    return out;
}

// Exact partition function on a small torus: sum over all 2^(#blocks) block
// subsets of the product of component activities (absent components are 0).
template <class T>
T partition_bruteforce(const BlockGrid& grid, const ClusterActivity<T>& activity) {
    if (grid.block_count() > 16)
        throw config_error("brute-force partition limited to 16 blocks, got " +
                           std::to_string(grid.block_count()));
    cluster_detail::validated_support(grid, activity);
    const int nb = static_cast<int>(grid.block_count());
    T z{};
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << nb); ++mask) {
        std::vector<std::int64_t> blocks;
        for (int b = 0; b < nb; ++b)
            if (mask & (std::uint32_t(1) << b)) blocks.push_back(b);
        T term = activity_one<T>();
        bool dead = false;
        for (const Polymer& comp : grid.components(Polymer{blocks})) {
            auto it = activity.find(comp);
            if (it == activity.end()) {
                dead = true;
                break;
            }
            term = term * it->second;
        }
        if (!dead) z += term;
    }
    return z;
}

template <class T>
struct ConvergenceReport {
    double threshold = 0.0;
    std::vector<double> per_block;  // sum over touching support of |p| e^(|Y|)
    std::vector<bool> within;
};

// Lemma-style convergence sums: for each block B, the sum over support
// polymers touching B of ||p(Y)|| e^(|Y|).
template <class T>
ConvergenceReport<T> convergence_check(const BlockGrid& grid, const ClusterActivity<T>& activity,
                                       double threshold) {
    std::vector<const Polymer*> support = cluster_detail::validated_support(grid, activity);
    ConvergenceReport<T> report;
    report.threshold = threshold;
    report.per_block.assign(static_cast<std::size_t>(grid.block_count()), 0.0);
    for (const Polymer* y : support) {
        double weight = activity_norm(activity.at(*y)) *
                        std::exp(static_cast<double>(y->size()));
        for (std::int64_t b = 0; b < grid.block_count(); ++b) {
            if (grid.touching(Polymer{{b}}, *y))
                report.per_block[static_cast<std::size_t>(b)] += weight;
        }
    }
    for (double v : report.per_block) report.within.push_back(v <= threshold);
    return report;
}

struct DerivativeIdentities {
    Jet interaction;  // jet of exp(-V(Lambda)) at zero field
    double dbar2 = 0.0;
    double dbar_dsigma_a = 0.0;
    double dbar_dsigma_b = 0.0;
    bool exact = false;
};

// Builds the jet of exp(-V(Lambda)) at zero field for the potential with
// couplings (g, nu, lambda_a, lambda_b) on volume |Lambda| and checks the
// derivative identities D^2 = -nu |Lambda| and D D_sigma = lambda exactly.
// The quartic coupling g multiplies a degree-4 monomial and drops out.
DerivativeIdentities derivative_identities_check(double g, double nu, double lambda_a,
                                                 double lambda_b, double volume);

}
