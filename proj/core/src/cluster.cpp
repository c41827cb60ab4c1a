#include "longrange/cluster.hpp"

#include <algorithm>
#include <bit>

namespace longrange {

namespace {

bool spanning_connected(int n, std::uint32_t subgraph, const std::vector<int>& from,
                        const std::vector<int>& to) {
    int parent[8];
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int merges = 0;
    for (std::size_t e = 0; e < from.size(); ++e) {
        if (!(subgraph & (std::uint32_t(1) << e))) continue;
        int a = find(from[e]);
        int b = find(to[e]);
        if (a != b) {
            parent[a] = b;
            ++merges;
        }
    }
    return merges == n - 1;
}

}  // namespace

double UrsellCache::ursell_graph(int n, std::uint32_t edge_mask) {
    if (n < 1 || n > 8) throw config_error("Ursell function requires 1 <= n <= 8");
    if (n == 1) return 1.0;
    const std::uint64_t raw_key = (static_cast<std::uint64_t>(n) << 32) | edge_mask;
    if (auto it = raw_.find(raw_key); it != raw_.end()) return it->second;

    std::uint64_t iso_key = 0;
    bool have_iso = false;
    if (n <= 5) {
        // Canonical form: minimum remapped mask over all vertex permutations.
        int perm[5];
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::uint32_t best = ~std::uint32_t(0);
        do {
            std::uint32_t mapped = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (!(edge_mask & (std::uint32_t(1) << edge_bit(i, j, n)))) continue;
                    int a = perm[i];
                    int b = perm[j];
                    if (a > b) std::swap(a, b);
                    mapped |= std::uint32_t(1) << edge_bit(a, b, n);
                }
            best = std::min(best, mapped);
        } while (std::next_permutation(perm, perm + n));
        iso_key = (static_cast<std::uint64_t>(n) << 32) | best;
        have_iso = true;
        if (auto it = iso_.find(iso_key); it != iso_.end()) {
            raw_.emplace(raw_key, it->second);
            return it->second;
        }
    }

    // Brute force over edge subsets: each connected spanning subgraph
    // contributes the product of its edge weights, (-1)^(#edges).
    std::vector<int> from, to;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge_mask & (std::uint32_t(1) << edge_bit(i, j, n))) {
                from.push_back(i);
                to.push_back(j);
            }
    double value = 0.0;
    const std::uint32_t subgraphs = std::uint32_t(1) << from.size();
    for (std::uint32_t sub = 0; sub < subgraphs; ++sub) {
        if (!spanning_connected(n, sub, from, to)) continue;
        value += (std::popcount(sub) % 2 == 0) ? 1.0 : -1.0;
    }

    raw_.emplace(raw_key, value);
    if (have_iso) iso_.emplace(iso_key, value);
    return value;
}

double UrsellCache::ursell(const BlockGrid& grid, const std::vector<const Polymer*>& tuple) {
    const int n = static_cast<int>(tuple.size());
    if (n < 1 || n > 8) throw config_error("Ursell function requires 1 <= n <= 8");
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (grid.touching(*tuple[static_cast<std::size_t>(i)],
                              *tuple[static_cast<std::size_t>(j)]))
                mask |= std::uint32_t(1) << edge_bit(i, j, n);
    return ursell_graph(n, mask);
}

double ursell(const BlockGrid& grid, const std::vector<Polymer>& tuple) {
    std::vector<const Polymer*> ptrs;
    ptrs.reserve(tuple.size());
    for (const Polymer& p : tuple) ptrs.push_back(&p);
    UrsellCache cache;
    return cache.ursell(grid, ptrs);
}

DerivativeIdentities derivative_identities_check(double g, double nu, double lambda_a,
                                                 double lambda_b, double volume) {
    (void)g;  // multiplies tau^2, degree 4: outside the truncated ring
    Jet v;
    v.c[Jet::ff] = 0.5 * (nu * volume);
    v.c[Jet::saf] = -lambda_a;
    v.c[Jet::sbf] = -lambda_b;

    DerivativeIdentities out;
    out.interaction = jet_exp(-v);
    out.dbar2 = 2.0 * out.interaction.c[Jet::ff];
    out.dbar_dsigma_a = out.interaction.c[Jet::saf];
    out.dbar_dsigma_b = out.interaction.c[Jet::sbf];
    out.exact = out.dbar2 == -(nu * volume) && out.dbar_dsigma_a == lambda_a &&
                out.dbar_dsigma_b == lambda_b && out.interaction.c[Jet::one] == 1.0;
    return out;
}

}
