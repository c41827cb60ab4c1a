#pragma once

// Block geometry on the torus: scale-j blocks, polymers (sets of blocks),
// touching and connectivity under sup-norm adjacency, small sets and their
// neighbourhoods, the circle product, and connected-polymer enumeration.
//
// Two blocks touch iff their point sets lie within sup-distance 1; for blocks
// of side L^j that is the same as circular block-index distance <= 1 in every
// coordinate, which is what the implementation uses.

#include <cstdint>
#include <string>
#include <vector>

#include "longrange/lattice.hpp"

namespace longrange {

// A polymer at a fixed scale: sorted, duplicate-free block indices (row-major
// over the block grid). The empty polymer is allowed.
struct Polymer {
    std::vector<std::int64_t> blocks;

    std::size_t size() const { return blocks.size(); }
    bool empty() const { return blocks.empty(); }
    friend bool operator==(const Polymer&, const Polymer&) = default;
    friend auto operator<=>(const Polymer&, const Polymer&) = default;
};

struct PolymerHash {
    std::size_t operator()(const Polymer& p) const;
};

class BlockGrid {
  public:
    BlockGrid(const LatticeSpec& spec, int j);

    const LatticeSpec& spec() const { return spec_; }
    int scale() const { return j_; }
    std::int64_t side() const { return side_; }
    std::int64_t per_axis() const { return per_axis_; }
    std::int64_t block_count() const { return count_; }

    // Canonical anchor of a block (coordinates multiples of L^j in [0, M)).
    Point anchor(std::int64_t block) const;
    // Block containing a lattice site.
    std::int64_t block_at(const Point& site) const;
    // Block with the given anchor; the anchor must be canonical.
    std::int64_t block_of_anchor(const Point& anchor) const;
    // All blocks of the grid, in index order.
    std::vector<Point> anchors() const;

    bool blocks_touch(std::int64_t a, std::int64_t b) const;
    // All blocks touching b (b itself included), sorted.
    std::vector<std::int64_t> touching_neighbourhood(std::int64_t b) const;

    // Sorts, deduplicates, and range-checks block indices.
    Polymer canonical(std::vector<std::int64_t> blocks) const;

    bool touching(const Polymer& x, const Polymer& y) const;
    std::vector<Polymer> components(const Polymer& x) const;
    bool is_connected(const Polymer& x) const;

    // Connected and at most 2^d blocks (the empty polymer is not small).
    bool is_small_set(const Polymer& x) const;
    // Union of all small sets intersecting x.
    Polymer small_set_neighbourhood(const Polymer& x) const;

    // All connected n-block polymers touching the given block, each once.
    std::vector<Polymer> enumerate_connected_polymers(int n, std::int64_t touching_block) const;

  private:
    LatticeSpec spec_;
    int j_ = 0;
    std::int64_t side_ = 1;
    std::int64_t per_axis_ = 1;
    std::int64_t count_ = 1;

    Point block_coords(std::int64_t block) const;
    std::int64_t block_index(const Point& coords) const;
};

// Printable anchor list, e.g. "0;4" (d = 1) or "0:2;4:2" (d = 2, coordinates
// joined by ':'); blocks separated by ';'. The empty polymer prints as "-".
std::string polymer_to_string(const BlockGrid& grid, const Polymer& p);
Polymer polymer_from_string(const BlockGrid& grid, const std::string& text);

// (F1 o F2)(Y) = sum over block-subsets X of Y of F1(Y minus X) F2(X).
// Requires |Y| <= 20; F1, F2 map polymers to a commutative algebra.
template <class T, class F1, class F2>
T circle_product(const Polymer& y, F1&& f1, F2&& f2) {
    if (y.size() > 20) throw config_error("circle product limited to 20 blocks");
    const std::size_t n = y.size();
    T total{};
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Polymer in, out;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i))
                in.blocks.push_back(y.blocks[i]);
            else
                out.blocks.push_back(y.blocks[i]);
        }
        total += f1(out) * f2(in);
    }
    return total;
}

}
