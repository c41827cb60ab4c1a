#include "longrange/geometry.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace longrange {

std::size_t PolymerHash::operator()(const Polymer& p) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int64_t b : p.blocks) {
        h ^= static_cast<std::size_t>(b) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

BlockGrid::BlockGrid(const LatticeSpec& spec, int j) : spec_(spec), j_(j) {
    if (j < 0 || j > spec.N)
        throw config_error("block scale " + std::to_string(j) + " outside 0.." +
                           std::to_string(spec.N));
    side_ = ipow_checked(spec.L, j);
    per_axis_ = spec.M / side_;
    count_ = 1;
    for (int i = 0; i < spec.d; ++i) count_ *= per_axis_;
}

Point BlockGrid::block_coords(std::int64_t block) const {
    if (block < 0 || block >= count_)
        throw config_error("block index " + std::to_string(block) + " outside 0.." +
                           std::to_string(count_ - 1));
    Point c{0, 0, 0, 0};
    for (int i = spec_.d - 1; i >= 0; --i) {
        c[i] = block % per_axis_;
        block /= per_axis_;
    }
    return c;
}

std::int64_t BlockGrid::block_index(const Point& coords) const {
    std::int64_t idx = 0;
    for (int i = 0; i < spec_.d; ++i) idx = idx * per_axis_ + torus_wrap(coords[i], per_axis_);
    return idx;
}

Point BlockGrid::anchor(std::int64_t block) const {
    Point c = block_coords(block);
    for (int i = 0; i < spec_.d; ++i) c[i] *= side_;
    return c;
}

std::int64_t BlockGrid::block_at(const Point& site) const {
    Point c{0, 0, 0, 0};
    for (int i = 0; i < spec_.d; ++i) c[i] = torus_wrap(site[i], spec_.M) / side_;
    return block_index(c);
}

std::int64_t BlockGrid::block_of_anchor(const Point& a) const {
    for (int i = 0; i < spec_.d; ++i) {
        if (a[i] < 0 || a[i] >= spec_.M || a[i] % side_ != 0)
            throw config_error("anchor coordinate " + std::to_string(a[i]) +
                               " is not a multiple of " + std::to_string(side_) +
                               " in [0, " + std::to_string(spec_.M) + ")");
    }
    return block_at(a);
}

std::vector<Point> BlockGrid::anchors() const {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (std::int64_t b = 0; b < count_; ++b) out.push_back(anchor(b));
    return out;
}

bool BlockGrid::blocks_touch(std::int64_t a, std::int64_t b) const {
    Point ca = block_coords(a);
    Point cb = block_coords(b);
    for (int i = 0; i < spec_.d; ++i)
        if (torus_circ_dist(ca[i] - cb[i], per_axis_) > 1) return false;
    return true;
}

std::vector<std::int64_t> BlockGrid::touching_neighbourhood(std::int64_t b) const {
    Point c = block_coords(b);
    std::vector<std::int64_t> out;
    int offsets[max_dimension] = {0, 0, 0, 0};
    for (int i = 0; i < spec_.d; ++i) offsets[i] = -1;
    while (true) {
        Point shifted = c;
        for (int i = 0; i < spec_.d; ++i) shifted[i] += offsets[i];
        std::int64_t idx = block_index(shifted);
        if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
        int i = 0;
        for (; i < spec_.d; ++i) {
            if (offsets[i] < 1) {
                ++offsets[i];
                break;
            }
            offsets[i] = -1;
        }
        if (i == spec_.d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Polymer BlockGrid::canonical(std::vector<std::int64_t> blocks) const {
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    for (std::int64_t b : blocks)
        if (b < 0 || b >= count_)
            throw config_error("block index " + std::to_string(b) + " outside 0.." +
                               std::to_string(count_ - 1));
    return Polymer{std::move(blocks)};
}

bool BlockGrid::touching(const Polymer& x, const Polymer& y) const {
    for (std::int64_t a : x.blocks)
        for (std::int64_t b : y.blocks)
            if (blocks_touch(a, b)) return true;
    return false;
}

std::vector<Polymer> BlockGrid::components(const Polymer& x) const {
    std::vector<Polymer> out;
    std::vector<bool> seen(x.size(), false);
    for (std::size_t start = 0; start < x.size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::int64_t> comp;
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            comp.push_back(x.blocks[i]);
            for (std::size_t k = 0; k < x.size(); ++k) {
                if (!seen[k] && blocks_touch(x.blocks[i], x.blocks[k])) {
                    seen[k] = true;
                    stack.push_back(k);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(Polymer{std::move(comp)});
    }
    return out;
}

bool BlockGrid::is_connected(const Polymer& x) const {
    return x.empty() || components(x).size() == 1;
}

bool BlockGrid::is_small_set(const Polymer& x) const {
    if (x.empty()) return false;
    if (x.size() > static_cast<std::size_t>(std::int64_t(1) << spec_.d)) return false;
    return is_connected(x);
}

Polymer BlockGrid::small_set_neighbourhood(const Polymer& x) const {
    // Every small set intersecting x contains a block of x, so growing
    // connected sets from each block of x finds them all.
    const std::size_t max_size = static_cast<std::size_t>(std::int64_t(1) << spec_.d);
    std::set<std::int64_t> covered;
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> frontier;
    for (std::int64_t b : x.blocks) frontier.push_back({b});

    constexpr std::size_t state_cap = 1u << 22;
    while (!frontier.empty()) {
        std::vector<std::int64_t> cur = std::move(frontier.back());
        frontier.pop_back();
        if (!seen.insert(cur).second) continue;
        if (seen.size() > state_cap)
            throw resource_error("small-set neighbourhood search exceeded its state budget");
        for (std::int64_t b : cur) covered.insert(b);
        if (cur.size() == max_size) continue;
        for (std::int64_t b : cur) {
            for (std::int64_t c : touching_neighbourhood(b)) {
                if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
                std::vector<std::int64_t> next = cur;
                next.push_back(c);
                std::sort(next.begin(), next.end());
                frontier.push_back(std::move(next));
            }
        }
    }
    return Polymer{std::vector<std::int64_t>(covered.begin(), covered.end())};
}

std::vector<Polymer> BlockGrid::enumerate_connected_polymers(int n,
                                                             std::int64_t touching_block) const {
    if (n < 1 || n > 8) throw config_error("connected-polymer enumeration requires 1 <= n <= 8");
    block_coords(touching_block);  // range check

    // Grow connected sets from every block touching the target block; a
    // connected polymer touching it must contain at least one such block.
    std::vector<std::int64_t> seeds = touching_neighbourhood(touching_block);

    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> frontier;
    for (std::int64_t s : seeds) frontier.push_back({s});
    std::vector<Polymer> out;
    constexpr std::size_t state_cap = 1u << 22;
    while (!frontier.empty()) {
        std::vector<std::int64_t> cur = std::move(frontier.back());
        frontier.pop_back();
        if (!seen.insert(cur).second) continue;
        if (seen.size() > state_cap)
            throw resource_error("connected-polymer enumeration exceeded its state budget");
        if (cur.size() == static_cast<std::size_t>(n)) {
            out.push_back(Polymer{cur});
            continue;
        }
        for (std::int64_t b : cur) {
            for (std::int64_t c : touching_neighbourhood(b)) {
                if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
                std::vector<std::int64_t> next = cur;
                next.push_back(c);
                std::sort(next.begin(), next.end());
                frontier.push_back(std::move(next));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string polymer_to_string(const BlockGrid& grid, const Polymer& p) {
    if (p.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        if (i) out += ";";
        Point a = grid.anchor(p.blocks[i]);
        for (int c = 0; c < grid.spec().d; ++c) {
            if (c) out += ":";
            out += std::to_string(a[c]);
        }
    }
    return out;
}

Polymer polymer_from_string(const BlockGrid& grid, const std::string& text) {
    if (text == "-" || text.empty()) return Polymer{};
    std::vector<std::int64_t> blocks;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(start, end - start);
        Point a{0, 0, 0, 0};
        std::size_t cstart = 0;
        for (int c = 0; c < grid.spec().d; ++c) {
            std::size_t cend = item.find(':', cstart);
            if (cend == std::string::npos) cend = item.size();
            if (cstart >= item.size())
                throw config_error("polymer anchor '" + item + "' has fewer than " +
                                   std::to_string(grid.spec().d) + " coordinates");
            std::size_t pos = 0;
            try {
                a[c] = std::stoll(item.substr(cstart, cend - cstart), &pos);
            } catch (const std::exception&) {
                throw config_error("polymer anchor '" + item + "' is not numeric");
            }
            if (pos != cend - cstart)
                throw config_error("polymer anchor '" + item + "' is not numeric");
            cstart = cend + 1;
        }
        if (cstart <= item.size())
            throw config_error("polymer anchor '" + item + "' has more than " +
                               std::to_string(grid.spec().d) + " coordinates");
        blocks.push_back(grid.block_of_anchor(a));
        start = end + 1;
    }
    return grid.canonical(std::move(blocks));
}

}
