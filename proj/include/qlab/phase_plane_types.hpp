#pragma once

#include "qlab/dyadic.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace qlab {

/// Time-frequency tile of area 1: I x |I|^{-1}[n, n+1).
struct Tile {
    DyadicInterval time;
    long long freq = 0;

    DyadicInterval freq_interval() const { return {freq, -time.log_len}; }

    bool operator==(const Tile&) const = default;
    auto operator<=>(const Tile&) const = default;
};

/// Quartile of area 4: I x |I|^{-1}[4n, 4(n+1)); children P_0..P_3 are tiles.
struct Quartile {
    DyadicInterval time;
    long long freq = 0;

    DyadicInterval freq_interval() const { return {freq, 2 - time.log_len}; }
    Tile child(int v) const { return {time, 4 * freq + v}; }

    bool operator==(const Quartile&) const = default;
    auto operator<=>(const Quartile&) const = default;
};

struct Tree {
    Quartile top;
    std::vector<Quartile> members;  // kept sorted
    std::optional<int> kind;        // u in {0..3} when this is a u-tree
};

struct QuartileCollection {
    std::vector<Quartile> members;  // kept sorted, unique

    bool contains(const Quartile& q) const;
    void insert(const Quartile& q);
    void erase(const Quartile& q);
    bool empty() const { return members.empty(); }
    size_t size() const { return members.size(); }
};

}  // namespace qlab
