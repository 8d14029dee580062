#include "qlab/phase_plane.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qlab {

bool QuartileCollection::contains(const Quartile& q) const {
    return std::binary_search(members.begin(), members.end(), q);
}

void QuartileCollection::insert(const Quartile& q) {
    auto it = std::lower_bound(members.begin(), members.end(), q);
    if (it == members.end() || *it != q) members.insert(it, q);
}

void QuartileCollection::erase(const Quartile& q) {
    auto it = std::lower_bound(members.begin(), members.end(), q);
    if (it != members.end() && *it == q) members.erase(it);
}

bool leq(const DyadicInterval& time, const DyadicInterval& freq,
         const DyadicInterval& time2, const DyadicInterval& freq2) {
    if (time.log_len + freq.log_len != time2.log_len + freq2.log_len)
        throw std::invalid_argument("leq: rectangles of unequal area");
    return time2.contains(time) && freq.contains(freq2);
}

bool leq(const Tile& a, const Tile& b) {
    return leq(a.time, a.freq_interval(), b.time, b.freq_interval());
}

bool leq(const Quartile& a, const Quartile& b) {
    return leq(a.time, a.freq_interval(), b.time, b.freq_interval());
}

bool leq_v(const Quartile& a, const Quartile& b, int v) {
    if (v < 0 || v > 3) throw std::invalid_argument("leq_v: v must be 0..3");
    return leq(a.child(v), b.child(v));
}

std::array<Tree, 4> split_tree(const Tree& t) {
    std::array<Tree, 4> parts;
    for (int v = 0; v < 4; ++v) {
        parts[v].top = t.top;
        parts[v].kind = v;
    }
    for (const auto& p : t.members) {
        bool placed = false;
        for (int v = 0; v < 4; ++v)
            if (leq_v(p, t.top, v)) {
                parts[v].members.push_back(p);
                placed = true;
            }
        if (!placed) throw std::runtime_error("split_tree: member not below the top in any coordinate");
    }
    return parts;
}

std::vector<Quartile> quartiles_between(const Quartile& lo, const Quartile& hi) {
    std::vector<Quartile> out;
    if (!leq(lo, hi)) return out;
    for (int j = lo.time.log_len; j <= hi.time.log_len; ++j) {
        DyadicInterval I = lo.time.ancestor(j);
        // Unique candidate frequency interval of length 2^{2-j} containing omega_hi.
        DyadicInterval whi = hi.freq_interval();
        if (whi.log_len > 2 - j) continue;
        DyadicInterval w = whi.ancestor(2 - j);
        Quartile q{I, w.pos};
        if (leq(lo, q) && leq(q, hi)) out.push_back(q);
    }
    return out;
}

bool is_convex(const QuartileCollection& c) {
    for (const auto& lo : c.members)
        for (const auto& hi : c.members) {
            if (lo.time.log_len >= hi.time.log_len) continue;
            if (!leq(lo, hi)) continue;
            for (const auto& q : quartiles_between(lo, hi))
                if (!c.contains(q)) return false;
        }
    return true;
}

QuartileCollection convexify(const QuartileCollection& c) {
    QuartileCollection out = c;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Quartile> to_add;
        for (const auto& lo : out.members)
            for (const auto& hi : out.members) {
                if (lo.time.log_len >= hi.time.log_len) continue;
                if (!leq(lo, hi)) continue;
                for (const auto& q : quartiles_between(lo, hi))
                    if (!out.contains(q)) to_add.push_back(q);
            }
        for (const auto& q : to_add) {
            out.insert(q);
            changed = true;
        }
    }
    return out;
}

Factorization factorize_wave_packet(const Tree& t, const Quartile& p, int v) {
    if (!t.kind) throw std::invalid_argument("factorize_wave_packet: tree has no kind");
    int u = *t.kind;
    if (!leq_v(p, t.top, u)) throw std::invalid_argument("factorize_wave_packet: member not <=_u top");
    int m = u ^ v;

    StepFunction lhs = wave_packet(p.child(v), PacketNorm::L2);
    StepFunction top_packet = wave_packet(t.top.child(u), PacketNorm::LInf);
    StepFunction cell_packet = wave_packet(Tile{p.time, m}, PacketNorm::L2);
    StepFunction rhs = cell_packet.times(top_packet);

    // Both sides are +-|I_P|^{-1/2} on I_P; read off the sign at one cell.
    int r = std::max(lhs.resolution(), rhs.resolution());
    StepFunction l = lhs.refined(r), rr = rhs.refined(r);
    auto it = l.cells().begin();
    if (it == l.cells().end()) throw std::logic_error("factorize_wave_packet: empty packet");
    ExactScalar lv = it->second[0], rv = rr.value_at_cell(it->first)[0];
    int eps = (lv == rv) ? 1 : -1;
    if (!(lhs == (eps == 1 ? rhs : rhs.scaled(ExactScalar(-1)))))
        throw std::logic_error("factorize_wave_packet: identity failed");
    return {eps, m};
}

namespace {

bool tiles_disjoint(const Tile& a, const Tile& b) {
    return !(a.time.intersects(b.time) && a.freq_interval().intersects(b.freq_interval()));
}

}  // namespace

bool is_good_family(const std::vector<Tree>& trees, int v, int u) {
    if (u == v) throw std::invalid_argument("is_good_family: u == v");
    for (const auto& t : trees)
        for (const auto& p : t.members)
            if (!leq_v(p, t.top, v)) return false;
    for (size_t i = 0; i < trees.size(); ++i)
        for (size_t j = i + 1; j < trees.size(); ++j)
            for (const auto& p : trees[i].members)
                for (const auto& q : trees[j].members)
                    if (!tiles_disjoint(p.child(u), q.child(u))) return false;
    return true;
}

bool in_grid(const Quartile& q, const Grid& grid) {
    int j = q.time.log_len;
    if (j < -grid.N || j > grid.K) return false;
    if (q.time.pos < 0 || q.time.pos >= (1LL << (grid.K - j))) return false;
    return q.freq >= 0 && q.freq < (1LL << (grid.N + j));
}

std::vector<Quartile> grid_quartiles(const Grid& grid) {
    std::vector<Quartile> out;
    for (int j = -grid.N; j <= grid.K; ++j)
        for (long long pos = 0; pos < (1LL << (grid.K - j)); ++pos)
            for (long long n = 0; n < (1LL << (grid.N + j)); ++n)
                out.push_back({DyadicInterval{pos, j}, n});
    return out;
}

}  // namespace qlab
