#include "qlab/sizes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qlab {

StepFunction tree_sum(const std::vector<Quartile>& members, int v, const StepFunction& f,
                      PacketCache* cache) {
    PacketCache local;
    PacketCache& pc = cache ? *cache : local;
    StepFunction sum(f.resolution(), f.support_bound(), f.dim(), f.space_tag());
    for (const auto& p : members) {
        const StepFunction& w = pc.l2(p.child(v));
        Coord c = inner_product(f, w);
        bool zero = true;
        for (const auto& x : c) if (!x.is_zero()) { zero = false; break; }
        if (zero) continue;
        // c (x) w: each coordinate of c times the scalar packet.
        StepFunction term(w.resolution(), w.support_bound(), f.dim(), f.space_tag());
        for (const auto& [i, wv] : w.cells()) {
            Coord val(f.dim());
            for (int d = 0; d < f.dim(); ++d) val[d] = c[d] * wv[0];
            term.set_cell(i, std::move(val));
        }
        sum = sum + term;
    }
    return sum;
}

std::map<Quartile, Coord> pairing_coefficients(const std::vector<Quartile>& members, int v,
                                               const StepFunction& f, PacketCache* cache) {
    PacketCache local;
    PacketCache& pc = cache ? *cache : local;
    std::map<Quartile, Coord> out;
    for (const auto& p : members) out[p] = inner_product(f, pc.l2(p.child(v)));
    return out;
}

std::vector<Quartile> candidate_tops(const QuartileCollection& c, int u, const Grid& grid) {
    std::set<Quartile> tops;
    for (const auto& p : c.members) {
        DyadicInterval wu = p.child(u).freq_interval();
        for (int j = p.time.log_len; j <= grid.K; ++j) {
            DyadicInterval I = p.time.ancestor(j);
            // omega_{T_u} runs over the dyadic subintervals of omega_{P_u} of
            // length 2^-j whose tile index is u mod 4.
            int dj = j - p.time.log_len;
            long long start = wu.pos << dj;
            for (long long q = start; q < start + (1LL << dj); ++q)
                if ((q & 3) == u) tops.insert({I, q >> 2});
        }
    }
    return {tops.begin(), tops.end()};
}

namespace {

double tree_norm_ratio(const std::vector<Quartile>& members, const Quartile& top, int v, double p,
                       const StepFunction& f, const NormedSpace& space, PacketCache* cache) {
    if (members.empty()) return 0.0;
    StepFunction s = tree_sum(members, v, f, cache);
    double nrm = lp_norm(s, p, space);
    return nrm * std::pow(std::ldexp(1.0, -top.time.log_len), 1.0 / p);
}

}  // namespace

SizeReport size(const QuartileCollection& c, int v, double p, const StepFunction& f,
                const NormedSpace& space, const Grid& grid, SizeMethod method,
                PacketCache* cache) {
    if (method == SizeMethod::ExhaustiveSubsets && c.size() > 12)
        throw std::invalid_argument("size: exhaustive method capped at 12 members");
    PacketCache local;
    PacketCache& pc = cache ? *cache : local;
    SizeReport rep;
    rep.v = v;
    rep.p = p;
    rep.method = method;
    for (int u = 0; u < 4; ++u) {
        if (u == v) continue;
        for (const auto& top : candidate_tops(c, u, grid)) {
            std::vector<Quartile> members;
            for (const auto& q : c.members)
                if (leq_v(q, top, u)) members.push_back(q);
            if (members.empty()) continue;
            if (method == SizeMethod::FullTreeSup) {
                double val = tree_norm_ratio(members, top, v, p, f, space, &pc);
                if (val > rep.value) {
                    rep.value = val;
                    rep.witness = Tree{top, members, u};
                }
            } else {
                size_t n = members.size();
                for (size_t mask = 1; mask < (1ULL << n); ++mask) {
                    std::vector<Quartile> sub;
                    for (size_t i = 0; i < n; ++i)
                        if (mask & (1ULL << i)) sub.push_back(members[i]);
                    double val = tree_norm_ratio(sub, top, v, p, f, space, &pc);
                    if (val > rep.value) {
                        rep.value = val;
                        rep.witness = Tree{top, sub, u};
                    }
                }
            }
        }
    }
    return rep;
}

double delta_u(const Tree& t, int u, int v, double q, const StepFunction& f,
               const NormedSpace& space, PacketCache* cache) {
    if (u == v) throw std::invalid_argument("delta_u: u == v");
    std::vector<Quartile> part;
    for (const auto& p : t.members)
        if (leq_v(p, t.top, u)) part.push_back(p);
    return tree_norm_ratio(part, t.top, v, q, f, space, cache);
}

QuartileTypeEstimate estimate_quartile_type(const NormedSpace& space, double q,
                                            const std::vector<std::vector<Tree>>& families,
                                            int v, int u, const StepFunction& f) {
    double fq = lp_norm(f, q, space);
    if (fq <= 0.0) throw std::invalid_argument("estimate_quartile_type: f has zero norm");
    QuartileTypeEstimate est;
    est.q = q;
    PacketCache pc;
    for (size_t fi = 0; fi < families.size(); ++fi) {
        if (!is_good_family(families[fi], v, u))
            throw std::invalid_argument("estimate_quartile_type: family " + std::to_string(fi) +
                                        " is not (" + std::to_string(v) + "," + std::to_string(u) +
                                        ")-good");
        double acc = 0.0;
        for (const auto& t : families[fi]) {
            StepFunction s = tree_sum(t.members, u, f, &pc);
            acc += std::pow(lp_norm(s, q, space), q);
        }
        double ratio = std::pow(acc, 1.0 / q) / fq;
        if (ratio > est.worst_ratio || est.witness_family < 0) {
            est.worst_ratio = ratio;
            est.witness_family = static_cast<int>(fi);
        }
    }
    return est;
}

SizeEquivalenceReport size_equivalence_report(const QuartileCollection& c, int v,
                                              const StepFunction& f, const NormedSpace& space,
                                              const Grid& grid, const std::vector<double>& p_list) {
    SizeEquivalenceReport rep;
    PacketCache cache;
    for (double p : p_list) {
        SizeReport r = size(c, v, p, f, space, grid, SizeMethod::FullTreeSup, &cache);
        rep.rows.push_back({p, r.value});
    }
    size_t n = rep.rows.size();
    rep.ratios.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (rep.rows[j].value > 0.0) rep.ratios[i][j] = rep.rows[i].value / rep.rows[j].value;
    return rep;
}

}  // namespace qlab
