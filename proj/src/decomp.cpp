#include "qlab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qlab {

namespace {

std::string interval_str(const DyadicInterval& I) {
    std::ostringstream os;
    os << "[" << I.left().to_decimal_string() << ", " << I.right().to_decimal_string() << ")";
    return os.str();
}

bool interval_family_convex(const std::set<DyadicInterval>& family) {
    for (const auto& lo : family)
        for (const auto& hi : family) {
            if (!(lo.log_len < hi.log_len && hi.contains(lo))) continue;
            DyadicInterval I = lo;
            while (I.log_len < hi.log_len) {
                if (!family.count(I)) return false;
                I = I.parent();
            }
        }
    return true;
}

}  // namespace

ConvexCorrection convex_correction(const std::vector<DyadicInterval>& family,
                                   const StepFunction& f, double lambda,
                                   const NormedSpace& space) {
    std::set<DyadicInterval> J(family.begin(), family.end());
    if (J.empty()) throw std::invalid_argument("convex_correction: empty family");
    if (!interval_family_convex(J))
        throw std::invalid_argument("convex_correction: family is not convex");
    for (const auto& I : J) {
        double a = space.norm(f.average(I));
        if (a > lambda + 1e-12)
            throw std::invalid_argument("convex_correction: |<f>_J| > lambda at J = " +
                                        interval_str(I));
    }

    ConvexCorrection out;
    for (const auto& E : J) {
        // Children below f's resolution are inside a constant cell; replacing
        // f by its average there changes nothing, so they are not bad.
        if (E.log_len <= -f.resolution()) continue;
        bool exc = false;
        for (const DyadicInterval& B : {E.left_child(), E.right_child()})
            if (!J.count(B)) {
                out.bad.push_back(B);
                exc = true;
            }
        if (exc) out.exceptional.push_back(E);
    }

    int res = f.resolution();
    for (const auto& B : out.bad) res = std::max(res, -B.log_len);

    // Maximal members cover the domain; start from f there.
    StepFunction g(res, f.support_bound(), f.dim(), f.space_tag());
    StepFunction fr = f.refined(res);
    for (const auto& I : J) {
        if (J.count(I.parent()) && I.parent().log_len <= f.support_bound()) continue;
        long long first = I.pos << (res + I.log_len);
        long long count = 1LL << (res + I.log_len);
        for (long long c = first; c < first + count; ++c) g.set_cell(c, fr.value_at_cell(c));
    }

    for (const auto& B : out.bad) {
        // Sibling in the family: transfer the exact average of f over B; both
        // children bad: the parent's average lands on each half.
        Coord val = J.count(B.sibling()) ? f.average(B) : f.average(B.parent());
        long long first = B.pos << (res + B.log_len);
        long long count = 1LL << (res + B.log_len);
        for (long long c = first; c < first + count; ++c) g.set_cell(c, val);
    }
    out.g = std::move(g);
    return out;
}

TreeLemmaReport tree_lemma_check(const Tree& t, const TrilinearForm& Pi,
                                 const std::array<const StepFunction*, 3>& f,
                                 const std::array<double, 3>& q,
                                 const std::array<NormedSpace, 3>& spaces, const Grid& grid) {
    QuartileCollection coll;
    for (const auto& p : t.members) coll.insert(p);
    TreeLemmaReport rep;
    LambdaResult lr = lambda_form(coll, Pi, *f[0], *f[1], *f[2], /*absolute=*/true);
    rep.lambda_abs = lr.total.to_double();
    double denom = std::ldexp(1.0, t.top.time.log_len);
    PacketCache pc;
    for (int i = 0; i < 3; ++i)
        denom *= size(coll, i + 1, q[i], *f[i], spaces[i], grid, SizeMethod::FullTreeSup, &pc).value;
    rep.denom = denom;
    if (denom <= 0.0) {
        rep.degenerate = true;
        return rep;
    }
    rep.ratio = rep.lambda_abs / denom;
    return rep;
}

namespace {

DyadicRational tile_center(const Quartile& top, int u) {
    DyadicInterval w = top.child(u).freq_interval();
    return DyadicRational(BigInt(2 * w.pos + 1), 1 - w.log_len);
}

StepFunction tree_sum_from_pairs(const std::vector<Quartile>& members, int v,
                                 const std::map<Quartile, Coord>& pairs, int dim,
                                 PacketCache& pc) {
    StepFunction sum(0, 0, dim);
    for (const auto& p : members) {
        const Coord& c = pairs.at(p);
        bool zero = true;
        for (const auto& x : c) if (!x.is_zero()) { zero = false; break; }
        if (zero) continue;
        const StepFunction& w = pc.l2(p.child(v));
        StepFunction term(w.resolution(), w.support_bound(), dim);
        for (const auto& [i, wv] : w.cells()) {
            Coord val(dim);
            for (int d = 0; d < dim; ++d) val[d] = c[d] * wv[0];
            term.set_cell(i, std::move(val));
        }
        sum = sum + term;
    }
    return sum;
}

}  // namespace

SizeLemmaResult size_lemma_extract(const QuartileCollection& P, int v, double q,
                                   const StepFunction& f, const NormedSpace& space,
                                   const Grid& grid) {
    if (!is_convex(P)) throw std::invalid_argument("size_lemma_extract: input not convex");
    SizeLemmaResult out;
    PacketCache pc;
    out.energy = size(P, v, q, f, space, grid, SizeMethod::FullTreeSup, &pc).value;
    out.threshold = out.energy * std::pow(2.0, -1.0 / q);
    QuartileCollection current = P;
    if (out.energy > 0.0) {
        std::map<Quartile, Coord> pairs = pairing_coefficients(P.members, v, f, &pc);
        auto delta = [&](const Quartile& top, int u) {
            std::vector<Quartile> part;
            for (const auto& p : current.members)
                if (leq_v(p, top, u)) part.push_back(p);
            if (part.empty()) return 0.0;
            StepFunction s = tree_sum_from_pairs(part, v, pairs, f.dim(), pc);
            return lp_norm(s, q, space) *
                   std::pow(std::ldexp(1.0, -top.time.log_len), 1.0 / q);
        };
        for (int u = 0; u < 4; ++u) {
            if (u == v) continue;
            while (!current.empty()) {
                std::vector<Quartile> qualifying;
                for (const auto& top : candidate_tops(current, u, grid))
                    if (delta(top, u) > out.threshold) qualifying.push_back(top);
                if (qualifying.empty()) break;
                std::vector<Quartile> maximal;
                for (const auto& t : qualifying) {
                    bool dominated = false;
                    for (const auto& t2 : qualifying)
                        if (t != t2 && leq(t, t2)) { dominated = true; break; }
                    if (!dominated) maximal.push_back(t);
                }
                // u > v wants the minimal frequency center, u < v the maximal;
                // ties break on lexicographically smallest (position, scale).
                const Quartile* pick = &maximal.front();
                for (const auto& t : maximal) {
                    DyadicRational ct = tile_center(t, u), cp = tile_center(*pick, u);
                    bool better = u > v ? ct < cp : cp < ct;
                    if (!better && ct == cp)
                        better = std::pair(t.time.pos, t.time.log_len) <
                                 std::pair(pick->time.pos, pick->time.log_len);
                    if (better) pick = &t;
                }
                Tree tree;
                tree.top = *pick;
                tree.kind = u;
                for (const auto& p : current.members)
                    if (leq(p, tree.top)) tree.members.push_back(p);
                for (const auto& p : tree.members) current.erase(p);
                out.top_length_sum += std::ldexp(1.0, tree.top.time.log_len);
                out.trees.push_back(std::move(tree));
            }
        }
    }
    out.residual = std::move(current);
    double fq = lp_norm(f, q, space);
    if (fq > 0.0)
        out.counting_ratio = out.top_length_sum * std::pow(out.energy, q) / std::pow(fq, q);
    return out;
}

namespace {

bool pairings_all_zero(const QuartileCollection& c,
                       const std::array<const StepFunction*, 3>& f, PacketCache& pc) {
    for (const auto& p : c.members)
        for (int i = 0; i < 3; ++i)
            for (const auto& x : inner_product(*f[i], pc.l2(p.child(i + 1))))
                if (!x.is_zero()) return false;
    return true;
}

}  // namespace

DecompositionResult full_decomposition(const QuartileCollection& P,
                                       const std::array<const StepFunction*, 3>& f,
                                       const std::array<double, 3>& q,
                                       const std::array<NormedSpace, 3>& spaces,
                                       const Grid& grid) {
    DecompositionResult out;
    PacketCache pc;
    for (int i = 0; i < 3; ++i) out.norms[i] = lp_norm(*f[i], q[i], spaces[i]);

    int n0 = 0;
    bool have = false;
    for (int i = 0; i < 3; ++i) {
        double s = size(P, i + 1, q[i], *f[i], spaces[i], grid, SizeMethod::FullTreeSup, &pc).value;
        if (s <= 0.0 || out.norms[i] <= 0.0) continue;
        int ni = static_cast<int>(std::ceil(q[i] * std::log2(s / out.norms[i]) - 1e-12));
        // 2^{n/q} ||f|| can undershoot by a rounding hair; bump until it holds.
        while (std::pow(2.0, ni / q[i]) * out.norms[i] < s * (1.0 - 1e-12)) ++ni;
        if (!have || ni > n0) { n0 = ni; have = true; }
    }
    out.n_start = n0;

    QuartileCollection current = P;
    int n = n0;
    while (!current.empty() && !pairings_all_zero(current, f, pc)) {
        DecompositionLevel lvl;
        for (int i = 0; i < 3; ++i) {
            SizeLemmaResult r = size_lemma_extract(current, i + 1, q[i], *f[i], spaces[i], grid);
            for (auto& t : r.trees) lvl.trees.push_back(std::move(t));
            current = std::move(r.residual);
        }
        if (lvl.trees.empty()) break;  // sizes vanished despite nonzero pairings
        for (const auto& t : lvl.trees)
            lvl.top_length_sum += std::ldexp(1.0, t.top.time.log_len);
        lvl.counting_constant = lvl.top_length_sum * std::ldexp(1.0, n);
        out.levels[n] = std::move(lvl);
        --n;
    }
    out.residual = std::move(current);
    return out;
}

DecompositionCheck verify_decomposition(const DecompositionResult& result,
                                        const QuartileCollection& P,
                                        const std::array<const StepFunction*, 3>& f,
                                        const std::array<double, 3>& q,
                                        const std::array<NormedSpace, 3>& spaces,
                                        const Grid& grid) {
    DecompositionCheck check;
    PacketCache pc;

    QuartileCollection seen;
    bool disjoint = true;
    auto add_all = [&](const std::vector<Quartile>& qs) {
        for (const auto& p : qs) {
            if (seen.contains(p)) disjoint = false;
            seen.insert(p);
        }
    };
    for (const auto& [n, lvl] : result.levels)
        for (const auto& t : lvl.trees) add_all(t.members);
    add_all(result.residual.members);
    check.partition_ok = disjoint && seen.members == P.members;

    check.trees_convex = true;
    check.sizes_ok = true;
    for (const auto& [n, lvl] : result.levels)
        for (const auto& t : lvl.trees) {
            QuartileCollection c;
            for (const auto& p : t.members) c.insert(p);
            if (!is_convex(c)) check.trees_convex = false;
            for (int i = 0; i < 3; ++i) {
                double s =
                    size(c, i + 1, q[i], *f[i], spaces[i], grid, SizeMethod::FullTreeSup, &pc).value;
                double bound = std::pow(2.0, n / q[i]) * result.norms[i];
                if (s > bound * (1.0 + 1e-9) + 1e-15) check.sizes_ok = false;
            }
        }
    check.residual_convex = is_convex(result.residual);
    check.residual_zero = pairings_all_zero(result.residual, f, pc);
    return check;
}

}  // namespace qlab
