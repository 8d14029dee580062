#include "qlab/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace qlab {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json float_json(double x) { return Json(format_double(x)); }

double float_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    return std::stod(j.get<std::string>());
}

void to_json(Json& j, const DyadicRational& x) {
    j = Json::array({x.numerator().str(), x.scale()});
}

void from_json(const Json& j, DyadicRational& x) {
    x = DyadicRational(BigInt(j.at(0).get<std::string>()), j.at(1).get<int>());
}

void to_json(Json& j, const ExactScalar& x) {
    j = Json::array({x.a, x.b});
}

void from_json(const Json& j, ExactScalar& x) {
    x = ExactScalar(j.at(0).get<DyadicRational>(), j.at(1).get<DyadicRational>());
}

void to_json(Json& j, const DyadicInterval& I) {
    j = Json{{"pos", I.pos}, {"log_len", I.log_len}};
}

void from_json(const Json& j, DyadicInterval& I) {
    I.pos = j.at("pos").get<long long>();
    I.log_len = j.at("log_len").get<int>();
}

void to_json(Json& j, const Tile& t) {
    j = Json{{"time", t.time}, {"freq", t.freq}};
}

void from_json(const Json& j, Tile& t) {
    t.time = j.at("time").get<DyadicInterval>();
    t.freq = j.at("freq").get<long long>();
}

void to_json(Json& j, const Quartile& q) {
    j = Json{{"time", q.time}, {"freq", q.freq}};
}

void from_json(const Json& j, Quartile& q) {
    q.time = j.at("time").get<DyadicInterval>();
    q.freq = j.at("freq").get<long long>();
}

void to_json(Json& j, const Tree& t) {
    j = Json{{"top", t.top}, {"members", t.members}};
    if (t.kind) j["kind"] = *t.kind;
}

void from_json(const Json& j, Tree& t) {
    t.top = j.at("top").get<Quartile>();
    t.members = j.at("members").get<std::vector<Quartile>>();
    t.kind.reset();
    if (j.contains("kind")) t.kind = j.at("kind").get<int>();
}

void to_json(Json& j, const QuartileCollection& c) { j = Json{{"members", c.members}}; }

void from_json(const Json& j, QuartileCollection& c) {
    c.members.clear();
    for (const auto& q : j.at("members")) c.insert(q.get<Quartile>());
}

void to_json(Json& j, const StepFunction& f) {
    Json cells = Json::array();
    for (const auto& [i, v] : f.cells()) cells.push_back(Json::array({i, v}));
    j = Json{{"resolution", f.resolution()},
             {"support_bound", f.support_bound()},
             {"dim", f.dim()},
             {"space", f.space_tag()},
             {"cells", std::move(cells)}};
}

void from_json(const Json& j, StepFunction& f) {
    f = StepFunction(j.at("resolution").get<int>(), j.at("support_bound").get<int>(),
                     j.at("dim").get<int>(), j.value("space", std::string()));
    for (const auto& cell : j.at("cells"))
        f.set_cell(cell.at(0).get<long long>(), cell.at(1).get<Coord>());
}

void to_json(Json& j, const Grid& g) { j = Json{{"K", g.K}, {"N", g.N}}; }

void from_json(const Json& j, Grid& g) {
    g.K = j.at("K").get<int>();
    g.N = j.at("N").get<int>();
}

void to_json(Json& j, const SizeReport& r) {
    j = Json{{"v", r.v},
             {"p", float_json(r.p)},
             {"value", float_json(r.value)},
             {"witness", r.witness},
             {"method", r.method == SizeMethod::FullTreeSup ? "full_tree_sup" : "exhaustive"}};
}

void to_json(Json& j, const DecompositionLevel& l) {
    j = Json{{"trees", l.trees},
             {"top_length_sum", float_json(l.top_length_sum)},
             {"counting_constant", float_json(l.counting_constant)}};
}

void from_json(const Json& j, DecompositionLevel& l) {
    l.trees = j.at("trees").get<std::vector<Tree>>();
    l.top_length_sum = float_from_json(j.at("top_length_sum"));
    l.counting_constant = float_from_json(j.at("counting_constant"));
}

void to_json(Json& j, const DecompositionResult& r) {
    Json levels = Json::array();
    for (const auto& [n, lvl] : r.levels) levels.push_back(Json::array({n, lvl}));
    Json norms = Json::array();
    for (double x : r.norms) norms.push_back(float_json(x));
    j = Json{{"n_start", r.n_start},
             {"levels", std::move(levels)},
             {"residual", r.residual},
             {"norms", std::move(norms)}};
}

void from_json(const Json& j, DecompositionResult& r) {
    r.n_start = j.at("n_start").get<int>();
    r.levels.clear();
    for (const auto& entry : j.at("levels"))
        r.levels[entry.at(0).get<int>()] = entry.at(1).get<DecompositionLevel>();
    r.residual = j.at("residual").get<QuartileCollection>();
    for (int i = 0; i < 3; ++i) r.norms[i] = float_from_json(j.at("norms").at(i));
}

void to_json(Json& j, const HexagonRegion& h) {
    Json q = Json::array(), verts = Json::array();
    for (double x : h.q) q.push_back(float_json(x));
    const char* names = "ABCDEF";
    for (int i = 0; i < 6; ++i) {
        Json beta = Json::array();
        for (double x : h.vertices[i].beta) beta.push_back(float_json(x));
        verts.push_back(Json{{"name", std::string(1, names[i])}, {"beta", std::move(beta)}});
    }
    j = Json{{"q", std::move(q)}, {"rho", float_json(h.rho)}, {"vertices", std::move(verts)}};
}

void to_json(Json& j, const Classification& c) {
    const char* kind = c.kind == Classification::Kind::Strong     ? "strong"
                       : c.kind == Classification::Kind::Bilinear ? "bilinear"
                                                                  : "outside";
    j = Json{{"kind", kind}};
    if (c.kind == Classification::Kind::Strong) {
        Json p = Json::array();
        for (double x : c.p) p.push_back(float_json(x));
        j["p"] = std::move(p);
    } else if (c.kind == Classification::Kind::Bilinear) {
        j["slot"] = c.slot;
        j["target"] = float_json(c.target);
    }
}

void to_json(Json& j, const RwtAboveReport& r) {
    Json measures = Json::array();
    for (const auto& m : r.measures) measures.push_back(m);
    Json levels = Json::object();
    for (const auto& [n, b] : r.level_bounds) levels[std::to_string(n)] = float_json(b);
    Json sizes = Json::array();
    for (double s : r.size_constants) sizes.push_back(float_json(s));
    j = Json{{"tau", r.tau},
             {"measures", std::move(measures)},
             {"f_measure", r.f_measure},
             {"dropped_count", r.dropped_count},
             {"dropped_vanish", r.dropped_vanish},
             {"lambda_abs", float_json(r.lambda_abs)},
             {"bound", float_json(r.bound)},
             {"ratio", float_json(r.ratio)},
             {"level_bounds", std::move(levels)},
             {"skeleton_total", float_json(r.skeleton_total)},
             {"size_constants", std::move(sizes)},
             {"decomp", r.decomp}};
}

void to_json(Json& j, const RwtBelowReport& r) {
    Json d = Json::array();
    for (double x : r.d) d.push_back(float_json(x));
    j = Json{{"tau", r.tau},
             {"a", r.a},
             {"b", r.b},
             {"d", std::move(d)},
             {"hypothesis_ok", r.hypothesis_ok},
             {"log_branch", r.log_branch},
             {"eps", float_json(r.eps)},
             {"sum_I", float_json(r.sum_I)},
             {"sum_II", float_json(r.sum_II)},
             {"sum_III", float_json(r.sum_III)},
             {"sum_IV", float_json(r.sum_IV)},
             {"total", float_json(r.total)},
             {"closed_I", float_json(r.closed_I)},
             {"min_ab", float_json(r.min_ab)},
             {"closed_II", float_json(r.closed_II)},
             {"closed_III_IV", float_json(r.closed_III_IV)},
             {"beta_bound", float_json(r.beta_bound)},
             {"beta_conditions_ok", r.beta_conditions_ok},
             {"ratio_I", float_json(r.ratio_I)},
             {"ratio_II", float_json(r.ratio_II)},
             {"ratio_III_IV", float_json(r.ratio_III_IV)},
             {"ratio_beta", float_json(r.ratio_beta)}};
}

void to_json(Json& j, const DualityExampleRegion& r) {
    j = Json{{"q", float_json(r.q)},
             {"r_lo", float_json(r.r_lo)},
             {"r_hi", float_json(r.r_hi)},
             {"p_min", float_json(r.p_min)},
             {"extra_condition", r.extra_condition},
             {"extra_lhs", float_json(r.extra_lhs)}};
}

namespace {

std::string coord_str(const Coord& c) {
    std::string out;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) out += ";";
        out += c[i].to_string();
    }
    return out;
}

}  // namespace

std::string lambda_terms_csv(const std::vector<LambdaTerm>& terms) {
    std::ostringstream os;
    os << "time_pos,time_log_len,freq,c1,c2,c3,value\n";
    for (const auto& t : terms)
        os << t.quartile.time.pos << "," << t.quartile.time.log_len << "," << t.quartile.freq
           << "," << coord_str(t.c1) << "," << coord_str(t.c2) << "," << coord_str(t.c3) << ","
           << t.value.to_string() << "\n";
    return os.str();
}

}  // namespace qlab
