// qlab-cli: experiment configuration, corpus generation, report persistence,
// and replay-verification for the quartile-operator library.
#include "qlab/corpus.hpp"
#include "qlab/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

using namespace qlab;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int thread_budget() {
    if (const char* env = std::getenv("QLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// ---- config files: TOML subset (key = value lines) with JSON fallback ----

Json parse_config_text(const std::string& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ConfigError(std::string("JSON config: ") + e.what());
        }
    }
    Json out = Json::object();
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t z = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (val == "true" || val == "false") {
            out[key] = (val == "true");
        } else if (val.size() >= 2 && val.front() == '"' && val.back() == '"') {
            out[key] = val.substr(1, val.size() - 2);
        } else {
            try {
                size_t used = 0;
                if (val.find_first_of(".eE") == std::string::npos &&
                    val.find_first_not_of("+-0123456789") == std::string::npos) {
                    long long i = std::stoll(val, &used);
                    if (used != val.size()) throw std::invalid_argument(val);
                    out[key] = i;
                } else {
                    double d = std::stod(val, &used);
                    if (used != val.size()) throw std::invalid_argument(val);
                    out[key] = d;
                }
            } catch (const std::exception&) {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": cannot parse value '" + val + "'");
            }
        }
    }
    return out;
}

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

template <typename T>
T config_get(const Json& cfg, const std::string& key, std::optional<T> fallback = std::nullopt) {
    if (!cfg.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("config is missing required key '" + key + "'");
    }
    try {
        return cfg.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

void emit(const std::string& command, const Json& config, const Json& output,
          const std::string& out_path) {
    Json doc{{"version", kVersion}, {"command", command}, {"config", config},
             {"output", output}};
    std::string text = doc.dump(2);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write output file " + out_path);
        out << text << "\n";
    }
    std::cout << text << "\n";
}

std::vector<double> parse_triple(const std::string& s, const char* what) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.size() != 3) throw ConfigError(std::string(what) + ": expected three values");
    return out;
}

/// Dyadic rational literal: "3", "-5/16" (power-of-two denominator).
DyadicRational parse_dyadic(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return DyadicRational(BigInt(s), 0);
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        int scale = 0;
        while (den > 1 && den % 2 == 0) { den /= 2; ++scale; }
        if (den != 1) throw ConfigError("denominator of '" + s + "' is not a power of two");
        return DyadicRational(num, scale);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse dyadic rational '" + s + "'");
    }
}

// ---- deterministic experiment inputs from config + seed ----

struct DecompInputs {
    Grid grid;
    QuartileCollection collection;
    StepFunction f1, f2, f3;
    std::array<double, 3> q;
};

DecompInputs decomp_inputs(const Json& cfg) {
    DecompInputs in;
    std::uint64_t seed = config_get<std::uint64_t>(cfg, "seed");
    in.grid.K = config_get<int>(cfg, "K", 1);
    in.grid.N = config_get<int>(cfg, "N", 2);
    int count = config_get<int>(cfg, "count", 4);
    int max_size = config_get<int>(cfg, "max_size", 20);
    in.q = {config_get<double>(cfg, "q1", 2.0), config_get<double>(cfg, "q2", 2.0),
            config_get<double>(cfg, "q3", 2.0)};
    Rng rng(seed);
    in.collection = random_convex_collection(rng, in.grid, count, max_size);
    in.f1 = random_step_function(rng, in.grid, 1);
    in.f2 = random_step_function(rng, in.grid, 1);
    in.f3 = random_step_function(rng, in.grid, 1);
    return in;
}

Json check_json(const DecompositionCheck& c) {
    return Json{{"partition_ok", c.partition_ok},   {"trees_convex", c.trees_convex},
                {"residual_convex", c.residual_convex}, {"sizes_ok", c.sizes_ok},
                {"residual_zero", c.residual_zero}, {"ok", c.ok()}};
}

// ---- subcommand bodies ----

int run_walsh_eval(unsigned long long n, const std::vector<std::string>& points, int res,
                   const std::string& out_path) {
    Json cfg{{"n", n}, {"res", res}};
    Json out;
    if (!points.empty()) {
        Json vals = Json::array();
        for (const auto& p : points) {
            DyadicRational x = parse_dyadic(p);
            vals.push_back(Json::array({p, walsh_eval(n, x)}));
        }
        cfg["points"] = points;
        out["values"] = std::move(vals);
    } else {
        int r = res;
        unsigned long long m = n;
        int need = 0;
        while (m) { m >>= 1; ++need; }
        if (r < need) r = need;
        Json cells = Json::array();
        for (long long c = 0; c < (1LL << r); ++c) {
            DyadicRational x(BigInt(2 * c + 1), r + 1);  // cell midpoint
            cells.push_back(Json::array({c, walsh_eval(n, x)}));
        }
        out["resolution"] = r;
        out["cells"] = std::move(cells);
    }
    emit("walsh eval", cfg, out, out_path);
    return kExitOk;
}

int run_walsh_transform(const std::string& values, const std::string& out_path) {
    std::vector<DyadicRational> vals;
    std::istringstream is(values);
    std::string item;
    while (std::getline(is, item, ',')) vals.push_back(parse_dyadic(item));
    if (vals.empty() || (vals.size() & (vals.size() - 1)))
        throw ConfigError("walsh transform: the number of values must be a power of two");
    int res = 0;
    while ((1u << res) < vals.size()) ++res;
    StepFunction f(res, 0, 1);
    for (size_t i = 0; i < vals.size(); ++i)
        f.set_cell(static_cast<long long>(i), {ExactScalar(vals[i])});
    auto coeffs = walsh_transform(f, {0, 0});
    Json out = Json::array();
    for (size_t k = 0; k < coeffs.size(); ++k)
        out.push_back(Json::array({k, coeffs[k][0], coeffs[k][0].to_string()}));
    emit("walsh transform", Json{{"values", values}}, Json{{"coefficients", std::move(out)}},
         out_path);
    return kExitOk;
}

int run_lambda_eval(const std::string& collection_path, const std::string& functions_path,
                    bool absolute, const std::string& csv_path, const std::string& out_path) {
    QuartileCollection coll = load_json(collection_path).get<QuartileCollection>();
    Json jf = load_json(functions_path);
    TrilinearForm Pi = TrilinearForm::scalar();
    if (jf.value("form", std::string("scalar")) == "duality")
        Pi = TrilinearForm::duality(jf.value("d", 1));
    StepFunction f1 = jf.at("f1").get<StepFunction>();
    StepFunction f2 = jf.at("f2").get<StepFunction>();
    StepFunction f3 = jf.at("f3").get<StepFunction>();
    auto res = lambda_form(coll, Pi, f1, f2, f3, absolute, /*want_terms=*/true);
    std::string csv = lambda_terms_csv(res.terms);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw ConfigError("cannot write CSV file " + csv_path);
        out << csv;
    }
    Json cfg{{"collection", collection_path},
             {"functions", functions_path},
             {"absolute", absolute}};
    emit("lambda eval", cfg,
         Json{{"total", res.total}, {"total_decimal", res.total.to_string()},
              {"terms", res.terms.size()}, {"csv", csv}},
         out_path);
    return kExitOk;
}

int run_size_compute(const std::string& collection_path, const std::string& function_path,
                     int v, double p, bool exhaustive, int K, int N,
                     const std::string& out_path) {
    if (v < 1 || v > 3) throw ConfigError("size compute: --v must be 1, 2, or 3");
    if (!(p >= 1.0)) throw ConfigError("size compute: --p must be >= 1");
    QuartileCollection coll = load_json(collection_path).get<QuartileCollection>();
    StepFunction f = load_json(function_path).get<StepFunction>();
    Grid grid{K, N};
    NormedSpace space{f.dim(), 2.0};
    SizeReport rep = size(coll, v, p, f, space, grid,
                          exhaustive ? SizeMethod::ExhaustiveSubsets : SizeMethod::FullTreeSup);
    Json cfg{{"collection", collection_path}, {"function", function_path}, {"v", v},
             {"p", float_json(p)},            {"exhaustive", exhaustive},  {"K", K},
             {"N", N}};
    emit("size compute", cfg, rep, out_path);
    return kExitOk;
}

int run_decomp_run(const std::string& config_path, const std::string& out_path) {
    Json cfg = load_config(config_path);
    DecompInputs in = decomp_inputs(cfg);
    NormedSpace s{1, 2.0};
    std::array<NormedSpace, 3> sp{s, s, s};
    auto res = full_decomposition(in.collection, {&in.f1, &in.f2, &in.f3}, in.q, sp, in.grid);
    auto chk = verify_decomposition(res, in.collection, {&in.f1, &in.f2, &in.f3}, in.q, sp,
                                    in.grid);
    Json out{{"grid", in.grid},
             {"collection", in.collection},
             {"result", res},
             {"check", check_json(chk)}};
    emit("decomp run", cfg, out, out_path);
    return chk.ok() ? kExitOk : kExitVerification;
}

int run_decomp_replay(const std::string& result_path) {
    Json doc = load_json(result_path);
    if (!doc.contains("config") || !doc.contains("output"))
        throw ConfigError(result_path + ": not a decomp run report");
    Json cfg = doc.at("config");
    DecompInputs in = decomp_inputs(cfg);
    NormedSpace s{1, 2.0};
    std::array<NormedSpace, 3> sp{s, s, s};

    DecompositionResult stored;
    try {
        stored = doc.at("output").at("result").get<DecompositionResult>();
    } catch (const Json::exception& e) {
        throw ConfigError(result_path + ": malformed result: " + e.what());
    }

    auto recomputed =
        full_decomposition(in.collection, {&in.f1, &in.f2, &in.f3}, in.q, sp, in.grid);
    bool identical = Json(stored).dump() == Json(recomputed).dump();
    auto chk =
        verify_decomposition(stored, in.collection, {&in.f1, &in.f2, &in.f3}, in.q, sp, in.grid);
    Json out{{"identical_to_recomputation", identical}, {"check", check_json(chk)}};
    emit("decomp replay", cfg, out, "");
    return identical && chk.ok() ? kExitOk : kExitVerification;
}

int run_rwt_above(const std::string& config_path, const std::string& out_path) {
    Json cfg = load_config(config_path);
    std::uint64_t seed = config_get<std::uint64_t>(cfg, "seed");
    Grid grid{config_get<int>(cfg, "K", 1), config_get<int>(cfg, "N", 2)};
    int count = config_get<int>(cfg, "count", 10);
    int coll_count = config_get<int>(cfg, "collection_count", 4);
    int max_size = config_get<int>(cfg, "max_size", 25);
    std::array<double, 3> q{config_get<double>(cfg, "q1", 2.0),
                            config_get<double>(cfg, "q2", 2.0),
                            config_get<double>(cfg, "q3", 2.0)};
    std::array<double, 3> alpha{config_get<double>(cfg, "alpha1", 1.0 / 3),
                                config_get<double>(cfg, "alpha2", 1.0 / 3),
                                config_get<double>(cfg, "alpha3", 1.0 / 3)};
    NormedSpace s{1, 2.0};
    std::array<NormedSpace, 3> sp{s, s, s};
    TrilinearForm Pi = TrilinearForm::scalar();

    // Each instance derives its own generator from seed + index, so results
    // are independent of the parallel schedule; output order is by index.
    auto instance = [&](int idx) {
        Rng rng(seed + static_cast<std::uint64_t>(idx));
        StepFunction E1 = random_dyadic_set(rng, grid);
        StepFunction E2 = random_dyadic_set(rng, grid);
        StepFunction E3 = random_dyadic_set(rng, grid);
        auto ex = exceptional_set(E1, E2, E3);
        const StepFunction* E[3] = {&E1, &E2, &E3};
        StepFunction f[3];
        for (int v = 0; v < 3; ++v) {
            if (v + 1 != ex.tau) { f[v] = *E[v]; continue; }
            int res = std::max(E[v]->resolution(), ex.F.resolution());
            StepFunction e = E[v]->refined(res), Fr = ex.F.refined(res);
            StepFunction g(res, E[v]->support_bound(), 1);
            for (const auto& [i, val] : e.cells())
                if (Fr.value_at_cell(i)[0].is_zero()) g.set_cell(i, val);
            f[v] = std::move(g);
        }
        QuartileCollection P = random_convex_collection(rng, grid, coll_count, max_size);
        return rwt_above(P, Pi, {&E1, &E2, &E3}, alpha, q, {&f[0], &f[1], &f[2]}, sp, grid);
    };

    std::vector<RwtAboveReport> reports(count);
    int threads = std::min(thread_budget(), std::max(count, 1));
    std::vector<std::future<void>> pool;
    for (int t = 0; t < threads; ++t)
        pool.push_back(std::async(std::launch::async, [&, t] {
            for (int i = t; i < count; i += threads) reports[i] = instance(i);
        }));
    for (auto& fut : pool) fut.get();

    Json instances = Json::array();
    std::ostringstream csv;
    csv << "index,measure1,measure2,measure3,tau,f_measure,dropped,lambda_abs,bound,ratio\n";
    double max_ratio = 0.0;
    for (int i = 0; i < count; ++i) {
        const auto& r = reports[i];
        instances.push_back(r);
        csv << i << "," << r.measures[0].to_decimal_string() << ","
            << r.measures[1].to_decimal_string() << "," << r.measures[2].to_decimal_string()
            << "," << r.tau << "," << r.f_measure.to_decimal_string() << "," << r.dropped_count
            << "," << format_double(r.lambda_abs) << "," << format_double(r.bound) << ","
            << format_double(r.ratio) << "\n";
        max_ratio = std::max(max_ratio, r.ratio);
    }
    emit("rwt above", cfg,
         Json{{"instances", std::move(instances)},
              {"summary_csv", csv.str()},
              {"max_ratio", float_json(max_ratio)},
              {"threads", threads}},
         out_path);
    return kExitOk;
}

int run_rwt_below(const std::string& measures_s, const std::string& q_s,
                  const std::string& beta_s, double eps, const std::string& out_path) {
    auto m = parse_triple(measures_s, "--measures");
    auto q = parse_triple(q_s, "--q");
    auto b = parse_triple(beta_s, "--beta");
    auto rep = rwt_below_diagnostics({m[0], m[1], m[2]}, {q[0], q[1], q[2]}, {b[0], b[1], b[2]},
                                     eps);
    Json cfg{{"measures", measures_s}, {"q", q_s}, {"beta", beta_s},
             {"eps", float_json(eps)}};
    emit("rwt below", cfg, rep, out_path);
    return kExitOk;
}

int run_rwt_hexagon(const std::string& q_s, const std::string& beta_s,
                    const std::string& out_path) {
    auto q = parse_triple(q_s, "--q");
    HexagonRegion h = hexagon(q[0], q[1], q[2]);
    Json out{{"hexagon", h}};
    Json cfg{{"q", q_s}};
    if (!beta_s.empty()) {
        auto b = parse_triple(beta_s, "--beta");
        ExponentTriple t{{b[0], b[1], b[2]}};
        out["contains"] = h.contains(t);
        out["classification"] = classify_estimate(h, t);
        cfg["beta"] = beta_s;
    }
    emit("rwt hexagon", cfg, out, out_path);
    return kExitOk;
}

int run_rwt_example(double q, const std::string& out_path) {
    emit("rwt example", Json{{"q", float_json(q)}}, duality_example_region(q), out_path);
    return kExitOk;
}

int run_corpus_generate(std::uint64_t seed, int count, const std::string& kind, int K, int N,
                        const std::string& out_path) {
    Grid grid{K, N};
    Rng rng(seed);
    Json items = Json::array();
    for (int i = 0; i < count; ++i) {
        if (kind == "collection") {
            items.push_back(random_convex_collection(rng, grid, 4, 30));
        } else if (kind == "tree") {
            items.push_back(random_convex_tree(rng, grid, 6));
        } else if (kind == "set") {
            items.push_back(random_dyadic_set(rng, grid));
        } else if (kind == "function") {
            items.push_back(random_step_function(rng, grid, 1));
        } else {
            throw ConfigError("corpus generate: unknown kind '" + kind + "'");
        }
    }
    Json cfg{{"seed", seed}, {"count", count}, {"kind", kind}, {"K", K}, {"N", N}};
    emit("corpus generate", cfg, Json{{"items", std::move(items)}}, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walsh-model quartile operator toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string out_path, collection_path, functions_path, csv_path, config_path, result_path;
    std::string values, q_s = "2,2,2", beta_s, measures_s, kind = "collection";
    std::vector<std::string> points;
    unsigned long long walsh_n = 0;
    std::uint64_t seed = 0;
    int res = 0, v = 1, K = 2, N = 2, count = 10;
    double p = 2.0, eps = 0.01, qval = 2.5;
    bool exhaustive = false, absolute = false;

    auto* walsh = app.add_subcommand("walsh", "Walsh functions and transforms");
    walsh->require_subcommand(1);
    auto* weval = walsh->add_subcommand("eval", "evaluate a Walsh function exactly");
    weval->add_option("--n", walsh_n, "Walsh index")->required();
    weval->add_option("--point", points, "dyadic points a/2^k (repeatable)");
    weval->add_option("--res", res, "output resolution when no points are given");
    weval->add_option("--out", out_path, "also write the report to this file");
    auto* wtrans = walsh->add_subcommand("transform", "exact Walsh transform of cell values");
    wtrans->add_option("--values", values, "comma-separated dyadic cell values")->required();
    wtrans->add_option("--out", out_path, "also write the report to this file");

    auto* lambda = app.add_subcommand("lambda", "quartile trilinear form");
    lambda->require_subcommand(1);
    auto* leval = lambda->add_subcommand("eval", "evaluate Lambda with a term ledger");
    leval->add_option("--collection", collection_path, "QuartileCollection JSON file")
        ->required();
    leval->add_option("--functions", functions_path, "JSON file with f1, f2, f3")->required();
    leval->add_flag("--absolute", absolute, "sum |terms| instead of terms");
    leval->add_option("--csv", csv_path, "write the term ledger CSV here");
    leval->add_option("--out", out_path, "also write the report to this file");

    auto* size_cmd = app.add_subcommand("size", "phase-plane sizes");
    size_cmd->require_subcommand(1);
    auto* scompute = size_cmd->add_subcommand("compute", "compute a (v,p)-size report");
    scompute->add_option("--collection", collection_path, "QuartileCollection JSON file")
        ->required();
    scompute->add_option("--function", functions_path, "StepFunction JSON file")->required();
    scompute->add_option("--v", v, "slot v in 1..3")->required();
    scompute->add_option("--p", p, "size exponent p >= 1")->required();
    scompute->add_flag("--exhaustive", exhaustive, "exhaustive subset sup (<= 12 members)");
    scompute->add_option("--K", K, "grid K");
    scompute->add_option("--N", N, "grid N");
    scompute->add_option("--out", out_path, "also write the report to this file");

    auto* decomp = app.add_subcommand("decomp", "size-lemma decompositions");
    decomp->require_subcommand(1);
    auto* drun = decomp->add_subcommand("run", "run a decomposition from config + seed");
    drun->add_option("--config", config_path, "TOML (key = value) or JSON config")->required();
    drun->add_option("--out", out_path, "also write the report to this file");
    auto* dreplay = decomp->add_subcommand("replay", "re-verify a stored decomposition");
    dreplay->add_option("result", result_path, "decomp run report JSON")->required();

    auto* rwt = app.add_subcommand("rwt", "restricted-weak-type experiments");
    rwt->require_subcommand(1);
    auto* rabove = rwt->add_subcommand("above", "corpus of exceptional-set experiments");
    rabove->add_option("--config", config_path, "TOML (key = value) or JSON config")->required();
    rabove->add_option("--out", out_path, "also write the report to this file");
    auto* rbelow = rwt->add_subcommand("below", "min-series split diagnostics");
    rbelow->add_option("--measures", measures_s, "three measures, comma-separated")->required();
    rbelow->add_option("--q", q_s, "three quartile types, comma-separated");
    rbelow->add_option("--beta", beta_s, "three exponents, comma-separated")->required();
    rbelow->add_option("--eps", eps, "epsilon for the logarithmic branch");
    rbelow->add_option("--out", out_path, "also write the report to this file");
    auto* rhex = rwt->add_subcommand("hexagon", "exponent-region vertices and membership");
    rhex->add_option("--q", q_s, "three quartile types, comma-separated")->required();
    rhex->add_option("--beta", beta_s, "classify this exponent triple");
    rhex->add_option("--out", out_path, "also write the report to this file");
    auto* rexample = rwt->add_subcommand("example", "duality example region for one type");
    rexample->add_option("--q", qval, "type q in (2,4)")->required();
    rexample->add_option("--out", out_path, "also write the report to this file");

    auto* corpus = app.add_subcommand("corpus", "random corpus generation");
    corpus->require_subcommand(1);
    auto* cgen = corpus->add_subcommand("generate", "generate random objects");
    cgen->add_option("--seed", seed, "generator seed")->required();
    cgen->add_option("--count", count, "number of objects")->required();
    cgen->add_option("--kind", kind, "collection | tree | set | function");
    cgen->add_option("--K", K, "grid K");
    cgen->add_option("--N", N, "grid N");
    cgen->add_option("--out", out_path, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (weval->parsed()) return run_walsh_eval(walsh_n, points, res, out_path);
        if (wtrans->parsed()) return run_walsh_transform(values, out_path);
        if (leval->parsed())
            return run_lambda_eval(collection_path, functions_path, absolute, csv_path, out_path);
        if (scompute->parsed())
            return run_size_compute(collection_path, functions_path, v, p, exhaustive, K, N,
                                    out_path);
        if (drun->parsed()) return run_decomp_run(config_path, out_path);
        if (dreplay->parsed()) return run_decomp_replay(result_path);
        if (rabove->parsed()) return run_rwt_above(config_path, out_path);
        if (rbelow->parsed()) return run_rwt_below(measures_s, q_s, beta_s, eps, out_path);
        if (rhex->parsed()) return run_rwt_hexagon(q_s, beta_s, out_path);
        if (rexample->parsed()) return run_rwt_example(qval, out_path);
        if (cgen->parsed()) return run_corpus_generate(seed, count, kind, K, N, out_path);
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
