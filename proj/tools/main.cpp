#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ripple/bulbs.hpp"
#include "ripple/field.hpp"
#include "ripple/graph_recognition.hpp"
#include "ripple/matrix_io.hpp"
#include "ripple/seq_count.hpp"
#include "ripple/simd_machine.hpp"
#include "ripple/validation.hpp"
#include "ripple/xor_max.hpp"

namespace {

using nlohmann::json;
using namespace ripple;

std::string slurp(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

/// json objects keep their keys sorted, so equal results are equal bytes.
void emit(const json& j, const std::string& out_path) {
    const std::string payload = j.dump() + "\n";
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << payload;
}

bool assertions_enabled() {
    const char* v = std::getenv("RIPPLE_GAUSS_ASSERT");
    return v != nullptr && std::string(v) == "1";
}

template <typename Scalar>
json matrix_to_json(const Dense<Scalar>& a) {
    json rows = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_simulate(const std::string& path, const std::string& field_text, bool trace,
                 const std::string& out_path) {
    const FieldSpec spec = FieldSpec::parse(field_text);
    const std::string content = slurp(path);
    return with_field(spec, [&](const auto& field) -> int {
        using F = std::decay_t<decltype(field)>;
        using S = typename F::Scalar;
        std::istringstream in(content);
        Dense<S> input;
        if constexpr (std::is_same_v<S, double>) {
            input = load_matrix<double>(in);
        } else {
            const Dense<long long> raw = load_matrix<long long>(in);
            input.resize(raw.rows(), raw.cols());
            for (int i = 0; i < raw.rows(); ++i)
                for (int j = 0; j < raw.cols(); ++j) input(i, j) = field.from_int(raw(i, j));
        }

        MachineConfig cfg;
        cfg.rows = static_cast<int>(input.rows());
        cfg.cols = static_cast<int>(input.cols());
        cfg.trace = trace;
        cfg.check_sliding_zeros = assertions_enabled();
        Machine<F> machine(input, field, cfg);
        const RunResult<S> result = machine.run();

        json j;
        j["field"] = spec.to_string();
        j["iterations"] = result.iterations;
        j["singular"] = result.singular;
        j["f"] = matrix_to_json(result.f_matrix);
        j["locked"] = json(result.locked);
        json lock_iter = json::array();
        for (const auto& li : result.lock_iteration)
            lock_iter.push_back(li ? json(*li) : json(nullptr));
        j["lock_iteration"] = std::move(lock_iter);
        if (cfg.check_sliding_zeros) j["sliding_zero_violations"] = machine.sliding_zero_violations();
        if (trace) {
            json records = json::array();
            for (const auto& rec : machine.trace()) {
                json r;
                r["iteration"] = rec.iteration;
                r["origin_row_at_processor_row_1"] = rec.origin_row_at_processor_row_1;
                r["row_states"] = json(rec.row_states);
                if (rec.tmp_snapshot) r["tmp"] = matrix_to_json(*rec.tmp_snapshot);
                if (rec.f_snapshot) r["f"] = matrix_to_json(*rec.f_snapshot);
                records.push_back(std::move(r));
            }
            j["trace"] = std::move(records);
        }
        emit(j, out_path);
        return result.singular ? 1 : 0;
    });
}

int run_validate(CampaignConfig cfg, const std::string& field_text, const std::string& out_path) {
    cfg.field = FieldSpec::parse(field_text);
    const CampaignSummary s = run_campaign(cfg);

    json j;
    j["field"] = cfg.field.to_string();
    j["seed"] = cfg.seed;
    j["pass"] = s.pass;
    j["fail"] = s.fail;
    j["det_excluded"] = s.det_excluded;
    j["sliding_zero_violations"] = s.sliding_zero_violations;
    json per = json::array();
    for (const auto& z : s.per_size)
        per.push_back(json{{"fail", z.fail}, {"n", z.n}, {"pass", z.pass}, {"regenerations", z.regenerations}});
    j["per_size"] = std::move(per);
    json fails = json::array();
    for (const auto& v : s.failures)
        fails.push_back(json{
            {"index", v.index}, {"n", v.n}, {"note", v.note}, {"pass", v.pass}, {"regenerations", v.regenerations}});
    j["failures"] = std::move(fails);
    emit(j, out_path);
    return s.fail == 0 ? 0 : 1;
}

int run_xor_subset(const std::string& path, int bits, const std::string& out_path) {
    std::istringstream in(slurp(path));
    const std::vector<std::uint64_t> values = load_values(in);
    const XorMaxResult r = max_xor_subset_incremental(values, bits);
    json j;
    j["subset"] = json(r.subset);
    j["xm"] = r.xm;
    emit(j, out_path);
    return 0;
}

int run_xor_subarray(const std::string& path, int bits, int min_len, int max_len,
                     const std::string& out_path) {
    std::istringstream in(slurp(path));
    const std::vector<std::uint64_t> values = load_values(in);
    if (max_len == 0) max_len = static_cast<int>(values.size());
    const XorSubarrayResult r = max_xor_subarray_bounded(values, min_len, max_len, bits);
    json j;
    j["i"] = r.i;
    j["j"] = r.j;
    j["value"] = r.value;
    emit(j, out_path);
    return 0;
}

std::vector<std::uint8_t> bits_from_json(const json& a, const char* what) {
    std::vector<std::uint8_t> v;
    for (const auto& e : a) {
        const long long b = e.get<long long>();
        if (b < 0 || b > 1) throw std::runtime_error(std::string(what) + " entries must be 0 or 1");
        v.push_back(static_cast<std::uint8_t>(b));
    }
    return v;
}

std::vector<double> doubles_from_json(const json& a) {
    std::vector<double> v;
    for (const auto& e : a) v.push_back(e.get<double>());
    return v;
}

GridNeighborhood parse_neighborhood(const std::string& name) {
    if (name == "orthogonal4") return GridNeighborhood::orthogonal4;
    if (name == "diagonal4") return GridNeighborhood::diagonal4;
    if (name == "all8") return GridNeighborhood::all8;
    throw std::runtime_error("unknown neighborhood \"" + name + "\"");
}

RowColInstance rowcol_from_json(const json& in, bool need_costs) {
    RowColInstance inst(in.at("m").get<int>(), in.at("n").get<int>());
    inst.si = bits_from_json(in.at("si"), "si");
    inst.sf = bits_from_json(in.at("sf"), "sf");
    if (need_costs || in.contains("row_cost")) inst.row_cost = doubles_from_json(in.at("row_cost"));
    if (need_costs || in.contains("col_cost")) inst.col_cost = doubles_from_json(in.at("col_cost"));
    return inst;
}

int run_bulbs(const std::string& path, int free_var_cap, const std::string& out_path) {
    const json in = json::parse(slurp(path));
    const std::string type = in.at("type").get<std::string>();
    json j;
    bool feasible = false;

    if (type == "graph") {
        BulbGraph g(in.at("n").get<int>());
        g.si = bits_from_json(in.at("si"), "si");
        g.sf = bits_from_json(in.at("sf"), "sf");
        g.cost = doubles_from_json(in.at("cost"));
        for (const auto& e : in.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw std::runtime_error("edges must be [u, v] pairs");
            g.add_edge(e[0].get<int>() - 1, e[1].get<int>() - 1);
        }
        const BulbSolution s = solve_graph(g, free_var_cap);
        j["cost"] = s.cost;
        j["feasible"] = s.feasible;
        j["x"] = json(s.x);
        feasible = s.feasible;
    } else if (type == "grid") {
        GridSpec g(in.at("p").get<int>(), in.at("q").get<int>(),
                   parse_neighborhood(in.at("neighborhood").get<std::string>()));
        g.si = bits_from_json(in.at("si"), "si");
        g.sf = bits_from_json(in.at("sf"), "sf");
        g.cost = doubles_from_json(in.at("cost"));
        const BulbSolution s = solve_grid(g);
        j["cost"] = s.cost;
        j["feasible"] = s.feasible;
        j["x"] = json(s.x);
        feasible = s.feasible;
    } else if (type == "rowcol") {
        const RowColSolution s = solve_rowcol(rowcol_from_json(in, true));
        j["cost"] = s.cost;
        j["feasible"] = s.feasible;
        j["row_toggle"] = json(s.row_toggle);
        j["col_toggle"] = json(s.col_toggle);
        feasible = s.feasible;
    } else if (type == "point_toggle") {
        const PointToggleResult r = solve_point_toggle(rowcol_from_json(in, false));
        j["count"] = r.count;
        j["feasible"] = r.feasible;
        json ops = json::array();
        for (auto [a, b] : r.operations) ops.push_back(json::array({a, b}));
        j["operations"] = std::move(ops);
        feasible = r.feasible;
    } else {
        throw std::runtime_error("unknown instance type \"" + type + "\"");
    }
    emit(j, out_path);
    return feasible ? 0 : 1;
}

int run_seqcount(const std::string& path, const std::string& method, const std::string& out_path) {
    std::istringstream raw(slurp(path));
    std::istringstream body(strip_comment_lines(raw));
    long long k = 0;
    std::uint64_t m = 0, n = 0;
    if (!(body >> k >> m >> n)) throw BadMatrixFile("expected a \"k M n\" header line");
    if (k < 1 || k > 1024) throw BadMatrixFile("alphabet size out of range");
    TransitionMatrix t(static_cast<int>(k));
    for (int i = 0; i < t.k; ++i)
        for (int jj = 0; jj < t.k; ++jj) {
            long long e = -1;
            if (!(body >> e)) throw BadMatrixFile("transition data ended early");
            if (e < 0 || e > 1) throw BadMatrixFile("transition entries must be 0 or 1");
            t.at(i, jj) = static_cast<std::uint8_t>(e);
        }
    std::string extra;
    if (body >> extra) throw BadMatrixFile("unexpected trailing token \"" + extra + "\"");

    json j;
    j["method"] = method;
    if (method == "dp") {
        j["count"] = count_dp(t, n, m);
    } else if (method == "decomp") {
        j["count"] = count_binary_decomp(t, n, m);
    } else {
        long long muls = 0;
        j["count"] = count_matpow(t, n, m, &muls);
        j["multiplications"] = muls;
    }
    emit(j, out_path);
    return 0;
}

int run_recognize(const std::string& path, const std::string& out_path) {
    std::istringstream raw(slurp(path));
    std::istringstream body(strip_comment_lines(raw));
    long long n = 0, m = 0;
    if (!(body >> n >> m)) throw BadMatrixFile("expected an \"n m\" header line");
    if (n < 0 || n > 10000000 || m < 0) throw BadMatrixFile("graph size out of range");
    UGraph g(static_cast<int>(n));
    for (long long e = 0; e < m; ++e) {
        long long u = 0, v = 0;
        if (!(body >> u >> v)) throw BadMatrixFile("edge list ended early");
        if (u < 1 || u > n || v < 1 || v > n) throw BadMatrixFile("edge endpoint out of range");
        g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    std::string extra;
    if (body >> extra) throw BadMatrixFile("unexpected trailing token \"" + extra + "\"");

    const RecognitionResult r = is_tree_of_cycles(g);
    json j;
    j["accepted"] = r.accepted;
    j["final_vertices"] = r.trace.final_vertices;
    emit(j, out_path);
    return r.accepted ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Processor-array Gaussian elimination simulator and companion solvers"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("-o,--output", out_path, "write the JSON result to this file instead of stdout");

    auto* sim = app.add_subcommand("simulate", "eliminate one matrix on the simulated grid");
    std::string sim_file, sim_field = "real";
    bool sim_trace = false;
    sim->add_option("file", sim_file, "matrix file, - for stdin")->required();
    sim->add_option("--field", sim_field, "real, real:eps=<e>, gfp:<M>, or gf2 (default real)");
    sim->add_flag("--trace", sim_trace, "record per-iteration register snapshots");

    auto* val = app.add_subcommand("validate", "run the parallel-vs-serial agreement campaign");
    CampaignConfig vcfg;
    std::string val_field = "real";
    val->add_option("--seed", vcfg.seed, "campaign seed (default 1)");
    val->add_option("--n-min", vcfg.n_min, "smallest system size (default 1)");
    val->add_option("--n-max", vcfg.n_max, "largest system size (default 30)");
    val->add_option("--per-size", vcfg.instances_per_n, "instances per size (default 20)");
    val->add_option("--field", val_field, "field selection string (default real)");
    val->add_option("--entry-lo", vcfg.entry_lo, "smallest random entry (default -9)");
    val->add_option("--entry-hi", vcfg.entry_hi, "largest random entry (default 9)");
    val->add_option("--rtol", vcfg.solution_rtol, "relative tolerance on sorted solutions");
    val->add_option("--det-atol", vcfg.det_log_atol, "absolute tolerance on log|det|");

    auto* xs = app.add_subcommand("xor-subset", "maximum subset xor of a value list");
    std::string xs_file;
    int xs_bits = 0;
    xs->add_option("file", xs_file, "whitespace-separated values, - for stdin")->required();
    xs->add_option("--bits", xs_bits, "bit width B (default: derived from the data)");

    auto* xa = app.add_subcommand("xor-subarray", "maximum subarray xor of a value list");
    std::string xa_file;
    int xa_bits = 0, xa_min = 1, xa_max = 0;
    xa->add_option("file", xa_file, "whitespace-separated values, - for stdin")->required();
    xa->add_option("--bits", xa_bits, "bit width B (default: derived from the data)");
    xa->add_option("--min-len", xa_min, "minimum subarray length (default 1)");
    xa->add_option("--max-len", xa_max, "maximum subarray length (default: whole array)");

    auto* bl = app.add_subcommand("bulbs", "minimum-cost bulb toggling from a JSON instance");
    std::string bl_file;
    int bl_cap = 20;
    bl->add_option("file", bl_file, "JSON instance, - for stdin")->required();
    bl->add_option("--free-var-cap", bl_cap, "largest free-variable count to enumerate (default 20)");

    auto* sq = app.add_subcommand("seqcount", "count transition-valid sequences modulo M");
    std::string sq_file, sq_method = "matpow";
    sq->add_option("file", sq_file, "header \"k M n\" then k rows of k bits, - for stdin")->required();
    sq->add_option("--method", sq_method, "dp, matpow, or decomp (default matpow)")
        ->check(CLI::IsMember({"dp", "matpow", "decomp"}));

    auto* rc = app.add_subcommand("recognize", "decide whether a graph is a tree of cycles");
    std::string rc_file;
    rc->add_option("file", rc_file, "header \"n m\" then m edges u v (1-based), - for stdin")
        ->required();

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return run_simulate(sim_file, sim_field, sim_trace, out_path);
        if (val->parsed()) return run_validate(vcfg, val_field, out_path);
        if (xs->parsed()) return run_xor_subset(xs_file, xs_bits, out_path);
        if (xa->parsed()) return run_xor_subarray(xa_file, xa_bits, xa_min, xa_max, out_path);
        if (bl->parsed()) return run_bulbs(bl_file, bl_cap, out_path);
        if (sq->parsed()) return run_seqcount(sq_file, sq_method, out_path);
        if (rc->parsed()) return run_recognize(rc_file, out_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
