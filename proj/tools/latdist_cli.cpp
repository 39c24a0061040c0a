#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <latdist/latdist.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct cli_error {
    int code;
    std::string msg;
};

int exit_for(latdist_status st) {
    switch (st) {
        case LATDIST_OK:
            return 0;
        case LATDIST_ERR_BUDGET_EXCEEDED:
            return 2;
        case LATDIST_ERR_PARSE:
        case LATDIST_ERR_BAD_ARGUMENT:
        case LATDIST_ERR_RANK_DEFICIENT:
        case LATDIST_ERR_SINGULAR:
        case LATDIST_ERR_NON_DIVIDING:
        case LATDIST_ERR_NOT_UNIPOTENT:
        case LATDIST_ERR_INVALID_GAMMA:
            return 3;
        default:
            return 1;
    }
}

void check(latdist_status st) {
    if (st != LATDIST_OK) throw cli_error{exit_for(st), latdist_last_error()};
}

struct OwnedMatrix {
    latdist_matrix* m = nullptr;
    OwnedMatrix() = default;
    OwnedMatrix(const OwnedMatrix&) = delete;
    OwnedMatrix& operator=(const OwnedMatrix&) = delete;
    ~OwnedMatrix() { latdist_matrix_free(m); }
};

struct OwnedString {
    char* s = nullptr;
    OwnedString() = default;
    OwnedString(const OwnedString&) = delete;
    OwnedString& operator=(const OwnedString&) = delete;
    ~OwnedString() { latdist_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cli_error{3, "cannot open " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cli_error{1, "cannot write " + path};
    out << text;
    if (!out) throw cli_error{1, "failed writing " + path};
}

struct LoadedMatrix {
    OwnedMatrix handle;
    std::string path;
    std::string text;
    std::string hash;
};

void load_matrix(const std::string& path, LoadedMatrix& out) {
    out.path = path;
    out.text = read_file(path);
    out.hash = fnv1a64_hex(out.text);
    check(latdist_matrix_parse(out.text.c_str(), &out.handle.m));
}

struct RunContext {
    std::string command;
    json inputs = json::object();
    json params = json::object();
    json outputs = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void write_output(RunContext& ctx, const std::string& path, const std::string& text) {
    write_file(path, text);
    ctx.outputs[path] = fnv1a64_hex(text);
}

int finish(RunContext& ctx, const json& trace, const std::string& report_path) {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - ctx.start)
                          .count();
    json doc;
    doc["command"] = ctx.command;
    doc["version"] = latdist_version();
    doc["inputs"] = ctx.inputs;
    doc["params"] = ctx.params;
    doc["trace"] = trace;
    doc["outputs"] = ctx.outputs;
    doc["timing_ms"] = ms;
    if (!report_path.empty()) {
        json on_disk = doc;
        on_disk["timing_ms"] = nullptr;
        write_file(report_path, on_disk.dump(2) + "\n");
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

std::string command_echo(int argc, char** argv) {
    std::string out = fs::path(argv[0]).filename().string();
    for (int i = 1; i < argc; ++i) {
        out += ' ';
        out += argv[i];
    }
    return out;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
    std::vector<const char*> out;
    out.reserve(v.size());
    for (const std::string& s : v) out.push_back(s.c_str());
    return out;
}

/* Pulls target / d_sq / gamma out of an instance file written by the
 * svp2cvp generator so its instances feed straight back in. */
struct InstanceFields {
    std::vector<std::string> target;
    std::string d_sq;
    bool has_gamma = false;
    double gamma = 1.0;
};

bool extract_instance_fields(const std::string& text, InstanceFields& out) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("target")) return false;
    if (!doc["target"].is_array()) throw cli_error{3, "instance \"target\" must be an array"};
    for (const json& cell : doc["target"]) {
        if (cell.is_string())
            out.target.push_back(cell.get<std::string>());
        else if (cell.is_number_integer())
            out.target.push_back(std::to_string(cell.get<std::int64_t>()));
        else
            throw cli_error{3, "instance target entries must be rational strings"};
    }
    if (doc.contains("d_sq")) {
        if (!doc["d_sq"].is_string()) throw cli_error{3, "instance \"d_sq\" must be a string"};
        out.d_sq = doc["d_sq"].get<std::string>();
    }
    if (doc.contains("gamma") && doc["gamma"].is_string()) {
        out.gamma = std::stod(doc["gamma"].get<std::string>());
        out.has_gamma = true;
    }
    return true;
}

struct ReduceArgs {
    std::string input;
    std::string algo = "lll";
    std::string delta;
    std::string eps;
    int k = 2;
    std::uint64_t budget = 0;
    std::string out;
};

int cmd_reduce(RunContext& ctx, const ReduceArgs& a) {
    LoadedMatrix in;
    load_matrix(a.input, in);
    ctx.inputs[a.input] = in.hash;
    ctx.params["algo"] = a.algo;
    ctx.params["delta"] = a.delta.empty() ? json(nullptr) : json(a.delta);
    ctx.params["eps"] = a.eps.empty() ? json(nullptr) : json(a.eps);
    ctx.params["k"] = a.k;
    ctx.params["budget_nodes"] = a.budget;

    OwnedMatrix reduced;
    OwnedString report;
    check(latdist_reduce(in.handle.m, a.algo.c_str(),
                         a.delta.empty() ? nullptr : a.delta.c_str(),
                         a.eps.empty() ? nullptr : a.eps.c_str(), a.k, a.budget,
                         &reduced.m, &report.s));

    const std::string out_path =
        a.out.empty() ? a.input + ".reduced.json" : a.out;
    OwnedString basis_json;
    check(latdist_matrix_to_json(reduced.m, nullptr, &basis_json.s));
    write_output(ctx, out_path, basis_json.str());
    return finish(ctx, json::parse(report.str()), "");
}

struct PairArgs {
    std::string in1;
    std::string in2;
    int k = 2;
    bool with_lower = true;
    std::string c;
    double gamma = 1.0;
    std::uint64_t budget = 0;
    std::string out;
};

int cmd_distortion(RunContext& ctx, const PairArgs& a) {
    LoadedMatrix m1;
    LoadedMatrix m2;
    load_matrix(a.in1, m1);
    load_matrix(a.in2, m2);
    ctx.inputs[a.in1] = m1.hash;
    ctx.inputs[a.in2] = m2.hash;
    ctx.params["k"] = a.k;
    ctx.params["with_lower"] = a.with_lower;
    ctx.params["budget_nodes"] = a.budget;

    OwnedString report;
    check(latdist_distortion(m1.handle.m, m2.handle.m, a.k, a.with_lower ? 1 : 0, a.budget,
                             &report.s));
    return finish(ctx, json::parse(report.str()), a.out);
}

int cmd_decide(RunContext& ctx, const PairArgs& a) {
    LoadedMatrix m1;
    LoadedMatrix m2;
    load_matrix(a.in1, m1);
    load_matrix(a.in2, m2);
    ctx.inputs[a.in1] = m1.hash;
    ctx.inputs[a.in2] = m2.hash;
    ctx.params["c"] = a.c;
    ctx.params["gamma"] = a.gamma;
    ctx.params["k"] = a.k;
    ctx.params["budget_nodes"] = a.budget;

    OwnedString report;
    check(latdist_decide(m1.handle.m, m2.handle.m, a.c.c_str(), a.gamma, a.k, a.budget,
                         &report.s));
    return finish(ctx, json::parse(report.str()), a.out);
}

struct GadgetArgs {
    std::string kind;
    std::string input;
    std::vector<std::string> target;
    std::string d;
    double gamma = 1.0;
    int n = 2;
    int bound = 3;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint64_t budget = 0;
    std::string out_dir = ".";
};

int cmd_gadget(RunContext& ctx, const GadgetArgs& a) {
    ctx.params["kind"] = a.kind;
    ctx.params["gamma"] = a.gamma;
    ctx.params["budget_nodes"] = a.budget;
    fs::create_directories(a.out_dir);
    const fs::path dir(a.out_dir);

    if (a.kind == "luktracy") {
        ctx.params["n"] = a.n;
        OwnedMatrix m;
        check(latdist_luk_tracy(a.n, &m.m));
        OwnedString text;
        check(latdist_matrix_to_json(m.m, nullptr, &text.s));
        const std::string path = (dir / ("luktracy_" + std::to_string(a.n) + ".json")).string();
        write_output(ctx, path, text.str());
        json trace;
        trace["kind"] = "luktracy";
        trace["n"] = a.n;
        return finish(ctx, trace, "");
    }

    if (a.kind == "random") {
        if (!a.seed_given) throw cli_error{3, "gadget random requires an explicit --seed"};
        ctx.params["n"] = a.n;
        ctx.params["bound"] = a.bound;
        ctx.params["seed"] = a.seed;
        OwnedMatrix m;
        check(latdist_random_lattice(a.n, a.bound, a.seed, &m.m));
        OwnedString text;
        check(latdist_matrix_to_json(m.m, nullptr, &text.s));
        const std::string path =
            (dir / ("random_" + std::to_string(a.n) + "_" + std::to_string(a.seed) + ".json"))
                .string();
        write_output(ctx, path, text.str());
        json trace;
        trace["kind"] = "random";
        trace["n"] = a.n;
        trace["seed"] = a.seed;
        return finish(ctx, trace, "");
    }

    if (a.input.empty()) throw cli_error{3, "gadget " + a.kind + " needs an input basis file"};
    LoadedMatrix in;
    load_matrix(a.input, in);
    ctx.inputs[a.input] = in.hash;

    if (a.kind == "svp2cvp") {
        if (a.d.empty()) throw cli_error{3, "gadget svp2cvp requires --d"};
        ctx.params["d"] = a.d;
        OwnedString report;
        check(latdist_gadget_svp2cvp(in.handle.m, a.d.c_str(), a.gamma, &report.s));
        json doc = json::parse(report.str());
        for (const json& inst : doc["instances"]) {
            const std::string name = inst["label"].get<std::string>() + ".json";
            write_output(ctx, (dir / name).string(), inst.dump(2) + "\n");
        }
        return finish(ctx, doc, "");
    }

    if (a.kind == "cvp2ldp") {
        std::vector<std::string> target = a.target;
        std::string d = a.d;
        bool d_is_squared = false;
        double gamma = a.gamma;
        if (target.empty()) {
            InstanceFields fields;
            if (extract_instance_fields(in.text, fields)) {
                target = fields.target;
                if (d.empty() && !fields.d_sq.empty()) {
                    d = fields.d_sq;
                    d_is_squared = true;
                }
                if (fields.has_gamma) gamma = fields.gamma;
            }
        }
        if (target.empty())
            throw cli_error{3, "gadget cvp2ldp needs --target or an instance file"};
        if (d.empty()) throw cli_error{3, "gadget cvp2ldp requires --d or an instance d_sq"};
        ctx.params["target"] = target;
        ctx.params[d_is_squared ? "d_sq" : "d"] = d;
        ctx.params["gamma"] = gamma;
        OwnedString report;
        auto targets = c_strings(target);
        check(latdist_gadget_cvp2ldp(in.handle.m, targets.data(),
                                     static_cast<int>(targets.size()), d.c_str(),
                                     d_is_squared ? 1 : 0, gamma, a.budget, &report.s));
        json doc = json::parse(report.str());
        write_output(ctx, (dir / "cvp2ldp_l1.json").string(), doc["l1"].dump(2) + "\n");
        write_output(ctx, (dir / "cvp2ldp_l2.json").string(), doc["l2"].dump(2) + "\n");
        return finish(ctx, doc, "");
    }

    throw cli_error{3, "unknown gadget kind \"" + a.kind + "\""};
}

struct OracleArgs {
    std::string op;
    std::string input;
    std::vector<std::string> target;
    std::uint64_t budget = 0;
    std::string out;
};

int cmd_oracle(RunContext& ctx, const OracleArgs& a) {
    LoadedMatrix in;
    load_matrix(a.input, in);
    ctx.inputs[a.input] = in.hash;
    ctx.params["oracle"] = a.op;
    ctx.params["budget_nodes"] = a.budget;

    std::vector<std::string> target = a.target;
    if (a.op == "cvp" && target.empty()) {
        InstanceFields fields;
        if (extract_instance_fields(in.text, fields)) target = fields.target;
    }
    if (a.op == "cvp" && target.empty())
        throw cli_error{3, "oracle cvp needs --target or an instance file"};
    if (!target.empty()) ctx.params["target"] = target;

    OwnedString report;
    auto targets = c_strings(target);
    check(latdist_oracle(in.handle.m, a.op.c_str(),
                         target.empty() ? nullptr : targets.data(),
                         static_cast<int>(targets.size()), a.budget, &report.s));
    return finish(ctx, json::parse(report.str()), a.out);
}

struct BenchArgs {
    std::string suite;
    int n_min = 2;
    int n_max = 0;
    int trials = 5;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint64_t budget = 0;
    std::string out;
};

int cmd_bench(RunContext& ctx, const BenchArgs& a) {
    int n_max = a.n_max;
    if (n_max <= 0) {
        if (a.suite == "luktracy-growth") n_max = 12;
        else if (a.suite == "seysen-zeta") n_max = 8;
        else if (a.suite == "transference") n_max = 4;
        else n_max = 3;
    }
    ctx.params["suite"] = a.suite;
    ctx.params["n_min"] = a.n_min;
    ctx.params["n_max"] = n_max;
    ctx.params["trials"] = a.trials;
    ctx.params["seed"] = a.seed_given ? json(a.seed) : json(nullptr);
    ctx.params["budget_nodes"] = a.budget;

    OwnedString report;
    check(latdist_bench(a.suite.c_str(), a.n_min, n_max, a.trials, a.seed,
                        a.seed_given ? 1 : 0, a.budget, &report.s));
    return finish(ctx, json::parse(report.str()), a.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice reduction, distortion bounds, and problem gadgets"};
    app.require_subcommand(1);

    ReduceArgs red;
    auto* c_red = app.add_subcommand("reduce", "reduce a basis and re-check the certificate");
    c_red->add_option("input", red.input, "basis file")->required();
    c_red->add_option("--algo", red.algo,
                      "size|lll|hkz|dsvp|slide|padslide|seysen|pipeline");
    c_red->add_option("--delta", red.delta, "Lovasz constant as a rational, default 3/4");
    c_red->add_option("--eps", red.eps, "dual slack as a rational, default 1/10");
    c_red->add_option("--k", red.k, "block size for slide and pipeline");
    c_red->add_option("--budget-nodes", red.budget, "enumeration node cap, 0 for default");
    c_red->add_option("--out", red.out, "path for the reduced basis file");

    PairArgs dis;
    auto* c_dis = app.add_subcommand("distortion", "mapping and bounds between two lattices");
    c_dis->add_option("input1", dis.in1, "first basis file")->required();
    c_dis->add_option("input2", dis.in2, "second basis file")->required();
    c_dis->add_option("--k", dis.k, "pipeline block size");
    c_dis->add_flag("--with-lower,!--no-lower", dis.with_lower,
                    "also compute the exact M-factor lower bound");
    c_dis->add_option("--budget-nodes", dis.budget, "enumeration node cap, 0 for default");
    c_dis->add_option("--out", dis.out, "optional path for the run report");

    PairArgs dec;
    auto* c_dec = app.add_subcommand("decide", "gap verdict YES / NO / UNKNOWN");
    c_dec->add_option("input1", dec.in1, "first basis file")->required();
    c_dec->add_option("input2", dec.in2, "second basis file")->required();
    c_dec->add_option("--c", dec.c, "distortion threshold as a rational")->required();
    c_dec->add_option("--gamma", dec.gamma, "gap factor, at least 1");
    c_dec->add_option("--k", dec.k, "pipeline block size");
    c_dec->add_option("--budget-nodes", dec.budget, "enumeration node cap, 0 for default");
    c_dec->add_option("--out", dec.out, "optional path for the run report");

    GadgetArgs gad;
    auto* c_gad = app.add_subcommand("gadget", "instance generators and reductions");
    c_gad->add_option("--kind", gad.kind, "cvp2ldp|svp2cvp|luktracy|random")->required();
    c_gad->add_option("input", gad.input, "basis or instance file");
    c_gad->add_option("--target", gad.target, "target vector entries")->delimiter(',');
    c_gad->add_option("--d", gad.d, "distance bound as a rational");
    c_gad->add_option("--gamma", gad.gamma, "promise factor");
    c_gad->add_option("--n", gad.n, "dimension for luktracy and random");
    c_gad->add_option("--bound", gad.bound, "entry bound for random");
    c_gad->add_option("--seed", gad.seed, "random seed")
        ->each([&](const std::string&) { gad.seed_given = true; });
    c_gad->add_option("--budget-nodes", gad.budget, "enumeration node cap, 0 for default");
    c_gad->add_option("--out", gad.out_dir, "output directory, default .");

    OracleArgs ora;
    auto* c_ora = app.add_subcommand("oracle", "exact svp / cvp / minima / transference");
    c_ora->add_option("--op", ora.op, "svp|cvp|minima|transference")->required();
    c_ora->add_option("input", ora.input, "basis or instance file")->required();
    c_ora->add_option("--target", ora.target, "target vector entries")->delimiter(',');
    c_ora->add_option("--budget-nodes", ora.budget, "enumeration node cap, 0 for default");
    c_ora->add_option("--out", ora.out, "optional path for the run report");

    BenchArgs ben;
    auto* c_ben = app.add_subcommand("bench", "measurement tables");
    c_ben->add_option("--suite", ben.suite,
                      "luktracy-growth|seysen-zeta|transference|sandwich")
        ->required();
    c_ben->add_option("--n-min", ben.n_min, "smallest dimension");
    c_ben->add_option("--n-max", ben.n_max, "largest dimension, 0 for the suite default");
    c_ben->add_option("--trials", ben.trials, "trials per dimension");
    c_ben->add_option("--seed", ben.seed, "random seed")
        ->each([&](const std::string&) { ben.seed_given = true; });
    c_ben->add_option("--budget-nodes", ben.budget, "enumeration node cap, 0 for default");
    c_ben->add_option("--out", ben.out, "optional path for the run report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    RunContext ctx;
    ctx.command = command_echo(argc, argv);
    try {
        if (c_red->parsed()) return cmd_reduce(ctx, red);
        if (c_dis->parsed()) return cmd_distortion(ctx, dis);
        if (c_dec->parsed()) return cmd_decide(ctx, dec);
        if (c_gad->parsed()) return cmd_gadget(ctx, gad);
        if (c_ora->parsed()) return cmd_oracle(ctx, ora);
        if (c_ben->parsed()) return cmd_bench(ctx, ben);
    } catch (const cli_error& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
