// Command-line front end. Links only the public C API of the shared
// library; config parsing and artifact writing happen here.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "btn1d.h"
#include "config.hpp"

using btn1d_cli::Config;
using btn1d_cli::ConfigError;
using nlohmann::json;

namespace {

struct ApiError : std::runtime_error {
    int code;
    ApiError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

void check(int rc) {
    if (rc != BTN1D_OK) throw ApiError(rc, btn1d_last_error());
}

const char* code_name(int rc) {
    switch (rc) {
    case BTN1D_OK: return "ok";
    case BTN1D_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case BTN1D_ERR_DOMAIN_VIOLATION: return "domain-violation";
    case BTN1D_ERR_NOT_POINTWISE: return "not-pointwise";
    case BTN1D_ERR_NONPOSITIVE_DIFFUSIVITY: return "nonpositive-diffusivity";
    case BTN1D_ERR_SINGULAR_STAGE: return "singular-stage";
    case BTN1D_ERR_ZERO_REFERENCE: return "zero-reference";
    case BTN1D_ERR_TOUCHDOWN_IN_STUDY: return "touchdown-in-study";
    case BTN1D_ERR_RANGE: return "range";
    }
    return "internal";
}

// fixed 17-significant-digit formatting keeps the CSV byte-stable
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct EntropyDeleter { void operator()(btn1d_entropy* p) const { btn1d_entropy_destroy(p); } };
struct SourceDeleter { void operator()(btn1d_source* p) const { btn1d_source_destroy(p); } };
struct TrajectoryDeleter {
    void operator()(btn1d_trajectory* p) const { btn1d_trajectory_destroy(p); }
};
struct DeltaTrajectoryDeleter {
    void operator()(btn1d_delta_trajectory* p) const { btn1d_delta_trajectory_destroy(p); }
};
struct ConvergenceDeleter {
    void operator()(btn1d_convergence* p) const { btn1d_convergence_destroy(p); }
};
struct SweepDeleter { void operator()(btn1d_sweep* p) const { btn1d_sweep_destroy(p); } };

using EntropyPtr = std::unique_ptr<btn1d_entropy, EntropyDeleter>;
using SourcePtr = std::unique_ptr<btn1d_source, SourceDeleter>;
using TrajectoryPtr = std::unique_ptr<btn1d_trajectory, TrajectoryDeleter>;
using DeltaTrajectoryPtr = std::unique_ptr<btn1d_delta_trajectory, DeltaTrajectoryDeleter>;
using ConvergencePtr = std::unique_ptr<btn1d_convergence, ConvergenceDeleter>;
using SweepPtr = std::unique_ptr<btn1d_sweep, SweepDeleter>;

// ---- config -> models --------------------------------------------------

int entropy_kind_code(const std::string& kind) {
    if (kind == "constant") return BTN1D_ENTROPY_CONSTANT;
    if (kind == "exp-neg") return BTN1D_ENTROPY_EXP_NEG;
    if (kind == "fisher") return BTN1D_ENTROPY_FISHER;
    if (kind == "sin-rational") return BTN1D_ENTROPY_SIN_RATIONAL;
    if (kind == "square") return BTN1D_ENTROPY_SQUARE;
    throw ConfigError("entropy.kind must be one of constant, exp-neg, fisher, sin-rational, square (got '" +
                      kind + "')");
}

EntropyPtr make_entropy(const Config& cfg, json& echo) {
    const std::string kind = cfg.get_string("entropy.kind");
    const int code = entropy_kind_code(kind);
    double sigma = 0.0;
    if (code == BTN1D_ENTROPY_SIN_RATIONAL) {
        sigma = cfg.get_number("entropy.sigma");
    } else if (cfg.has("entropy.sigma")) {
        throw ConfigError("entropy.sigma only applies to the sin-rational kind");
    }
    btn1d_entropy* raw = nullptr;
    check(btn1d_entropy_create(code, sigma, &raw));
    echo["entropy"]["kind"] = kind;
    if (code == BTN1D_ENTROPY_SIN_RATIONAL) echo["entropy"]["sigma"] = sigma;
    return EntropyPtr(raw);
}

SourcePtr make_source(const Config& cfg, json& echo) {
    const std::string variant = cfg.get_string("source.variant");
    btn1d_source* raw = nullptr;
    if (variant == "linear") {
        const double m = cfg.get_number("source.m");
        const double q = cfg.get_number("source.q");
        const double L = cfg.get_number_or("source.L", 1.0);
        check(btn1d_source_create_linear(m, q, L, &raw));
        echo["source"] = {{"variant", variant}, {"m", m}, {"q", q}, {"L", L}};
    } else if (variant == "delta-pair") {
        const double a = cfg.get_number("source.a");
        const double b = cfg.get_number("source.b");
        const double x0 = cfg.get_number("source.x0");
        const double x1 = cfg.get_number("source.x1");
        check(btn1d_source_create_delta_pair(a, b, x0, x1, &raw));
        echo["source"] = {{"variant", variant}, {"a", a}, {"b", b}, {"x0", x0}, {"x1", x1}};
    } else {
        throw ConfigError("source.variant must be 'linear' or 'delta-pair' (got '" + variant +
                          "')");
    }
    return SourcePtr(raw);
}

std::vector<std::string> source_keys(const Config& cfg) {
    if (cfg.get_string_or("source.variant", "linear") == "delta-pair") {
        return {"source.variant", "source.a", "source.b", "source.x0", "source.x1"};
    }
    return {"source.variant", "source.m", "source.q", "source.L"};
}

// ---- artifact writers ----------------------------------------------------

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

/// Tabular artifact: CSV with fixed formatting, or the same content as JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void write(const std::filesystem::path& dir, const std::string& stem,
               const std::string& format) const {
        if (format == "json") {
            json j;
            j["columns"] = columns;
            j["rows"] = json::array();
            for (const auto& row : rows) j["rows"].push_back(row);
            write_json(dir / (stem + ".json"), j);
            return;
        }
        std::string text;
        for (size_t c = 0; c < columns.size(); ++c) {
            text += columns[c];
            text += c + 1 == columns.size() ? '\n' : ',';
        }
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                text += row[c];
                text += c + 1 == row.size() ? '\n' : ',';
            }
        }
        write_text(dir / (stem + ".csv"), text);
    }
};

json verdict_json(int guaranteed, int condition, const char* detail) {
    static const char* names[] = {
        "none",
        "single-sign-source",
        "aligned-primitive-convexity",
        "bounded-ratio-dominance",
        "divergent-phi-prime",
        "divergent-touchdown-integral",
        "entropy-tail-ratio",
    };
    json j;
    j["guaranteed"] = guaranteed != 0;
    j["condition"] = condition >= 0 && condition <= 6 ? names[condition] : "none";
    j["detail"] = detail;
    return j;
}

// ---- modes ---------------------------------------------------------------

struct Context {
    Config cfg;
    std::filesystem::path out_dir;
    std::string format;
    bool quiet = false;
};

void note(const Context& ctx, const std::string& line) {
    if (!ctx.quiet) std::cout << line << "\n";
}

int run_pde(const Context& ctx) {
    const Config& cfg = ctx.cfg;
    std::vector<std::string> allowed = {
        "mode", "entropy.kind", "entropy.sigma", "grid.n", "time.dt", "time.t_fin",
        "time.snapshot_every", "pde.d_init", "pde.floor", "output.dir", "output.format"};
    const auto src_keys = source_keys(cfg);
    allowed.insert(allowed.end(), src_keys.begin(), src_keys.end());
    cfg.require_known_keys(allowed);

    json summary;
    summary["mode"] = "pde";
    EntropyPtr entropy = make_entropy(cfg, summary);
    SourcePtr source = make_source(cfg, summary);

    btn1d_pde_config pc{};
    pc.n_intervals = static_cast<int>(cfg.get_integer("grid.n"));
    pc.length = cfg.get_number_or("source.L", 1.0);
    pc.dt = cfg.get_number("time.dt");
    pc.t_fin = cfg.get_number("time.t_fin");
    pc.d_init = cfg.get_number("pde.d_init");
    pc.d_init_nodes = nullptr;
    pc.snapshot_every = static_cast<int>(cfg.get_integer_or("time.snapshot_every", 0));
    pc.floor = cfg.get_number_or("pde.floor", 1e-10);
    summary["grid"] = {{"n", pc.n_intervals}, {"length", pc.length}};
    summary["time"] = {{"dt", pc.dt}, {"t_fin", pc.t_fin}};
    summary["d_init"] = pc.d_init;

    btn1d_trajectory* traj_raw = nullptr;
    check(btn1d_pde_run(source.get(), entropy.get(), &pc, &traj_raw));
    TrajectoryPtr traj(traj_raw);

    int n_nodes = 0;
    check(btn1d_trajectory_grid(traj.get(), &n_nodes, nullptr, nullptr));
    std::vector<double> nodes(n_nodes);
    check(btn1d_trajectory_nodes(traj.get(), nodes.data()));
    int n_snaps = 0;
    check(btn1d_trajectory_snapshot_count(traj.get(), &n_snaps));

    Table table;
    table.columns = {"t", "x", "D", "u"};
    json times = json::array(), energies = json::array(), min_ds = json::array();
    bool bound_all = true;
    double bound_worst = 0.0;
    std::vector<double> d(n_nodes), u(n_nodes);
    for (int k = 0; k < n_snaps; ++k) {
        double t = 0, e = 0, mind = 0;
        check(btn1d_trajectory_snapshot(traj.get(), k, &t, &e, &mind, d.data(), u.data()));
        for (int i = 0; i < n_nodes; ++i) {
            table.rows.push_back({fmt(t), fmt(nodes[i]), fmt(d[i]), fmt(u[i])});
        }
        times.push_back(t);
        energies.push_back(e);
        min_ds.push_back(mind);
        double lhs = 0, rhs = 0;
        int ok = 0;
        check(btn1d_trajectory_sup_bound(traj.get(), k, &lhs, &rhs, &ok));
        bound_all = bound_all && ok != 0;
        if (rhs > 0.0) bound_worst = std::max(bound_worst, lhs / rhs);
    }
    table.write(ctx.out_dir, "trajectory", ctx.format);

    summary["series"] = {{"t", times}, {"energy", energies}, {"min_d", min_ds}};
    summary["sup_bound"] = {{"satisfied_at_every_snapshot", bound_all},
                            {"max_lhs_over_rhs", bound_worst}};

    int guaranteed = 0, condition = 0;
    char detail[512];
    check(btn1d_classify_positivity(source.get(), entropy.get(), &guaranteed, &condition,
                                    detail, sizeof detail));
    summary["positivity"] = verdict_json(guaranteed, condition, detail);

    int touched = 0;
    double t_last = 0, argmin_x = 0, rejected = 0;
    char cause[64];
    check(btn1d_trajectory_termination(traj.get(), &touched, &t_last, &argmin_x, &rejected,
                                       cause, sizeof cause));
    summary["termination"]["status"] = touched ? "touchdown" : "completed";
    summary["termination"]["t_last_valid"] = t_last;
    summary["termination"]["argmin_x"] = argmin_x;
    summary["termination"]["cause"] = cause;
    if (touched) summary["termination"]["rejected_min"] = rejected;
    write_json(ctx.out_dir / "summary.json", summary);

    note(ctx, std::string("pde run: ") + (touched ? "touchdown at t = " : "completed at t = ") +
                  fmt(t_last) + ", argmin x = " + fmt(argmin_x));
    note(ctx, "wrote " + (ctx.out_dir / "trajectory").string() + "." + ctx.format + ", " +
                  (ctx.out_dir / "summary.json").string());
    return touched ? 2 : 0;
}

int run_delta(const Context& ctx) {
    const Config& cfg = ctx.cfg;
    std::vector<std::string> allowed = {
        "mode", "entropy.kind", "entropy.sigma", "time.dt", "time.t_fin",
        "time.snapshot_every", "delta.d1_init", "delta.d2_init", "output.dir", "output.format"};
    const auto src_keys = source_keys(cfg);
    allowed.insert(allowed.end(), src_keys.begin(), src_keys.end());
    cfg.require_known_keys(allowed);

    json summary;
    summary["mode"] = "delta";
    EntropyPtr entropy = make_entropy(cfg, summary);
    SourcePtr source = make_source(cfg, summary);

    btn1d_delta_config dc{};
    dc.d1_init = cfg.get_number("delta.d1_init");
    dc.d2_init = cfg.get_number("delta.d2_init");
    dc.dt = cfg.get_number("time.dt");
    dc.t_fin = cfg.get_number("time.t_fin");
    dc.snapshot_every = static_cast<int>(cfg.get_integer_or("time.snapshot_every", 0));
    summary["time"] = {{"dt", dc.dt}, {"t_fin", dc.t_fin}};
    summary["d_init"] = {{"d1", dc.d1_init}, {"d2", dc.d2_init}};

    btn1d_delta_trajectory* raw = nullptr;
    check(btn1d_delta_run(source.get(), entropy.get(), &dc, &raw));
    DeltaTrajectoryPtr traj(raw);

    int n_snaps = 0;
    check(btn1d_delta_snapshot_count(traj.get(), &n_snaps));
    Table table;
    table.columns = {"t", "D1", "D2", "phi2_u_x1"};
    json times = json::array(), energies = json::array();
    for (int k = 0; k < n_snaps; ++k) {
        double t = 0, d1 = 0, d2 = 0, phi = 0, e = 0;
        check(btn1d_delta_snapshot(traj.get(), k, &t, &d1, &d2, &phi));
        check(btn1d_delta_energy_at(traj.get(), k, &e));
        table.rows.push_back({fmt(t), fmt(d1), fmt(d2), fmt(phi)});
        times.push_back(t);
        energies.push_back(e);
    }
    table.write(ctx.out_dir, "trajectory", ctx.format);
    summary["series"] = {{"t", times}, {"energy", energies}};

    if (cfg.get_number("source.a") != cfg.get_number("source.b")) {
        int guaranteed = 0, condition = 0;
        char detail[512];
        check(btn1d_check_delta_conditions(source.get(), entropy.get(), &guaranteed,
                                           &condition, detail, sizeof detail));
        summary["positivity"] = verdict_json(guaranteed, condition, detail);
    } else {
        summary["positivity"] = nullptr;
    }

    int touched = 0;
    double t_last = 0, d2_last = 0, d2_rejected = 0;
    char cause[64];
    check(btn1d_delta_termination(traj.get(), &touched, &t_last, &d2_last, &d2_rejected,
                                  cause, sizeof cause));
    summary["termination"]["status"] = touched ? "touchdown" : "completed";
    summary["termination"]["t_last_valid"] = t_last;
    summary["termination"]["d2_last"] = d2_last;
    summary["termination"]["cause"] = cause;
    if (touched) {
        summary["termination"]["d2_rejected"] =
            std::isfinite(d2_rejected) ? json(d2_rejected) : json(nullptr);
    }
    write_json(ctx.out_dir / "summary.json", summary);

    note(ctx, std::string("delta run: ") +
                  (touched ? "touchdown at t = " : "completed at t = ") + fmt(t_last) +
                  ", D2 = " + fmt(d2_last));
    return touched ? 2 : 0;
}

Table convergence_table(const btn1d_convergence* conv) {
    Table table;
    table.columns = {"variable", "h", "dt", "t_reached", "error", "observed_order"};
    int n_series = 0;
    check(btn1d_convergence_series_count(conv, &n_series));
    for (int s = 0; s < n_series; ++s) {
        char label[16];
        check(btn1d_convergence_series_label(conv, s, label, sizeof label));
        int n_rows = 0;
        check(btn1d_convergence_row_count(conv, s, &n_rows));
        for (int r = 0; r < n_rows; ++r) {
            double h = 0, dt = 0, t_reached = 0, error = 0, order = 0;
            check(btn1d_convergence_row(conv, s, r, &h, &dt, &t_reached, &error, &order));
            table.rows.push_back({label, fmt(h), fmt(dt), fmt(t_reached), fmt(error),
                                  std::isfinite(order) ? fmt(order) : ""});
        }
    }
    return table;
}

json convergence_json(const Table& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        json row;
        row["variable"] = r[0];
        row["h"] = std::strtod(r[1].c_str(), nullptr);
        row["dt"] = std::strtod(r[2].c_str(), nullptr);
        row["t_reached"] = std::strtod(r[3].c_str(), nullptr);
        row["error"] = std::strtod(r[4].c_str(), nullptr);
        row["observed_order"] = r[5].empty() ? json(nullptr) : json(std::strtod(r[5].c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

int run_convergence(const Context& ctx) {
    const Config& cfg = ctx.cfg;
    std::vector<std::string> allowed = {
        "mode", "entropy.kind", "entropy.sigma", "time.t_fin", "output.dir", "output.format",
        "convergence.target", "convergence.reference", "convergence.refinements",
        "convergence.dt_ref", "convergence.n", "pde.d_init", "delta.d1_init",
        "delta.d2_init"};
    const auto src_keys = source_keys(cfg);
    allowed.insert(allowed.end(), src_keys.begin(), src_keys.end());
    cfg.require_known_keys(allowed);

    json summary;
    summary["mode"] = "convergence";
    const std::string target = cfg.get_string_or("convergence.target", "pde");
    const std::string reference = cfg.get_string_or("convergence.reference", "exact");
    const std::vector<double> refinements = cfg.get_number_list("convergence.refinements");
    const double t_fin = cfg.get_number("time.t_fin");
    summary["target"] = target;
    summary["reference"] = reference;
    summary["t_fin"] = t_fin;

    SourcePtr source = make_source(cfg, summary);
    ConvergencePtr conv;

    if (target == "pde" && reference == "exact") {
        // closed-form reference exists only for the constant entropy
        if (cfg.get_string_or("entropy.kind", "constant") != "constant") {
            throw ConfigError("convergence.reference = \"exact\" requires entropy.kind = \"constant\"");
        }
        summary["entropy"]["kind"] = "constant";
        const double d_init = cfg.get_number("pde.d_init");
        summary["d_init"] = d_init;
        btn1d_convergence* raw = nullptr;
        check(btn1d_convergence_pde_exact(source.get(), d_init, t_fin,
                                          cfg.get_number_or("source.L", 1.0),
                                          refinements.data(),
                                          static_cast<int>(refinements.size()), &raw));
        conv.reset(raw);
    } else if (target == "pde") {
        if (reference != "fine") {
            throw ConfigError("convergence.reference must be \"exact\" or \"fine\"");
        }
        EntropyPtr entropy = make_entropy(cfg, summary);
        const double d_init = cfg.get_number("pde.d_init");
        const double dt_ref = cfg.get_number("convergence.dt_ref");
        const int n = static_cast<int>(cfg.get_integer_or("convergence.n", 10000));
        summary["d_init"] = d_init;
        summary["dt_ref"] = dt_ref;
        summary["n"] = n;
        btn1d_convergence* raw = nullptr;
        check(btn1d_convergence_pde_time(source.get(), entropy.get(), n, d_init, t_fin,
                                         cfg.get_number_or("source.L", 1.0), dt_ref,
                                         refinements.data(),
                                         static_cast<int>(refinements.size()), &raw));
        conv.reset(raw);
    } else if (target == "delta") {
        EntropyPtr entropy = make_entropy(cfg, summary);
        const double d1 = cfg.get_number("delta.d1_init");
        const double d2 = cfg.get_number("delta.d2_init");
        const double dt_ref = cfg.get_number("convergence.dt_ref");
        summary["d_init"] = {{"d1", d1}, {"d2", d2}};
        summary["dt_ref"] = dt_ref;
        btn1d_convergence* raw = nullptr;
        check(btn1d_convergence_delta(source.get(), entropy.get(), d1, d2, t_fin, dt_ref,
                                      refinements.data(),
                                      static_cast<int>(refinements.size()), &raw));
        conv.reset(raw);
    } else {
        throw ConfigError("convergence.target must be 'pde' or 'delta'");
    }

    const Table table = convergence_table(conv.get());
    table.write(ctx.out_dir, "convergence", ctx.format);
    summary["rows"] = convergence_json(table);
    write_json(ctx.out_dir / "summary.json", summary);
    note(ctx, "convergence study: " + std::to_string(table.rows.size()) + " rows, wrote " +
                  (ctx.out_dir / "convergence").string() + "." + ctx.format);
    return 0;
}

int run_sweep(const Context& ctx) {
    const Config& cfg = ctx.cfg;
    std::vector<std::string> allowed = {
        "mode", "entropy.kind", "entropy.sigma", "grid.n", "time.t_fin",
        "sweep.dt_list", "pde.d_init", "pde.floor", "output.dir", "output.format"};
    const auto src_keys = source_keys(cfg);
    allowed.insert(allowed.end(), src_keys.begin(), src_keys.end());
    cfg.require_known_keys(allowed);

    json summary;
    summary["mode"] = "sweep-min-d";
    EntropyPtr entropy = make_entropy(cfg, summary);
    SourcePtr source = make_source(cfg, summary);
    const std::vector<double> dt_list = cfg.get_number_list("sweep.dt_list");

    btn1d_pde_config pc{};
    pc.n_intervals = static_cast<int>(cfg.get_integer("grid.n"));
    pc.length = cfg.get_number_or("source.L", 1.0);
    pc.dt = dt_list.front();
    pc.t_fin = cfg.get_number("time.t_fin");
    pc.d_init = cfg.get_number("pde.d_init");
    pc.snapshot_every = 0;
    pc.floor = cfg.get_number_or("pde.floor", 1e-10);
    summary["grid"] = {{"n", pc.n_intervals}, {"length", pc.length}};
    summary["t_fin"] = pc.t_fin;
    summary["d_init"] = pc.d_init;

    btn1d_sweep* raw = nullptr;
    check(btn1d_min_d_sweep(source.get(), entropy.get(), &pc, dt_list.data(),
                            static_cast<int>(dt_list.size()), &raw));
    SweepPtr sweep(raw);

    int n_rows = 0;
    check(btn1d_sweep_row_count(sweep.get(), &n_rows));
    json rows = json::array();
    for (int r = 0; r < n_rows; ++r) {
        double dt = 0, t_last = 0, min_d = 0;
        int touched = 0;
        check(btn1d_sweep_row(sweep.get(), r, &dt, &t_last, &min_d, &touched));
        rows.push_back({{"dt", dt},
                        {"t_last", t_last},
                        {"min_d", min_d},
                        {"touched_down", touched != 0}});
    }
    summary["rows"] = rows;
    write_json(ctx.out_dir / "summary.json", summary);
    note(ctx, "min-D sweep: " + std::to_string(n_rows) + " rows, wrote " +
                  (ctx.out_dir / "summary.json").string());
    return 0;
}

int run_check_conditions(const Context& ctx) {
    const Config& cfg = ctx.cfg;
    std::vector<std::string> allowed = {"mode", "entropy.kind", "entropy.sigma", "output.dir",
                                        "output.format"};
    const auto src_keys = source_keys(cfg);
    allowed.insert(allowed.end(), src_keys.begin(), src_keys.end());
    cfg.require_known_keys(allowed);

    json summary;
    summary["mode"] = "check-conditions";
    EntropyPtr entropy = make_entropy(cfg, summary);
    SourcePtr source = make_source(cfg, summary);

    int guaranteed = 0, condition = 0;
    char detail[512];
    check(btn1d_classify_positivity(source.get(), entropy.get(), &guaranteed, &condition,
                                    detail, sizeof detail));
    summary["positivity"] = verdict_json(guaranteed, condition, detail);

    if (cfg.get_string("source.variant") == "delta-pair" &&
        cfg.get_number("source.a") != cfg.get_number("source.b")) {
        check(btn1d_check_delta_conditions(source.get(), entropy.get(), &guaranteed,
                                           &condition, detail, sizeof detail));
        summary["delta_conditions"] = verdict_json(guaranteed, condition, detail);
    }
    write_json(ctx.out_dir / "summary.json", summary);
    note(ctx, std::string("verdict: ") +
                  (summary["positivity"]["guaranteed"].get<bool>() ? "guaranteed positive"
                                                                   : "inconclusive"));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D self-regulating transport-network solver"};
    std::string config_path;
    std::vector<std::string> overrides;
    bool quiet = false;
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--set", overrides, "override a config key (key=value, repeatable)");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.set_version_flag("--version", btn1d_version());
    CLI11_PARSE(app, argc, argv);

    Context ctx;
    ctx.quiet = quiet;
    std::string mode;
    try {
        ctx.cfg = Config::parse_file(config_path);
        for (const std::string& assignment : overrides) {
            ctx.cfg.apply_override(assignment);
        }
        std::string out_dir = ctx.cfg.get_string("output.dir");
        if (const char* env = std::getenv("BTN1D_OUTPUT_DIR"); env && *env) {
            out_dir = env;
        }
        ctx.out_dir = out_dir;
        ctx.format = ctx.cfg.get_string_or("output.format", "csv");
        if (ctx.format != "csv" && ctx.format != "json") {
            throw ConfigError("output.format must be 'csv' or 'json'");
        }
        std::filesystem::create_directories(ctx.out_dir);

        mode = ctx.cfg.get_string("mode");
        if (mode == "pde") return run_pde(ctx);
        if (mode == "delta") return run_delta(ctx);
        if (mode == "convergence") return run_convergence(ctx);
        if (mode == "sweep-min-d") return run_sweep(ctx);
        if (mode == "check-conditions") return run_check_conditions(ctx);
        throw ConfigError(
            "mode must be one of pde, delta, convergence, sweep-min-d, check-conditions");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ApiError& e) {
        std::cerr << "error (" << code_name(e.code) << "): " << e.what() << "\n";
        if (!ctx.out_dir.empty()) {
            json summary;
            summary["mode"] = mode;
            summary["error"] = {{"code", code_name(e.code)}, {"message", e.what()}};
            try {
                write_json(ctx.out_dir / "summary.json", summary);
            } catch (...) {
            }
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
