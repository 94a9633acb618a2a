// hullfront command line: limiting constants for random convex hulls and the
// Monte Carlo experiments that validate them.
//
// Exit codes: 0 ok; 2 usage/config errors; 3 hypothesis violations under
// --strict.  Row outputs are CSV (or JSON mirrors) with a '#' metadata header
// carrying the schema version and seed triple; every file output gets a
// <out>.manifest.json sidecar describing the resolved run.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hullfront/errors.hpp"
#include "hullfront/experiments.hpp"
#include "hullfront/geometry.hpp"
#include "hullfront/limits.hpp"
#include "hullfront/version.hpp"

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct CommonOpts {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string out;
    std::string format;  // per-command default when empty
    int workers = 1;
    bool strict = false;
    double tol_tail = 1e-8;
    double tol_quad = 1e-8;
};

struct PolygonOpts {
    std::string polygon_path;
    int regular_m = 0;
    bool square = false;
    double perimeter = 0.0;  // 0 = not set
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "master seed (env HULLFRONT_SEED)")
        ->envname("HULLFRONT_SEED");
    cmd->add_option("--stream", o.stream, "stream id within the seed");
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv | json (constant also: text)")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
    cmd->add_flag("--strict", o.strict, "escalate hypothesis violations to exit 3");
    cmd->add_option("--tol-tail", o.tol_tail, "tail truncation allowance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-quad", o.tol_quad, "outer quadrature tolerance")
        ->check(CLI::PositiveNumber);
}

void add_polygon_source(CLI::App* cmd, PolygonOpts& p) {
    auto* file = cmd->add_option("--polygon", p.polygon_path,
                                 "polygon JSON file {\"vertices\": [[x,y],...]}");
    auto* reg = cmd->add_option("--regular", p.regular_m, "regular M-gon")
                    ->check(CLI::Range(3, 1000000));
    auto* sq = cmd->add_flag("--square", p.square, "unit square");
    cmd->add_option("--perimeter", p.perimeter,
                    "perimeter for --regular/--square (default 4*side scaling)")
        ->check(CLI::PositiveNumber);
    file->excludes(reg);
    file->excludes(sq);
    reg->excludes(sq);
}

hullfront::QuadratureConfig quad_config(const CommonOpts& o) {
    hullfront::QuadratureConfig cfg;
    cfg.tail_eps = o.tol_tail;
    cfg.outer_abs_tol = o.tol_quad;
    cfg.inner_abs_tol = std::min(1e-11, 1e-3 * o.tol_quad);
    cfg.inner_tail_eps = std::min(1e-12, 1e-4 * o.tol_tail);
    return cfg;
}

hullfront::Polygon load_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hullfront::DomainError("cannot open polygon file: " + path);
    json j = json::parse(in);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw hullfront::DomainError("polygon file needs a \"vertices\" array");
    std::vector<hullfront::Point2> pts;
    for (const json& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw hullfront::DomainError("vertices must be [x, y] number pairs");
        pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return hullfront::polygon_from_vertices(std::move(pts));
}

hullfront::Polygon resolve_polygon(const PolygonOpts& p) {
    const int sources = (!p.polygon_path.empty()) + (p.regular_m > 0) + p.square;
    if (sources != 1)
        throw hullfront::DomainError(
            "choose exactly one polygon source: --polygon, --regular, or --square");
    if (!p.polygon_path.empty()) {
        if (p.perimeter > 0.0)
            throw hullfront::DomainError("--perimeter applies to --regular/--square only");
        return load_polygon_file(p.polygon_path);
    }
    if (p.regular_m > 0)
        return hullfront::regular_polygon(p.regular_m,
                                          p.perimeter > 0.0 ? p.perimeter : 1.0);
    const double side = p.perimeter > 0.0 ? p.perimeter / 4.0 : 1.0;
    return hullfront::polygon_from_vertices(
        {{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}});
}

json polygon_source_json(const PolygonOpts& p) {
    json j;
    if (!p.polygon_path.empty()) j["polygon"] = p.polygon_path;
    if (p.regular_m > 0) j["regular"] = p.regular_m;
    if (p.square) j["square"] = true;
    if (p.perimeter > 0.0) j["perimeter"] = p.perimeter;
    return j;
}

// ---- output plumbing -------------------------------------------------------

struct Table {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& t, const CommonOpts& o) {
    std::ostringstream s;
    // replication indices start at 0 within the (seed, stream) pair
    s << "# schema=" << t.schema << " seed=" << o.seed << " stream=" << o.stream
      << " rep_base=0 tool=hullfront-" << hullfront::kVersion << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        s << (i ? "," : "") << t.columns[i];
    s << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
        s << "\n";
    }
    return s.str();
}

json rows_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            const std::string& cell = row[i];
            if (cell == "true") {
                r[t.columns[i]] = true;
            } else if (cell == "false") {
                r[t.columns[i]] = false;
            } else if (cell.empty()) {
                r[t.columns[i]] = nullptr;
            } else {
                try {
                    std::size_t used = 0;
                    const double x = std::stod(cell, &used);
                    r[t.columns[i]] = used == cell.size() ? json(x) : json(cell);
                } catch (...) {
                    r[t.columns[i]] = cell;
                }
            }
        }
        rows.push_back(r);
    }
    return rows;
}

json make_manifest(const std::string& command, const CommonOpts& o, json config) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    json m;
    m["schema"] = "manifest-v1";
    m["tool"] = {{"name", "hullfront"}, {"version", hullfront::kVersion}};
    m["command"] = command;
    m["config"] = std::move(config);
    m["seed"] = {{"master_seed", o.seed}, {"stream_id", o.stream}, {"replication_base", 0}};
    m["tolerances"] = {{"tail", o.tol_tail}, {"quad", o.tol_quad}};
    m["workers"] = o.workers;
    m["strict"] = o.strict;
    m["wall_clock_utc"] = stamp;
    return m;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hullfront::DomainError("cannot write output file: " + path);
    out << content;
}

// Emits the table per --format and pairs it with the manifest: a sidecar
// <out>.manifest.json when writing files, stderr otherwise.
void emit(const Table& t, const std::string& command, const CommonOpts& o,
          json config) {
    const std::string format = o.format.empty() ? "csv" : o.format;
    if (format == "text")
        throw hullfront::DomainError("--format text is only available for `constant`");
    json manifest = make_manifest(command, o, std::move(config));

    std::string payload;
    if (format == "csv") {
        payload = render_csv(t, o);
    } else {
        json doc;
        doc["schema"] = t.schema;
        doc["seed"] = {{"master_seed", o.seed}, {"stream_id", o.stream}, {"replication_base", 0}};
        doc["rows"] = rows_json(t);
        doc["manifest"] = manifest;
        payload = doc.dump(2);
        payload += "\n";
    }

    if (o.out.empty()) {
        std::cout << payload;
        std::clog << manifest.dump() << "\n";
    } else {
        write_file(o.out, payload);
        write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
    }
}

// ---- subcommands -----------------------------------------------------------

int run_constant(const CommonOpts& o, const PolygonOpts& popts) {
    const hullfront::Polygon q = resolve_polygon(popts);
    const hullfront::QuadratureConfig qcfg = quad_config(o);

    const hullfront::QuadratureResult c = hullfront::limit_constant(q, qcfg);
    const double shape = c.value / q.perimeter();

    bool hypothesis_ok = true;
    std::string hypothesis_note;
    double a_bound = 0.0;
    try {
        a_bound = hullfront::inclusion_exclusion_A(q);
    } catch (const hullfront::HypothesisViolated& e) {
        hypothesis_ok = false;
        hypothesis_note = e.what();
    } catch (const hullfront::ComplexityLimit& e) {
        hypothesis_ok = false;
        hypothesis_note = e.what();
    }
    const bool sandwich =
        hypothesis_ok && a_bound / 5.0 <= c.value && c.value <= a_bound;

    const bool is_regular = popts.regular_m > 0;
    const double ratio = is_regular
        ? c.value * popts.regular_m / std::log(double(popts.regular_m))
        : 0.0;

    // violations are reported but never block the constant; --strict only
    // escalates the exit code after the report is written
    int exit_code = 0;
    if (!hypothesis_ok) {
        std::clog << "warning: " << hypothesis_note << "\n";
        if (o.strict) {
            std::cerr << "error: hypothesis violation under --strict: "
                      << hypothesis_note << "\n";
            exit_code = 3;
        }
    }

    const std::string format = o.format.empty() ? "text" : o.format;
    if (format == "text") {
        std::ostringstream s;
        s << "polygon: m=" << q.size() << " perimeter=" << fmt(q.perimeter())
          << " area=" << fmt(q.area()) << "\n";
        s << "limit_constant = " << fmt(c.value) << "  (abs error bound "
          << fmt(c.abs_error_bound) << ", " << c.evaluations << " evaluations)\n";
        s << "shape_integral = " << fmt(shape) << "\n";
        if (hypothesis_ok) {
            s << "A(Q) = " << fmt(a_bound) << "  A(Q)/5 = " << fmt(a_bound / 5.0) << "\n";
            s << "bound check A/5 <= C <= A: " << (sandwich ? "PASS" : "FAIL") << "\n";
        } else {
            s << "A(Q): unavailable (" << hypothesis_note << ")\n";
        }
        if (is_regular) s << "ratio M*C/log M = " << fmt(ratio) << "\n";
        if (o.out.empty()) {
            std::cout << s.str();
        } else {
            write_file(o.out, s.str());
            write_file(o.out + ".manifest.json",
                       make_manifest("constant", o, polygon_source_json(popts)).dump(2) + "\n");
        }
        return exit_code;
    }

    Table t;
    t.schema = "constant-v1";
    t.columns = {"m", "perimeter", "area", "limit_value", "abs_error_bound",
                 "shape_integral", "incl_excl_A", "incl_excl_A_over_5",
                 "sandwich_pass", "hypothesis_ok", "ratio_mlogm"};
    t.rows = {{std::to_string(q.size()), fmt(q.perimeter()), fmt(q.area()),
               fmt(c.value), fmt(c.abs_error_bound), fmt(shape),
               hypothesis_ok ? fmt(a_bound) : "",
               hypothesis_ok ? fmt(a_bound / 5.0) : "",
               hypothesis_ok ? (sandwich ? "true" : "false") : "",
               hypothesis_ok ? "true" : "false",
               is_regular ? fmt(ratio) : ""}};
    emit(t, "constant", o, polygon_source_json(popts));
    return exit_code;
}

int run_simulate(const CommonOpts& o, const PolygonOpts& popts,
                 const std::string& mode, const std::vector<std::size_t>& n_list,
                 std::size_t reps, double radius) {
    hullfront::ExperimentConfig cfg;
    if (mode == "boundary")
        cfg.mode = hullfront::SampleMode::boundary;
    else if (mode == "interior")
        cfg.mode = hullfront::SampleMode::interior;
    else if (mode == "circle")
        cfg.mode = hullfront::SampleMode::circle;
    else
        throw hullfront::DomainError("mode must be boundary, interior, or circle");

    if (cfg.mode != hullfront::SampleMode::circle)
        cfg.polygon = resolve_polygon(popts);
    cfg.n_list = n_list;
    cfg.replications = reps;
    cfg.master_seed = o.seed;
    cfg.stream_id = o.stream;
    cfg.circle_radius = radius;
    cfg.workers = o.workers;

    const std::vector<hullfront::ConvergenceRow> rows =
        hullfront::convergence_table(cfg, quad_config(o));

    Table t;
    t.schema = "simulate-v1";
    t.columns = {"n", "reps", "mean_delta", "stderr", "scaled_mean",
                 "limit_value", "z_gap"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.n), std::to_string(r.replications),
                          fmt(r.mean_delta), fmt(r.std_err), fmt(r.scaled_mean),
                          fmt(r.limit_value), fmt(r.z_gap)});

    json config;
    config["mode"] = mode;
    config["n"] = n_list;
    config["reps"] = reps;
    if (cfg.mode != hullfront::SampleMode::circle)
        config["polygon_source"] = polygon_source_json(popts);
    else
        config["radius"] = radius;
    emit(t, "simulate", o, std::move(config));
    return 0;
}

int run_cone(const CommonOpts& o, double alpha, const std::vector<double>& r_grid,
             std::size_t samples) {
    const hullfront::ConeResult res = hullfront::simulate_cone_limit(
        alpha, r_grid, samples, {o.seed, o.stream, 0}, o.workers, quad_config(o));
    if (res.window_retries > 0)
        std::clog << "note: " << res.window_retries << " window retries\n";

    Table t;
    t.schema = "cone-v1";
    t.columns = {"r", "empirical", "q_theory", "binom_3sigma", "pass"};
    for (const auto& p : res.points)
        t.rows.push_back({fmt(p.r), fmt(p.empirical), fmt(p.q_theory),
                          fmt(p.binom_3sigma), p.pass ? "true" : "false"});

    json config;
    config["alpha"] = alpha;
    config["r_grid"] = r_grid;
    config["samples"] = samples;
    emit(t, "cone", o, std::move(config));
    return 0;
}

int run_mgon_sweep(const CommonOpts& o, const std::vector<int>& m_list) {
    const hullfront::QuadratureConfig qcfg = quad_config(o);
    Table t;
    t.schema = "mgon-sweep-v1";
    t.columns = {"M", "C_M", "abs_error_bound", "A_M", "A_M_over_5",
                 "ratio_mlogm", "sandwich_pass"};
    for (int m : m_list) {
        const hullfront::MgonConstant mc = hullfront::regular_mgon_constant(m, qcfg);
        const double a_bound =
            hullfront::inclusion_exclusion_A(hullfront::regular_polygon(m, 1.0));
        const bool sandwich =
            a_bound / 5.0 <= mc.constant.value && mc.constant.value <= a_bound;
        t.rows.push_back({std::to_string(m), fmt(mc.constant.value),
                          fmt(mc.constant.abs_error_bound), fmt(a_bound),
                          fmt(a_bound / 5.0), fmt(mc.ratio_mlogm),
                          sandwich ? "true" : "false"});
    }
    json config;
    config["m_list"] = m_list;
    emit(t, "mgon-sweep", o, std::move(config));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limiting Hausdorff-distance constants for random convex hulls, "
                 "with Monte Carlo validation"};
    app.require_subcommand(1);

    CommonOpts copts;
    PolygonOpts popts;

    auto* constant = app.add_subcommand(
        "constant", "limit constant, shape integral, and inclusion-exclusion bounds");
    add_common(constant, copts);
    add_polygon_source(constant, popts);

    auto* simulate = app.add_subcommand(
        "simulate", "convergence table: finite-n Monte Carlo vs the limit");
    std::string mode = "boundary";
    std::vector<std::size_t> n_list;
    std::size_t reps = 1000;
    double radius = 1.0;
    add_common(simulate, copts);
    add_polygon_source(simulate, popts);
    simulate->add_option("--mode", mode, "boundary | interior | circle")
        ->check(CLI::IsMember({"boundary", "interior", "circle"}));
    simulate->add_option("--n", n_list, "point counts, ascending")
        ->required()
        ->delimiter(',');
    simulate->add_option("--reps", reps, "replications (>= 100)");
    simulate->add_option("--radius", radius, "circle radius (circle mode)")
        ->check(CLI::PositiveNumber);

    auto* cone = app.add_subcommand(
        "cone", "Poisson cone process: empirical survival vs quadrature");
    double alpha = 0.0;
    std::vector<double> r_grid{0.5, 1.0, 2.0};
    std::size_t samples = 1000000;
    add_common(cone, copts);
    cone->add_option("--alpha", alpha, "cone angle in (0, pi), radians")->required();
    cone->add_option("--r-grid", r_grid, "survival thresholds, ascending")
        ->delimiter(',');
    cone->add_option("--samples", samples, "cone samples (>= 10^4)");

    auto* mgon = app.add_subcommand(
        "mgon-sweep", "regular M-gon constants with sandwich bounds");
    std::vector<int> m_list{4, 8, 16, 32, 64};
    add_common(mgon, copts);
    mgon->add_option("--m-list", m_list, "polygon sizes, each >= 4")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(constant)) return run_constant(copts, popts);
        if (app.got_subcommand(simulate))
            return run_simulate(copts, popts, mode, n_list, reps, radius);
        if (app.got_subcommand(cone)) return run_cone(copts, alpha, r_grid, samples);
        if (app.got_subcommand(mgon)) return run_mgon_sweep(copts, m_list);
    } catch (const hullfront::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
