// Command-line front end: cut-tail, extremal, verify2d, simulate, sweep.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuttail/cut_tail.hpp"
#include "cuttail/geometry2d.hpp"
#include "cuttail/switchsim.hpp"

using json = nlohmann::json;
using namespace cuttail;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitNotHurwitz = 2;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Matrix parse_matrix_text(std::istream& in, const std::string& name) {
    std::string first;
    if (!std::getline(in, first)) throw ParseError(name + ": empty input");
    // JSON object format: {"matrix": [[...], ...]}
    auto pos = first.find_first_not_of(" \t");
    if (pos != std::string::npos && first[pos] == '{') {
        std::ostringstream rest;
        rest << first << '\n' << in.rdbuf();
        json j = json::parse(rest.str());
        if (!j.contains("matrix")) throw ParseError(name + ": missing \"matrix\" key");
        std::vector<Vec> rows;
        for (const auto& r : j["matrix"]) rows.push_back(r.get<Vec>());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].size() != rows.size())
                throw ParseError(name + ": row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " +
                                 std::to_string(rows.size()));
        return Matrix::from_rows(rows);
    }
    std::size_t d = 0;
    try {
        d = std::stoul(first);
    } catch (const std::exception&) {
        throw ParseError(name + ", line 1: expected the dimension, got \"" + first + "\"");
    }
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i) {
        std::string line;
        if (!std::getline(in, line))
            throw ParseError(name + ": expected " + std::to_string(d) + " rows, got " +
                             std::to_string(i));
        std::istringstream ls(line);
        Vec row;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw ParseError(name + ", line " + std::to_string(i + 2) + ", column " +
                                 std::to_string(row.size() + 1) + ": non-numeric token \"" +
                                 tok + "\"");
            row.push_back(v);
        }
        if (row.size() != d)
            throw ParseError(name + ", line " + std::to_string(i + 2) + ": row " +
                             std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(d));
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(rows);
}

Matrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return parse_matrix_text(in, path);
}

/// Grammar: comma-separated terms "a", "a+bi" / "a-bi", optional ":r" block
/// suffix, e.g. "-0.3:2, -0.8+0.9i".
Spectrum parse_spectrum(const std::string& text) {
    Spectrum s;
    std::istringstream in(text);
    std::string term;
    while (std::getline(in, term, ',')) {
        const char* p = term.c_str();
        char* end = nullptr;
        double alpha = std::strtod(p, &end);
        if (end == p) throw ParseError("spectrum term \"" + term + "\": expected a number");
        p = end;
        double beta = 0.0;
        while (*p == ' ') ++p;
        if (*p == '+' || (*p == '-' && term.find('i', p - term.c_str()) != std::string::npos)) {
            beta = std::strtod(p, &end);
            if (end == p || *end != 'i')
                throw ParseError("spectrum term \"" + term + "\": malformed imaginary part");
            p = end + 1;
            beta = std::abs(beta); // conjugate pairs are stored once
        }
        int block = 1;
        while (*p == ' ') ++p;
        if (*p == ':') {
            block = static_cast<int>(std::strtol(p + 1, &end, 10));
            if (end == p + 1 || block < 1)
                throw ParseError("spectrum term \"" + term + "\": bad block size");
            p = end;
        }
        while (*p == ' ') ++p;
        if (*p != '\0')
            throw ParseError("spectrum term \"" + term + "\": trailing characters \"" +
                             std::string(p) + "\"");
        s.components.push_back({alpha, beta, block});
    }
    if (s.components.empty()) throw ParseError("empty spectrum string");
    return s;
}

struct CommonOpts {
    std::string matrix_path;
    std::string spectrum_str;
    double eps = 1e-6;
    double time_tol = 1e-4;
    double value_tol = 1e-5;
    int samples = 4000;
    double horizon = 0.0;
    std::uint64_t seed = 1;
    std::string format = "json-lines";
    std::string plot_dir;
    bool no_timestamps = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_input) {
    auto* m = cmd->add_option("--matrix", o.matrix_path, "matrix file (\"d\" + d rows, or JSON)");
    auto* sp = cmd->add_option("--spectrum", o.spectrum_str,
                               "spectrum string, e.g. \"-0.3:2, -0.8+0.9i\"");
    m->excludes(sp);
    if (need_input) {
        // exactly one of the two
    }
    cmd->add_option("--eps", o.eps, "exchange bracket tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--time-tol", o.time_tol, "bisection width")->check(CLI::PositiveNumber);
    cmd->add_option("--value-tol", o.value_tol, "boundary predicate tolerance (2-d baseline)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--samples", o.samples, "trajectory samples for oracles/plots");
    cmd->add_option("--horizon", o.horizon, "time horizon (0 = automatic)");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json-lines", "csv"}));
    cmd->add_option("--plot", o.plot_dir, "directory for plot CSV/SVG emission");
    cmd->add_flag("--no-timestamps", o.no_timestamps, "omit wall time from reports");
}

struct Input {
    Spectrum spectrum;
    std::optional<Matrix> matrix;
    std::string echo;
};

Input load_input(const CommonOpts& o) {
    Input in;
    if (!o.matrix_path.empty()) {
        in.matrix = parse_matrix_file(o.matrix_path);
        in.spectrum = eigenvalues(*in.matrix);
        in.echo = "matrix:" + o.matrix_path;
    } else if (!o.spectrum_str.empty()) {
        in.spectrum = parse_spectrum(o.spectrum_str);
        in.echo = "spectrum:" + o.spectrum_str;
    } else {
        throw ParseError("one of --matrix or --spectrum is required");
    }
    return in;
}

json spectrum_json(const Spectrum& s) {
    json arr = json::array();
    for (const auto& c : s.components)
        arr.push_back({{"alpha", c.alpha}, {"beta", c.beta}, {"block", c.block}});
    return arr;
}

json basis_json(const Basis& b) {
    json arr = json::array();
    for (const auto& f : b.functions)
        arr.push_back({{"power", f.power},
                       {"alpha", f.alpha},
                       {"beta", f.beta},
                       {"phase", f.phase == Phase::Sine ? "sin" : "cos"}});
    return arr;
}

std::string csv_escape(const json& v) {
    if (v.is_string()) return "\"" + v.get<std::string>() + "\"";
    return v.dump();
}

void emit(const json& report, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        std::string header, row;
        for (auto it = report.begin(); it != report.end(); ++it) {
            if (!header.empty()) { header += ','; row += ','; }
            header += it.key();
            row += it->is_structured() ? "\"" + it->dump() + "\"" : csv_escape(*it);
        }
        out << header << '\n' << row << '\n';
    } else {
        out << report.dump() << '\n';
    }
}

// --- plot emission ------------------------------------------------------

std::string svg_path(const std::vector<Point2>& pts, double cx, double cy, double scale,
                     bool close) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ss << (i == 0 ? "M" : "L") << cx + scale * pts[i][0] << ' ' << cy - scale * pts[i][1]
           << ' ';
    }
    if (close) ss << 'Z';
    return ss.str();
}

void write_hull_plot(const std::string& dir, const Spectrum& s, double t_cut, double horizon,
                     int samples) {
    std::vector<Point2> traj;
    traj.reserve(samples);
    for (int i = 0; i < samples; ++i)
        traj.push_back(canonical_trajectory_point(s, horizon * i / (samples - 1.0)));
    PlanarHull hull = symmetrized_hull(traj);
    Point2 mark = canonical_trajectory_point(s, t_cut);

    std::ofstream csv(dir + "/trajectory.csv");
    csv << "t,x1,x2\n";
    for (int i = 0; i < samples; ++i) {
        double t = horizon * i / (samples - 1.0);
        csv << t << ',' << traj[i][0] << ',' << traj[i][1] << '\n';
    }

    double ext = 0.0;
    for (const auto& v : hull.vertices) ext = std::max({ext, std::abs(v[0]), std::abs(v[1])});
    const double w = 640, cx = w / 2, cy = w / 2, scale = 0.45 * w / ext;
    std::ofstream svg(dir + "/hull.svg");
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << w
        << "' viewBox='0 0 " << w << ' ' << w << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<path d='" << svg_path(hull.vertices, cx, cy, scale, true)
        << "' fill='none' stroke='#888' stroke-width='1.5'/>\n"
        << "<path d='" << svg_path(traj, cx, cy, scale, false)
        << "' fill='none' stroke='#1565c0' stroke-width='1'/>\n"
        << "<circle cx='" << cx + scale * mark[0] << "' cy='" << cy - scale * mark[1]
        << "' r='4' fill='#c62828'/>\n"
        << "<text x='10' y='20' font-size='14'>cut-tail point t=" << t_cut << "</text>\n"
        << "</svg>\n";
}

void write_norm_plot(const std::string& dir, const Matrix& m, double t_cut, double horizon,
                     int samples) {
    Vec x0(m.rows(), 1.0);
    std::vector<double> times;
    for (int i = 0; i < samples; ++i) times.push_back(horizon * i / (samples - 1.0));
    auto pts = sample_trajectory(m, x0, times);
    std::ofstream csv(dir + "/norm.csv");
    csv << "t,norm\n";
    double maxn = 0.0;
    std::vector<Point2> curve;
    for (int i = 0; i < samples; ++i) {
        double n = norm2(pts[i]);
        maxn = std::max(maxn, n);
        csv << times[i] << ',' << n << '\n';
        curve.push_back({times[i], n});
    }
    const double w = 640, h = 400;
    std::ofstream svg(dir + "/norm.svg");
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n<path d='";
    for (std::size_t i = 0; i < curve.size(); ++i)
        svg << (i == 0 ? "M" : "L") << 40 + (w - 60) * curve[i][0] / horizon << ' '
            << h - 30 - (h - 60) * curve[i][1] / maxn << ' ';
    svg << "' fill='none' stroke='#1565c0' stroke-width='1'/>\n"
        << "<line x1='" << 40 + (w - 60) * t_cut / horizon << "' y1='30' x2='"
        << 40 + (w - 60) * t_cut / horizon << "' y2='" << h - 30
        << "' stroke='#c62828' stroke-dasharray='4'/>\n"
        << "<text x='10' y='20' font-size='14'>|x(t)|, cut-tail at t=" << t_cut << "</text>\n"
        << "</svg>\n";
}

// --- commands -----------------------------------------------------------

int run_cut_tail(const CommonOpts& o, std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    Input in = load_input(o);
    if (!is_hurwitz(in.spectrum)) {
        std::cerr << "error: input is not Hurwitz (every eigenvalue must have negative real "
                     "part); cut-tail points are defined for Hurwitz matrices only\n";
        return kExitNotHurwitz;
    }
    CutTailOptions opts;
    opts.eps = o.eps;
    opts.time_tol = o.time_tol;
    opts.value_tol = o.value_tol;
    CutTailResult r = find_cut_tail(in.spectrum, opts);

    json report;
    report["input"] = in.echo;
    report["spectrum"] = spectrum_json(in.spectrum);
    report["dim_pa"] = in.spectrum.dim_pa();
    report["t_cut"] = r.t_cut;
    report["bracket"] = {r.bracket_lo, r.bracket_hi};
    report["method"] = to_string(r.method);
    report["degenerate"] = r.degenerate;
    report["certificate"] = {{"coeffs", r.certificate.coeffs},
                             {"basis", basis_json(r.certificate.basis)}};
    json evals = json::array();
    for (const auto& [T, v] : r.predicate_evals) evals.push_back({T, v});
    report["predicate_evals"] = evals;
    if (!o.no_timestamps) {
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        report["wall_seconds"] = dt.count();
    }
    emit(report, o.format, out);

    if (!o.plot_dir.empty()) {
        double horizon = o.horizon > 0 ? o.horizon : 12.0 / in.spectrum.min_abs_alpha();
        if (in.spectrum.dim_pa() == 2) {
            write_hull_plot(o.plot_dir, in.spectrum, r.t_cut, horizon, o.samples);
        } else if (in.matrix) {
            write_norm_plot(o.plot_dir, *in.matrix, r.t_cut, horizon, o.samples);
            std::cerr << "note: hull plot refused for dimension > 2; emitted norm plot\n";
        } else {
            Matrix m = matrix_from_spectrum(in.spectrum);
            write_norm_plot(o.plot_dir, m, r.t_cut, horizon, o.samples);
            std::cerr << "note: hull plot refused for dimension > 2; emitted norm plot\n";
        }
    }
    return kExitOk;
}

int run_extremal(const CommonOpts& o, double T, std::ostream& out) {
    Input in = load_input(o);
    if (!is_hurwitz(in.spectrum)) {
        std::cerr << "error: input is not Hurwitz\n";
        return kExitNotHurwitz;
    }
    Basis basis = build_basis(in.spectrum);
    ExtremalResult r = exchange_solve(basis, T, o.eps);
    json report;
    report["input"] = in.echo;
    report["T"] = T;
    report["value"] = r.value;
    report["lower"] = r.lower;
    report["upper"] = r.upper;
    report["iterations"] = r.iterations;
    report["active_points"] = r.active_points;
    report["certificate"] = {{"coeffs", r.certificate.coeffs},
                             {"basis", basis_json(r.certificate.basis)}};
    emit(report, o.format, out);
    return kExitOk;
}

int run_verify2d(const CommonOpts& o, std::ostream& out) {
    Input in = load_input(o);
    if (!is_hurwitz(in.spectrum)) {
        std::cerr << "error: input is not Hurwitz\n";
        return kExitNotHurwitz;
    }
    if (in.spectrum.dim_pa() != 2) {
        std::cerr << "error: verify2d needs a 2-dimensional spectrum\n";
        return kExitNumeric;
    }
    Geometric2dOptions g;
    g.horizon = o.horizon;
    g.samples = o.samples;
    double geo = cut_tail_geometric(in.spectrum, g);
    const auto& c = in.spectrum.components;
    double closed = c.size() == 2 ? cut_tail_2d_real(c[0].alpha, c[1].alpha)
                                  : cut_tail_2d_complex(c[0].alpha, c[0].beta);
    CutTailOptions opts;
    opts.eps = o.eps;
    opts.time_tol = o.time_tol;
    opts.value_tol = o.value_tol;
    CutTailResult ex = find_cut_tail(in.spectrum, opts);
    json report;
    report["input"] = in.echo;
    report["closed_form"] = closed;
    report["geometric"] = geo;
    report["exchange"] = ex.t_cut;
    report["max_spread"] = std::max({closed, geo, ex.t_cut}) - std::min({closed, geo, ex.t_cut});
    emit(report, o.format, out);
    return kExitOk;
}

int run_simulate(const CommonOpts& o, const std::vector<std::string>& mode_specs,
                 double dwell_min, int budget, double horizon, std::ostream& out) {
    SwitchingSystem sys;
    for (std::size_t i = 0; i < mode_specs.size(); ++i) {
        Mode m;
        m.label = "mode" + std::to_string(i + 1);
        m.spectrum = parse_spectrum(mode_specs[i]);
        if (!is_hurwitz(m.spectrum)) {
            std::cerr << "error: mode " << i + 1 << " is not Hurwitz\n";
            return kExitNotHurwitz;
        }
        m.matrix = matrix_from_spectrum(m.spectrum);
        CutTailOptions opts;
        opts.eps = o.eps;
        opts.time_tol = o.time_tol;
        opts.value_tol = o.value_tol;
        m.t_cut = find_cut_tail(m.spectrum, opts).t_cut;
        m.dwell_min = dwell_min;
        sys.modes.push_back(std::move(m));
    }
    SearchResult capped = worst_case_search(sys, horizon, true, budget, o.seed);
    SearchResult uncapped = worst_case_search(sys, horizon, false, budget, o.seed);
    json report;
    report["modes"] = json::array();
    for (const auto& m : sys.modes)
        report["modes"].push_back({{"label", m.label}, {"t_cut", m.t_cut},
                                   {"dwell_min", m.dwell_min}});
    report["horizon"] = horizon;
    report["seed"] = o.seed;
    report["capped_exponent"] = capped.growth_exponent;
    report["uncapped_exponent"] = uncapped.growth_exponent;
    report["capped_segments"] = capped.law.segments.size();
    report["uncapped_segments"] = uncapped.law.segments.size();
    emit(report, o.format, out);
    return kExitOk;
}

int run_sweep(const CommonOpts& o, const std::vector<std::string>& paths, std::ostream& out) {
    std::mutex out_mutex;
    std::vector<std::thread> workers;
    int worst = kExitOk;
    for (const auto& path : paths) {
        workers.emplace_back([&, path] {
            CommonOpts local = o;
            local.matrix_path = path;
            local.spectrum_str.clear();
            local.plot_dir.clear();
            std::ostringstream line;
            int code;
            try {
                code = run_cut_tail(local, line);
            } catch (const std::exception& e) {
                json err = {{"input", "matrix:" + path}, {"error", e.what()}};
                line.str("");
                line << err.dump() << '\n';
                code = kExitNumeric;
            }
            std::lock_guard<std::mutex> lock(out_mutex);
            out << line.str();
            worst = std::max(worst, code);
        });
    }
    for (auto& w : workers) w.join();
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cut-tail point computation for Hurwitz matrices"};
    app.require_subcommand(1);

    CommonOpts o_cut, o_ext, o_ver, o_sim, o_swp;
    double ext_T = 1.0;
    std::vector<std::string> sim_modes, sweep_paths;
    double sim_dwell = 0.1, sim_horizon = 30.0;
    int sim_budget = 32;

    auto* c_cut = app.add_subcommand("cut-tail", "compute the cut-tail point");
    add_common(c_cut, o_cut, true);
    auto* c_ext = app.add_subcommand("extremal", "solve the extremal problem at a fixed T");
    add_common(c_ext, o_ext, true);
    c_ext->add_option("--T", ext_T, "right endpoint")->required()->check(CLI::PositiveNumber);
    auto* c_ver = app.add_subcommand("verify2d", "cross-check closed form, hull oracle, exchange");
    add_common(c_ver, o_ver, true);
    auto* c_sim = app.add_subcommand("simulate", "switching worst-case search, capped vs uncapped");
    add_common(c_sim, o_sim, false);
    c_sim->add_option("--mode", sim_modes, "mode spectrum string (repeatable)")->required();
    c_sim->add_option("--dwell-min", sim_dwell, "minimal dwell time")->check(CLI::PositiveNumber);
    c_sim->add_option("--budget", sim_budget, "candidates per greedy step");
    c_sim->add_option("--sim-horizon", sim_horizon, "simulation horizon");
    auto* c_swp = app.add_subcommand("sweep", "batch cut-tail over matrix files");
    add_common(c_swp, o_swp, false);
    c_swp->add_option("files", sweep_paths, "matrix files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_cut->parsed()) return run_cut_tail(o_cut, std::cout);
        if (c_ext->parsed()) return run_extremal(o_ext, ext_T, std::cout);
        if (c_ver->parsed()) return run_verify2d(o_ver, std::cout);
        if (c_sim->parsed())
            return run_simulate(o_sim, sim_modes, sim_dwell, sim_budget, sim_horizon, std::cout);
        if (c_swp->parsed()) return run_sweep(o_swp, sweep_paths, std::cout);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
