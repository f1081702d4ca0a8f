#include "phifrac/cli/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phifrac/cli/config.hpp"
#include "phifrac/cli/pgm.hpp"
#include "phifrac/error.hpp"
#include "phifrac/hausdorff.hpp"
#include "phifrac/point_csv.hpp"

namespace phifrac::cli {

using nlohmann::ordered_json;
using config::Json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    fail(ErrorKind::InvalidInput, "config field '" + path + "': " + what);
}

std::vector<double> coords(const Point& p) { return {p.coords().begin(), p.coords().end()}; }

ordered_json points_json(const std::vector<Point>& pts) {
    ordered_json out = ordered_json::array();
    for (const auto& p : pts) out.push_back(coords(p));
    return out;
}

Point parse_x0(const Json& j, const std::string& path) {
    if (j.is_number()) return Point(config::number(j, path));
    if (!j.is_array()) bad(path, "expected a number or an array");
    std::vector<double> c;
    for (std::size_t i = 0; i < j.size(); ++i)
        c.push_back(config::number(j[i], path + "[" + std::to_string(i) + "]"));
    try {
        return Point(std::span<const double>(c));
    } catch (const Error& e) {
        bad(path, e.what());
    }
}

bool backward_direction(const Json& doc) {
    if (!doc.contains("direction")) return false;
    const std::string d = config::text(doc["direction"], "direction");
    if (d == "forward") return false;
    if (d == "backward") return true;
    bad("direction", "expected 'forward' or 'backward'");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path.string());
    out << text;
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path.string());
}

ordered_json warnings_json(const std::vector<std::string>& w) {
    ordered_json out = ordered_json::array();
    for (const auto& s : w) out.push_back(s);
    return out;
}

struct Raster {
    std::size_t width = 512;
    std::size_t height = 512;
    Box bounds;
};

Raster parse_raster(const Json& doc, const Box& domain) {
    Raster r{512, 512, domain};
    if (!doc.contains("raster")) return r;
    const auto& j = doc["raster"];
    const auto dimension = [&](const char* key, std::size_t& v) {
        if (!j.contains(key)) return;
        const std::string p = std::string("raster.") + key;
        if (!j[key].is_number_integer() || j[key].get<long long>() < 1) bad(p, "expected an integer >= 1");
        v = j[key].get<std::size_t>();
    };
    dimension("width", r.width);
    dimension("height", r.height);
    if (j.contains("bounds")) r.bounds = config::parse_box(j["bounds"], "raster.bounds");
    return r;
}

/// attractor.csv + attractor.pgm for a set-valued run.
void write_set_artifacts(const RunConfig& cfg, const CompactSet& set, const Box& domain,
                         const std::string& comment, RunOutcome& outcome) {
    const Raster raster = parse_raster(cfg.document, domain);
    const fs::path csv = cfg.out_dir / "attractor.csv";
    const fs::path pgm = cfg.out_dir / "attractor.pgm";
    write_point_csv(csv, set, comment);
    write_pgm(pgm, render_pgm(set, raster.width, raster.height, raster.bounds));
    outcome.artifacts.push_back(csv);
    outcome.artifacts.push_back(pgm);
}

RunOutcome run_trajectory(const RunConfig& cfg) {
    const auto& doc = cfg.document;
    const Box domain = config::parse_box(config::field(doc, "domain", ""), "domain");
    const MapSequence seq = config::parse_map_sequence(config::field(doc, "sequence", ""), domain, "sequence");
    const Point x0 = parse_x0(config::field(doc, "x0", ""), "x0");
    if (x0.dim() != domain.dim() || !domain.contains(x0)) bad("x0", x0.str() + " lies outside the domain");
    const bool backward = backward_direction(doc);
    const TrajectoryResult r = backward ? backward_trajectory(seq, x0, cfg.tol, cfg.kmax)
                                        : forward_trajectory(seq, x0, cfg.tol, cfg.kmax);

    RunOutcome outcome;
    std::ostringstream csv;
    csv << "# k," << (x0.dim() == 1 ? "x" : "x,y") << ",gap\n";
    for (std::size_t k = 0; k < r.iterates.size(); ++k) {
        csv << k;
        for (double c : r.iterates[k].coords()) csv << ',' << format_real(c);
        csv << ',' << format_real(r.gaps[k]) << '\n';
    }
    const fs::path path = cfg.out_dir / "trajectory.csv";
    write_text(path, csv.str());
    outcome.artifacts.push_back(path);

    auto& rep = outcome.report;
    rep["mode"] = "trajectory";
    rep["direction"] = backward ? "backward" : "forward";
    rep["converged"] = r.converged;
    rep["iterations_used"] = r.iterations_used;
    rep["limit"] = r.limit ? ordered_json(coords(*r.limit)) : ordered_json(nullptr);
    rep["last_gap"] = r.gaps.back();
    rep["accumulation_points"] = points_json(r.accumulation_points);
    rep["warnings"] = warnings_json(r.warnings);
    if (!r.converged) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = "trajectory did not converge within kmax = " + std::to_string(cfg.kmax) +
                          "; " + std::to_string(r.accumulation_points.size()) +
                          " accumulation point(s)";
    }
    return outcome;
}

CompactSet initial_set(const RunConfig& cfg, const Box& domain) {
    const auto& doc = cfg.document;
    if (doc.contains("initial"))
        return config::parse_initial_set(doc["initial"], domain, cfg.base_dir, "initial");
    if (cfg.grid_pitch) return CompactSet::sample_box(domain, *cfg.grid_pitch);
    return CompactSet({domain.lo()});
}

RunOutcome run_sfs(const RunConfig& cfg) {
    const auto& doc = cfg.document;
    const Box domain = config::parse_box(config::field(doc, "domain", ""), "domain");
    const SfsSequence seq = [&] {
        if (doc.contains("system"))
            return SfsSequence::stationary(config::parse_system(doc["system"], domain, "system"));
        return config::parse_sfs(config::field(doc, "sequence", ""), domain, "sequence");
    }();
    const CompactSet a0 = initial_set(cfg, domain);
    const bool backward = backward_direction(doc);
    SetTrajectoryOptions opt;
    opt.tol = cfg.tol;
    opt.kmax = cfg.kmax;
    opt.decimation_pitch = cfg.decimation_pitch.value_or(0.0);
    opt.keep_iterates = false;
    const SetTrajectoryResult r = backward ? sfs_backward(seq, a0, opt) : sfs_forward(seq, a0, opt);

    RunOutcome outcome;
    const CompactSet& last = r.limit ? *r.limit : *r.last;
    write_set_artifacts(cfg, last, domain,
                        r.converged ? "sfs attractor" : "sfs last iterate (not converged)", outcome);
    auto& rep = outcome.report;
    rep["mode"] = "sfs";
    rep["direction"] = backward ? "backward" : "forward";
    rep["converged"] = r.converged;
    rep["iterations_used"] = r.iterations_used;
    rep["points"] = last.size();
    rep["last_gap"] = r.gaps.back();
    rep["decimation_pitch"] = opt.decimation_pitch;
    ordered_json acc = ordered_json::array();
    for (const auto& s : r.accumulation_sets) acc.push_back(points_json(s.points()));
    rep["accumulation_sets"] = acc;
    rep["warnings"] = warnings_json(r.warnings);
    if (!r.converged) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = "set trajectory did not converge within kmax = " + std::to_string(cfg.kmax);
    }
    return outcome;
}

RunOutcome run_cifs(const RunConfig& cfg) {
    const auto& doc = cfg.document;
    const Box domain = config::parse_box(config::field(doc, "domain", ""), "domain");
    const CifsSystem system = config::parse_cifs(config::field(doc, "generator", ""), domain, "generator");
    const double eps = config::number(config::field(doc, "eps", ""), "eps");
    if (!(eps > 0.0)) bad("eps", "must be > 0");
    const double pitch = cfg.decimation_pitch.value_or(0.0);

    // Forward iteration of the truncated operator, same stopping rule as the
    // set trajectories.
    CompactSet a = initial_set(cfg, domain);
    std::vector<double> gaps{0.0};
    std::size_t run = 0;
    std::size_t maps_used = 0;
    double certificate = 0.0;
    bool converged = false;
    for (std::size_t k = 1; k <= cfg.kmax; ++k) {
        CifsResult step = cifs_operator(system, a, eps);
        maps_used = step.maps_used;
        certificate = step.certificate_gap;
        CompactSet next = pitch > 0.0 ? decimate(step.set, pitch, &domain) : std::move(step.set);
        if (next.size() > kMaxCloudPoints)
            fail(ErrorKind::Resource, "cifs iterate exceeds " + std::to_string(kMaxCloudPoints) + " points");
        gaps.push_back(hausdorff_distance(next, a));
        a = std::move(next);
        run = gaps.back() < cfg.tol ? run + 1 : 0;
        if (run >= kCauchyRun) {
            converged = true;
            break;
        }
    }

    RunOutcome outcome;
    write_set_artifacts(cfg, a, domain, converged ? "cifs attractor" : "cifs last iterate (not converged)",
                        outcome);
    auto& rep = outcome.report;
    rep["mode"] = "cifs";
    rep["converged"] = converged;
    rep["iterations_used"] = gaps.size() - 1;
    rep["points"] = a.size();
    rep["last_gap"] = gaps.back();
    rep["eps"] = eps;
    rep["maps_used"] = maps_used;
    rep["certificate_gap"] = certificate;
    if (!converged) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = "cifs iteration did not converge within kmax = " + std::to_string(cfg.kmax);
    }
    return outcome;
}

RunOutcome run_fif(const RunConfig& cfg) {
    const auto& doc = cfg.document;
    const auto data = config::parse_data(doc, cfg.base_dir);
    const StageSchedule schedule = config::parse_schedule(config::field(doc, "schedule", ""), data, "schedule");
    std::size_t intervals = 0;
    if (doc.contains("grid_intervals")) {
        const auto& g = doc["grid_intervals"];
        if (!g.is_number_integer() || g.get<long long>() < 1) bad("grid_intervals", "expected an integer >= 1");
        intervals = g.get<std::size_t>();
    } else {
        try {
            intervals = GridFunction::default_intervals(*data);
        } catch (const Error& e) {
            bad("data", e.what());
        }
    }
    const GridFunction g0 = [&] {
        try {
            return GridFunction::piecewise_linear(data, intervals);
        } catch (const Error& e) {
            bad("grid_intervals", e.what());
        }
    }();
    FifOptions opt;
    opt.tol = cfg.tol;
    opt.kmax = cfg.kmax;
    const FifResult r = fif_backward(schedule, g0, opt);

    RunOutcome outcome;
    std::ostringstream csv;
    csv << "# x,f(x)" << (r.converged ? "" : " (not converged)") << '\n';
    for (std::size_t j = 0; j <= r.limit.intervals(); ++j)
        csv << format_real(r.limit.x_at(j)) << ',' << format_real(r.limit.values()[j]) << '\n';
    const fs::path path = cfg.out_dir / "fif.csv";
    write_text(path, csv.str());
    outcome.artifacts.push_back(path);

    auto& rep = outcome.report;
    rep["mode"] = "fif";
    rep["converged"] = r.converged;
    rep["iterations_used"] = r.iterations_used;
    rep["last_gap"] = r.last_gap;
    rep["grid_intervals"] = intervals;
    rep["pinned"] = r.limit.pinned();
    rep["within_range"] = r.within_range;
    rep["range"] = {data->a, data->b};
    rep["warnings"] = warnings_json(r.warnings);
    if (!r.converged) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = "fif backward trajectory did not converge within kmax = " + std::to_string(cfg.kmax);
    }
    return outcome;
}

RunOutcome run_verify(const RunConfig& cfg) {
    RunOutcome outcome;
    outcome.report = run_verify_suite(cfg.seed);
    if (!outcome.report["summary"]["all_pass"].get<bool>()) {
        outcome.exit_code = kExitVerificationFailed;
        outcome.message = "verification suite: " +
                          std::to_string(outcome.report["summary"]["failed"].get<std::size_t>()) +
                          " check(s) failed";
    }
    return outcome;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Divergence: return kExitNotConverged;
    case ErrorKind::Resource: return kExitResource;
    default: return kExitInvalid;
    }
}

} // namespace

RunConfig parse_run_config(const Json& doc, const fs::path& base_dir, const Overrides& overrides) {
    if (!doc.is_object()) bad("<root>", "expected an object");
    if (!doc.contains("schema")) bad("schema", "missing");
    if (!doc["schema"].is_number_integer() || doc["schema"].get<long long>() != 1)
        bad("schema", "unsupported schema version (expected 1)");
    RunConfig cfg;
    cfg.mode = config::text(config::field(doc, "mode", ""), "mode");
    if (cfg.mode == "trajectory") {
        cfg.tol = 1e-9;
        cfg.kmax = 10000;
    } else if (cfg.mode == "sfs" || cfg.mode == "cifs") {
        cfg.tol = 1e-9;
        cfg.kmax = 200;
    } else if (cfg.mode == "fif") {
        cfg.tol = 1e-10;
        cfg.kmax = 200;
    } else if (cfg.mode != "verify") {
        bad("mode", "expected one of trajectory, sfs, cifs, fif, verify");
    }
    cfg.document = doc;
    cfg.base_dir = base_dir;

    const auto positive = [&](const char* key) -> std::optional<double> {
        if (!doc.contains(key)) return std::nullopt;
        const double v = config::number(doc[key], key);
        if (!(v > 0.0)) bad(key, "must be > 0");
        return v;
    };
    if (auto v = positive("tol")) cfg.tol = *v;
    cfg.grid_pitch = positive("grid_pitch");
    cfg.decimation_pitch = positive("decimation_pitch");
    if (doc.contains("kmax")) {
        if (!doc["kmax"].is_number_integer() || doc["kmax"].get<long long>() < 1)
            bad("kmax", "expected an integer >= 1");
        cfg.kmax = doc["kmax"].get<std::size_t>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("out")) cfg.out_dir = base_dir / config::text(doc["out"], "out");

    if (overrides.tol) {
        if (!(*overrides.tol > 0.0) || !std::isfinite(*overrides.tol)) bad("--tol", "must be > 0");
        cfg.tol = *overrides.tol;
    }
    if (overrides.kmax) {
        if (*overrides.kmax < 1) bad("--kmax", "must be >= 1");
        cfg.kmax = *overrides.kmax;
    }
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
    cfg.quiet = overrides.quiet;
    return cfg;
}

RunConfig load_run_config(const fs::path& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) bad("--config", "cannot open " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        bad("<root>", std::string("not valid JSON: ") + e.what());
    }
    return parse_run_config(doc, path.parent_path(), overrides);
}

RunOutcome run(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    RunOutcome outcome;
    if (cfg.mode == "trajectory") outcome = run_trajectory(cfg);
    else if (cfg.mode == "sfs") outcome = run_sfs(cfg);
    else if (cfg.mode == "cifs") outcome = run_cifs(cfg);
    else if (cfg.mode == "fif") outcome = run_fif(cfg);
    else outcome = run_verify(cfg);

    ordered_json report;
    report["schema"] = 1;
    report["exit_code"] = outcome.exit_code;
    report["tol"] = cfg.tol;
    report["kmax"] = cfg.kmax;
    report["seed"] = cfg.seed;
    for (auto& [k, v] : outcome.report.items()) report[k] = v;
    outcome.report = std::move(report);
    const fs::path path = cfg.out_dir / "report.json";
    write_text(path, outcome.report.dump(2) + "\n");
    outcome.artifacts.push_back(path);
    return outcome;
}

int run_main(const std::optional<fs::path>& config_path, const Overrides& overrides,
             std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg =
            config_path ? load_run_config(*config_path, overrides)
                        : parse_run_config(Json{{"schema", 1}, {"mode", "verify"}}, fs::current_path(),
                                           overrides);
        const RunOutcome outcome = run(cfg);
        if (!outcome.message.empty()) err << "phifrac: " << outcome.message << '\n';
        if (!cfg.quiet) {
            out << cfg.mode << ": exit " << outcome.exit_code << ", wrote";
            for (const auto& a : outcome.artifacts) out << ' ' << a.string();
            out << '\n';
        }
        return outcome.exit_code;
    } catch (const Error& e) {
        err << "phifrac: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error& e) {
        err << "phifrac: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace phifrac::cli
