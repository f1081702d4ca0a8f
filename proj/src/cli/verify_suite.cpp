#include <cmath>
#include <numbers>

#include "phifrac/cifs.hpp"
#include "phifrac/cli/runner.hpp"
#include "phifrac/fif.hpp"
#include "phifrac/hausdorff.hpp"
#include "phifrac/random.hpp"
#include "phifrac/sfs.hpp"
#include "phifrac/trajectory.hpp"

namespace phifrac::cli {

using nlohmann::ordered_json;

namespace {

class Suite {
public:
    void add(const std::string& name, bool pass, ordered_json observed, ordered_json expected) {
        ordered_json c;
        c["name"] = name;
        c["pass"] = pass;
        c["expected"] = std::move(expected);
        c["observed"] = std::move(observed);
        checks_.push_back(std::move(c));
        (pass ? passed_ : failed_)++;
    }

    ordered_json finish(std::uint64_t seed) {
        ordered_json out;
        out["suite"] = "phifrac-verify";
        out["suite_seed"] = seed;
        out["checks"] = std::move(checks_);
        out["summary"] = {{"total", passed_ + failed_}, {"passed", passed_}, {"failed", failed_},
                          {"all_pass", failed_ == 0}};
        return out;
    }

private:
    ordered_json checks_ = ordered_json::array();
    std::size_t passed_ = 0;
    std::size_t failed_ = 0;
};

ordered_json checks_json(const ComparisonReport& r) {
    ordered_json out;
    for (const auto& c : r.checks) out[c.name] = c.pass;
    return out;
}

ordered_json checks_expected(bool zero, bool monotone, bool below, bool decay) {
    return {{"zero_at_origin", zero}, {"non_decreasing", monotone}, {"below_identity", below},
            {"iterate_decay", decay}};
}

bool same_checks(const ordered_json& observed, const ordered_json& expected) {
    for (const auto& [k, v] : expected.items())
        if (!observed.contains(k) || observed[k] != v) return false;
    return true;
}

std::vector<Point> cantor_endpoints(int level) {
    std::vector<double> left{0.0};
    double len = 1.0;
    for (int l = 0; l < level; ++l) {
        len /= 3.0;
        std::vector<double> next;
        for (double x : left) {
            next.push_back(x);
            next.push_back(x + 2.0 * len);
        }
        left = std::move(next);
    }
    std::vector<Point> pts;
    for (double x : left) {
        pts.emplace_back(x);
        pts.emplace_back(x + len);
    }
    return pts;
}

FunctionSystem cantor_system() {
    const Box unit = Box::interval(0.0, 1.0);
    return FunctionSystem({ContractiveMap::affine1d(1.0 / 3.0, 0.0, unit),
                           ContractiveMap::affine1d(1.0 / 3.0, 2.0 / 3.0, unit)});
}

MapSequence alternating_sequence() {
    const Box dom = Box::interval(0.0, 10.0);
    return MapSequence::periodic({}, {ContractiveMap::affine1d(0.5, 0.0, dom),
                                      ContractiveMap::affine1d(0.5, 3.0, dom)});
}

void hausdorff_checks(Suite& s, std::uint64_t seed) {
    const double pitch = 0.01;
    const auto x = CompactSet::sample_interval(0.0, 20.0, pitch);
    const auto y = CompactSet::sample_interval(22.0, 31.0, pitch);
    const double h = hausdorff_distance(x, y);
    const double dxy = directed_distance(x, y);
    const double dyx = directed_distance(y, x);
    s.add("hausdorff.disjoint_intervals",
          std::abs(h - 22.0) <= 0.02 && std::abs(dxy - 22.0) <= 0.02 && std::abs(dyx - 11.0) <= 0.02,
          {{"h", h}, {"d_xy", dxy}, {"d_yx", dyx}}, {{"h", 22.0}, {"d_xy", 22.0}, {"d_yx", 11.0}, {"tol", 0.02}});

    const double h2 = hausdorff_distance(CompactSet::sample_interval(0.0, 1.0, pitch),
                                         CompactSet::sample_interval(-1.0, 0.0, pitch));
    s.add("hausdorff.adjacent_intervals", std::abs(h2 - 1.0) <= pitch, {{"h", h2}},
          {{"h", 1.0}, {"tol", pitch}});

    Rng rng(seed);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 1 + trial % 2;
        const auto cloud = [&](std::size_t n) {
            std::vector<Point> pts;
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(dim == 1 ? Point(rng.uniform(-5, 5))
                                       : Point(rng.uniform(-5, 5), rng.uniform(-5, 5)));
            return CompactSet(std::move(pts));
        };
        const auto a = cloud(200 + rng.index(300));
        const auto b = cloud(200 + rng.index(300));
        if (hausdorff_distance(a, b, HausdorffMethod::Grid) !=
            hausdorff_distance(a, b, HausdorffMethod::BruteForce))
            ++mismatches;
    }
    s.add("hausdorff.grid_index_matches_brute_force", mismatches == 0, {{"mismatches", mismatches}},
          {{"mismatches", 0}, {"trials", 20}});
}

void comparison_checks(Suite& s) {
    const auto add_phi = [&](const std::string& name, const ComparisonReport& r, ordered_json expected) {
        const auto observed = checks_json(r);
        s.add(name, same_checks(observed, expected), observed, expected);
    };
    add_phi("comparison.linear_half", verify_comparison(ComparisonFunction::linear(0.5)),
            checks_expected(true, true, true, true));
    add_phi("comparison.rakotch_rational", verify_comparison(ComparisonFunction::rakotch_rational(0.5, 1.0)),
            checks_expected(true, true, true, true));
    // Sublinear decay: t / (1 + 64 t) is never below 1e-6 t on the grid.
    add_phi("comparison.ratio_shift_one", verify_comparison(ComparisonFunction::ratio_shift(1.0)),
            checks_expected(true, true, true, false));
    add_phi("comparison.log_candidate_rejected",
            verify_comparison([](double t) { return std::log(t + 2.0); }, "ln(t+2)"),
            {{"zero_at_origin", false}, {"below_identity", false}});

    const auto half = ComparisonChain::constant(ComparisonFunction::linear(0.5));
    const auto ratio = ComparisonChain::constant(ComparisonFunction::ratio_shift(1.0));
    const auto d1 = chain_decays(half, 1.0, 1e-6, 64);
    s.add("chain.linear_half_decays", d1.decays && d1.witness == 20,
          {{"decays", d1.decays}, {"witness", d1.witness}}, {{"decays", true}, {"witness", 20}});
    // phi^999(1) = 1/1000 exactly, and the double nearest 1e-3 lies above 1/1000.
    const auto d2 = chain_decays(ratio, 1.0, 1e-3, 2000);
    s.add("chain.ratio_shift_decays", d2.decays && d2.witness == 999,
          {{"decays", d2.decays}, {"witness", d2.witness}}, {{"decays", true}, {"witness", 999}});
    const double c5 = compose_chain(ratio, 5, 1.0);
    s.add("chain.ratio_shift_compose", std::abs(c5 - 1.0 / 6.0) <= 1e-15, {{"value", c5}},
          {{"value", 1.0 / 6.0}});
    const auto s1 = chain_series_sum(half, 1.0, 64);
    s.add("chain.linear_half_series", s1.converged && std::abs(s1.sum - 1.0) <= 1e-12,
          {{"sum", s1.sum}, {"converged", s1.converged}}, {{"sum", 1.0}, {"converged", true}});
    const auto s2 = chain_series_sum(ratio, 1.0, 10000);
    s.add("chain.ratio_shift_series", !s2.converged, {{"sum", s2.sum}, {"converged", s2.converged}},
          {{"converged", false}});
}

void trajectory_checks(Suite& s, std::uint64_t seed) {
    const Box big = Box::interval(0.0, 100.0);
    const auto banach = MapSequence::constant(ContractiveMap::affine1d(0.5, 1.0, big));
    ordered_json obs = ordered_json::array();
    bool ok = true;
    for (double x0 : {0.0, 100.0}) {
        const auto r = forward_trajectory(banach, Point(x0), 1e-9, 60);
        std::size_t hit = 0;
        for (std::size_t k = 0; k < r.iterates.size(); ++k)
            if (std::abs(r.iterates[k][0] - 2.0) < 1e-9) {
                hit = k;
                break;
            }
        ok = ok && hit > 0;
        obs.push_back({{"x0", x0}, {"first_k_within_1e-9", hit}});
    }
    s.add("trajectory.banach_fixed_point", ok, obs, {{"fixed_point", 2.0}, {"within_iterations", 60}});

    const auto alt = alternating_sequence();
    obs = ordered_json::array();
    ok = true;
    for (double x0 : {0.0, 10.0}) {
        const auto r = backward_trajectory(alt, Point(x0));
        const double lim = r.limit ? (*r.limit)[0] : std::nan("");
        ok = ok && r.converged && std::abs(lim - 2.0) <= 1e-9;
        obs.push_back({{"x0", x0}, {"converged", r.converged}, {"limit", lim}});
    }
    s.add("trajectory.alternating_backward_limit", ok, obs, {{"limit", 2.0}, {"tol", 1e-9}});

    const auto fw = forward_trajectory(alt, Point(0.0), 1e-9, 200);
    ordered_json acc = ordered_json::array();
    for (const auto& p : fw.accumulation_points) acc.push_back(p[0]);
    const bool two = fw.accumulation_points.size() == 2 &&
                     std::abs(fw.accumulation_points[0][0] - 2.0) <= 1e-6 &&
                     std::abs(fw.accumulation_points[1][0] - 4.0) <= 1e-6;
    s.add("trajectory.alternating_forward_accumulation", !fw.converged && two,
          {{"converged", fw.converged}, {"accumulation_points", acc}},
          {{"converged", false}, {"accumulation_points", {2.0, 4.0}}, {"tol", 1e-6}});

    const auto recip = ContractiveMap::reciprocal(Box::interval(0.0, 1.0));
    const auto rr = forward_trajectory(MapSequence::constant(recip), Point(0.0), 1e-13);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double rl = rr.limit ? (*rr.limit)[0] : std::nan("");
    s.add("trajectory.reciprocal_fixed_point", rr.converged && std::abs(rl - golden) <= 1e-12,
          {{"converged", rr.converged}, {"limit", rl}}, {{"limit", golden}, {"tol", 1e-12}});
    const auto vc = verify_contraction(recip, 1000, seed);
    s.add("trajectory.reciprocal_contraction", vc.pass && vc.max_violation <= 1e-12,
          {{"samples", vc.samples}, {"max_violation", vc.max_violation}}, {{"max_violation_at_most", 1e-12}});

    const auto sim = asymptotically_similar(alt, Point(0.0), Point(10.0), Direction::Backward, 50);
    double worst = -1.0;
    for (std::size_t k = 0; k <= 50; ++k)
        worst = std::max(worst, sim.gaps[k] - 10.0 * std::ldexp(1.0, -static_cast<int>(k)));
    s.add("trajectory.backward_similarity_bound", sim.similar && worst <= 0.0,
          {{"similar", sim.similar}, {"max_gap_minus_bound", worst}},
          {{"similar", true}, {"bound", "10 * 2^-k for k <= 50"}});
}

void set_checks(Suite& s, std::uint64_t seed) {
    const Box unit = Box::interval(0.0, 1.0);
    const Box square(Point(0.0, 0.0), Point(1.0, 1.0));
    const auto cantor = cantor_system();
    const FunctionSystem recip({ContractiveMap::reciprocal(unit)});
    const FunctionSystem pair({ContractiveMap::affine2d({0.5, 0.1, -0.1, 0.4}, {0.0, 0.1}, square),
                               ContractiveMap::affine2d({0.3, 0.0, 0.0, 0.6}, {0.6, 0.3}, square)});
    for (const auto& [name, sys] : {std::pair{"set_lift.cantor", &cantor}, std::pair{"set_lift.reciprocal", &recip},
                                    std::pair{"set_lift.affine2d_pair", &pair}}) {
        const auto r = check_set_lift(*sys, 200, seed);
        s.add(name, r.pass, {{"trials", r.trials}, {"max_violation", r.max_violation}},
              {{"max_violation_at_most", 1e-10}});
    }
    const FunctionSystem wrong({cantor.maps()[0].with_phi(ComparisonFunction::linear(0.1)),
                                cantor.maps()[1].with_phi(ComparisonFunction::linear(0.1))});
    const auto w = check_set_lift(wrong, 200, seed);
    s.add("set_lift.cantor_wrong_phi_rejected", !w.pass,
          {{"pass", w.pass}, {"max_violation", w.max_violation}}, {{"pass", false}});

    const CompactSet exact(cantor_endpoints(12));
    SetTrajectoryOptions opt;
    opt.decimation_pitch = std::pow(3.0, -12);
    opt.keep_iterates = false;
    const double bound = std::pow(3.0, -10);
    const auto seq = SfsSequence::stationary(cantor);
    for (const bool backward : {true, false}) {
        const auto r = backward ? sfs_backward(seq, CompactSet({Point(0.0)}), opt)
                                : sfs_forward(seq, CompactSet({Point(0.0)}), opt);
        const double h = r.limit ? hausdorff_distance(*r.limit, exact) : std::nan("");
        s.add(backward ? "sfs.cantor_backward_attractor" : "sfs.cantor_forward_attractor",
              r.converged && h < bound,
              {{"converged", r.converged}, {"iterations", r.iterations_used}, {"h_to_level12", h}},
              {{"h_below", bound}});
    }

    const Box dom = Box::interval(0.0, 10.0);
    const auto alt = SfsSequence::periodic({}, {FunctionSystem({ContractiveMap::affine1d(0.5, 0.0, dom)}),
                                                FunctionSystem({ContractiveMap::affine1d(0.5, 3.0, dom)})});
    SetTrajectoryOptions aopt;
    aopt.kmax = 200;
    aopt.keep_iterates = false;
    const auto fw = sfs_forward(alt, CompactSet({Point(0.0)}), aopt);
    ordered_json acc = ordered_json::array();
    bool ok = !fw.converged && fw.accumulation_sets.size() == 2;
    for (std::size_t i = 0; i < fw.accumulation_sets.size(); ++i) {
        const auto& set = fw.accumulation_sets[i];
        acc.push_back(set[0][0]);
        ok = ok && set.size() == 1 && std::abs(set[0][0] - (i == 0 ? 2.0 : 4.0)) <= 1e-6;
    }
    s.add("sfs.alternating_forward_accumulation", ok, {{"converged", fw.converged}, {"accumulation_sets", acc}},
          {{"converged", false}, {"accumulation_sets", {2.0, 4.0}}});

    const CifsSystem geo(
        [unit](std::size_t i) {
            return ContractiveMap::affine1d(std::ldexp(1.0, -static_cast<int>(i) - 1), 0.0, unit);
        },
        ComparisonFunction::linear(0.25), unit);
    const auto c = cifs_operator(geo, CompactSet({Point(1.0)}), 1e-3);
    s.add("cifs.geometric_truncation", c.certificate_gap < 1e-3 && c.maps_used == 9,
          {{"maps_used", c.maps_used}, {"certificate_gap", c.certificate_gap}, {"points", c.set.size()}},
          {{"maps_used", 9}, {"certificate_gap_below", 1e-3}});
    const auto cl = check_set_lift(geo, 20, 200, seed);
    s.add("set_lift.cifs_geometric", cl.pass, {{"trials", cl.trials}, {"max_violation", cl.max_violation}},
          {{"max_violation_at_most", 1e-10}});
}

void fif_checks(Suite& s, std::uint64_t seed) {
    const auto data = std::make_shared<const InterpolationData>(
        InterpolationData::make({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}));
    const auto s03 = FifOperatorStage::pinned(data, {VerticalMap::scale(0.3)});
    const auto s05 = FifOperatorStage::pinned(data, {VerticalMap::scale(0.5)});
    const auto g0 = GridFunction::piecewise_linear(data, 4096);

    FifOptions opt;
    opt.tol = 1e-10;
    opt.kmax = 200;
    const auto r = fif_backward(StageSchedule::periodic({}, {s03, s05}), g0, opt);
    s.add("fif.alternating_backward", r.converged && r.limit.pinned() && r.within_range,
          {{"converged", r.converged}, {"iterations", r.iterations_used}, {"pinned", r.limit.pinned()},
           {"within_range", r.within_range}},
          {{"converged", true}, {"pinned", true}, {"within_range", true}});
    for (const auto& [name, st] : {std::pair{"fif.matkowski_scale_0.3", &s03}, std::pair{"fif.matkowski_scale_0.5", &s05}}) {
        const auto m = verify_matkowski(*st, 100, seed);
        s.add(name, m.pass, {{"trials", m.trials}, {"max_violation", m.max_violation}, {"slack", m.slack}},
              {{"max_violation_at_most", "1e-10 + slack"}});
    }

    // Stationary schedule against plain Picard iteration g <- T g.
    const auto st = fif_backward(StageSchedule::constant(s03), g0, opt);
    GridFunction picard = g0;
    for (int k = 0; k < 60; ++k) picard = apply_T(s03, picard);
    const double dev = sup_distance(st.limit, picard);
    s.add("fif.stationary_matches_picard", st.converged && dev <= 1e-8,
          {{"converged", st.converged}, {"sup_deviation", dev}}, {{"sup_deviation_at_most", 1e-8}});
}

} // namespace

ordered_json run_verify_suite(std::uint64_t seed) {
    Suite s;
    hausdorff_checks(s, seed);
    comparison_checks(s);
    trajectory_checks(s, seed);
    set_checks(s, seed);
    fif_checks(s, seed);
    return s.finish(seed);
}

} // namespace phifrac::cli
