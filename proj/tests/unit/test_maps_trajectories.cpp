#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phifrac/error.hpp"
#include "phifrac/random.hpp"
#include "phifrac/trajectory.hpp"

using namespace phifrac;

namespace {

template <class Fn>
ErrorKind kind_of(Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no phifrac::Error thrown";
    return ErrorKind::InvalidInput;
}

const Box kTen = Box::interval(0.0, 10.0);

MapSequence alternating() {
    return MapSequence::periodic({}, {ContractiveMap::affine1d(0.5, 0.0, kTen), ContractiveMap::affine1d(0.5, 3.0, kTen)});
}

} // namespace

TEST(ContractiveMap, ApplyExamples) {
    const auto f = ContractiveMap::affine1d(0.5, 1.0, kTen);
    EXPECT_EQ(f.apply(Point(4.0)), Point(3.0));
    const auto r = ContractiveMap::reciprocal(Box::interval(0.0, 1.0));
    EXPECT_EQ(r.apply(Point(1.0)), Point(0.5));
    const auto m = ContractiveMap::mobius(Box::interval(0.0, 5.0));
    EXPECT_EQ(m.apply(Point(3.0)), Point(0.75));
    const auto a = ContractiveMap::affine2d({0.5, 0.0, 0.0, 0.25}, {0.1, 0.2}, Box(Point(0.0, 0.0), Point(1.0, 1.0)));
    EXPECT_EQ(a.apply(Point(1.0, 1.0)), Point(0.6, 0.45));
    EXPECT_EQ(a.phi()(1.0), 0.5);
}

TEST(ContractiveMap, ValidationErrors) {
    EXPECT_EQ(kind_of([] { ContractiveMap::affine1d(1.0, 0.0, kTen); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { ContractiveMap::affine2d({0.9, 0.9, 0.0, 0.1}, {0, 0}, Box(Point(0.0, 0.0), Point(1.0, 1.0))); }),
              ErrorKind::InvalidParameter);
    // x/2 + 9 leaves [0, 10]
    EXPECT_EQ(kind_of([] { ContractiveMap::affine1d(0.5, 9.0, kTen); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { ContractiveMap::reciprocal(Box::interval(-1.0, 1.0)); }), ErrorKind::InvalidParameter);
    const auto f = ContractiveMap::affine1d(0.5, 1.0, kTen);
    EXPECT_EQ(kind_of([&] { f.apply(Point(11.0)); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([&] { f.apply(Point(1.0, 1.0)); }), ErrorKind::Domain);
}

TEST(OperatorNorm, MatchesSingularValue) {
    EXPECT_NEAR(operator_norm({3.0, 0.0, 0.0, -4.0}), 4.0, 1e-15);
    EXPECT_NEAR(operator_norm({1.0, 1.0, 0.0, 0.0}), std::sqrt(2.0), 1e-15);
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const std::array<double, 4> m{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double n = operator_norm(m);
        for (int j = 0; j < 20; ++j) {
            const double th = rng.uniform(0, 2 * std::numbers::pi);
            const double x = std::cos(th), y = std::sin(th);
            EXPECT_LE(std::hypot(m[0] * x + m[1] * y, m[2] * x + m[3] * y), n + 1e-12);
        }
    }
}

TEST(ForwardTrajectory, BanachFixedPoint) {
    const auto seq = MapSequence::constant(ContractiveMap::affine1d(0.5, 1.0, Box::interval(0.0, 100.0)));
    for (double x0 : {0.0, 100.0}) {
        const auto r = forward_trajectory(seq, Point(x0), 1e-9, 60);
        bool hit = false;
        for (const auto& p : r.iterates) hit = hit || std::abs(p[0] - 2.0) < 1e-9;
        EXPECT_TRUE(hit) << x0;
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR((*r.limit)[0], 2.0, 1e-9);
        // iterates follow 2 + (x0 - 2) 2^-k exactly
        for (std::size_t k = 0; k < 20; ++k)
            EXPECT_EQ(r.iterates[k][0], 2.0 + (x0 - 2.0) * std::ldexp(1.0, -static_cast<int>(k)));
    }
}

TEST(ForwardTrajectory, AlternatingHasTwoAccumulationPoints) {
    const auto r = forward_trajectory(alternating(), Point(0.0), 1e-9, 200);
    EXPECT_FALSE(r.converged);
    EXPECT_FALSE(r.limit.has_value());
    ASSERT_EQ(r.accumulation_points.size(), 2u);
    EXPECT_NEAR(r.accumulation_points[0][0], 2.0, 1e-6);
    EXPECT_NEAR(r.accumulation_points[1][0], 4.0, 1e-6);
    EXPECT_EQ(r.iterations_used, 200u);
}

TEST(BackwardTrajectory, AlternatingConvergesToTwo) {
    for (double x0 : {0.0, 10.0}) {
        const auto r = backward_trajectory(alternating(), Point(x0));
        ASSERT_TRUE(r.converged);
        EXPECT_NEAR((*r.limit)[0], 2.0, 1e-9);
        EXPECT_TRUE(r.warnings.empty());
    }
}

TEST(BackwardTrajectory, ShrinkingShiftsMatchNestedOracle) {
    // T_i(x) = x/2 + 2^-i on [0, 2]
    const Box dom = Box::interval(0.0, 2.0);
    const auto seq = MapSequence(IndexedFamily<ContractiveMap>::generated([dom](std::size_t i) {
        return ContractiveMap::affine1d(0.5, std::ldexp(1.0, -static_cast<int>(i)), dom);
    }));
    const auto r = backward_trajectory(seq, Point(1.0), 1e-12, 200);
    const auto r0 = backward_trajectory(seq, Point(0.0), 1e-12, 200);
    ASSERT_TRUE(r0.converged);
    EXPECT_NEAR((*r0.limit)[0], 2.0 / 3.0, 1e-12);
    ASSERT_TRUE(r.converged);
    // T_1(T_2(...T_60(1))) evaluated innermost first
    double x = 1.0;
    for (int i = 60; i >= 1; --i) x = 0.5 * x + std::ldexp(1.0, -i);
    EXPECT_NEAR((*r.limit)[0], x, 1e-12);
    // closed form: sum_i 2^-(i-1) 2^-i = 2/3
    EXPECT_NEAR((*r.limit)[0], 2.0 / 3.0, 1e-12);
    EXPECT_EQ(backward_point(seq, Point(1.0), 60), Point(x));
}

TEST(Trajectory, StationaryForwardAndBackwardAgreeBitwise) {
    const auto seq = MapSequence::constant(ContractiveMap::mobius(Box::interval(0.0, 4.0)));
    const auto f = forward_trajectory(seq, Point(3.0), 1e-9, 300);
    const auto b = backward_trajectory(seq, Point(3.0), 1e-9, 300);
    ASSERT_EQ(f.iterates.size(), b.iterates.size());
    for (std::size_t k = 0; k < f.iterates.size(); ++k) EXPECT_EQ(f.iterates[k], b.iterates[k]);
}

TEST(Trajectory, ReciprocalGoldenRatio) {
    const auto recip = ContractiveMap::reciprocal(Box::interval(0.0, 1.0));
    const auto r = forward_trajectory(MapSequence::constant(recip), Point(0.0), 1e-13);
    const auto r1 = forward_trajectory(MapSequence::constant(recip), Point(1.0), 1e-13);
    EXPECT_NEAR((*r1.limit)[0], (std::sqrt(5.0) - 1.0) / 2.0, 1e-12);
    EXPECT_EQ(recip.apply(Point(0.0)), Point(1.0));
    EXPECT_EQ(ContractiveMap::mobius(Box::interval(0.0, 1.0)).apply(Point(0.0)), Point(0.0));
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR((*r.limit)[0], (std::sqrt(5.0) - 1.0) / 2.0, 1e-12);
    const auto v = verify_contraction(recip, 1000, 42);
    EXPECT_TRUE(v.pass);
    EXPECT_LE(v.max_violation, 1e-12);
}

TEST(Trajectory, RatioShiftChainTriggersWarning) {
    const auto seq = MapSequence::constant(ContractiveMap::mobius(Box::interval(0.0, 4.0)));
    const auto b = backward_trajectory(seq, Point(3.0), 1e-9, 50);
    EXPECT_FALSE(b.warnings.empty());
}

TEST(Trajectory, ParameterErrors) {
    const auto seq = alternating();
    EXPECT_EQ(kind_of([&] { forward_trajectory(seq, Point(0.0), 0.0, 10); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { forward_trajectory(seq, Point(0.0), 1e-9, 0); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { forward_trajectory(seq, Point(12.0)); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([&] {
                  MapSequence::periodic({ContractiveMap::affine1d(0.5, 0.0, kTen)},
                                        {ContractiveMap::affine1d(0.5, 0.0, Box::interval(0.0, 1.0))});
              }),
              ErrorKind::InvalidInput);
}

TEST(VerifyContraction, CatchesWrongPhi) {
    const auto f = ContractiveMap::affine1d(0.5, 0.0, kTen, ComparisonFunction::linear(0.4));
    const auto v = verify_contraction(f, 200, 1);
    EXPECT_FALSE(v.pass);
    EXPECT_GT(v.max_violation, 0.0);
    const auto mob = ContractiveMap::mobius(Box::interval(0.0, 10.0));
    EXPECT_TRUE(verify_contraction(mob, 1000, 2).pass);
}

TEST(AsymptoticSimilarity, BackwardBoundedByLinearChain) {
    const auto sim = asymptotically_similar(alternating(), Point(0.0), Point(10.0), Direction::Backward, 50);
    EXPECT_TRUE(sim.similar);
    for (std::size_t k = 0; k <= 50; ++k) {
        EXPECT_LE(sim.gaps[k], 10.0 * std::ldexp(1.0, -static_cast<int>(k)));
        EXPECT_LE(sim.gaps[k], sim.bounds[k] + 1e-12);
    }
    const auto fw = asymptotically_similar(alternating(), Point(0.0), Point(10.0), Direction::Forward, 50);
    EXPECT_TRUE(fw.similar);
}

TEST(AsymptoticSimilarity, NonVanishingProductIsNotSimilar) {
    // rates 1 - 1/(i+1)^2 with the same shift: gaps shrink to d0 / 2
    const Box dom = Box::interval(0.0, 10.0);
    const auto seq = MapSequence(IndexedFamily<ContractiveMap>::generated([dom](std::size_t i) {
        const double j = static_cast<double>(i + 1);
        return ContractiveMap::affine1d(1.0 - 1.0 / (j * j), 0.0, dom);
    }));
    const auto sim = asymptotically_similar(seq, Point(0.0), Point(10.0), Direction::Backward, 400);
    EXPECT_FALSE(sim.similar);
    EXPECT_NEAR(sim.gaps.back(), 5.0, 0.02);
}

TEST(TrajectoryProperty, ContractionAlongRandomAffineSequences) {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ContractiveMap> maps;
        for (int i = 0; i < 3; ++i) {
            const double a = rng.uniform(-0.9, 0.9);
            // x -> a x + b maps [0, 10] into itself iff b lies in [lo, hi]
            const double lo = -std::min(0.0, 10.0 * a), hi = 10.0 - std::max(0.0, 10.0 * a);
            maps.push_back(ContractiveMap::affine1d(a, rng.uniform(lo, hi), kTen));
        }
        const auto seq = MapSequence::periodic({}, maps);
        const Point x(rng.uniform(0, 10)), y(rng.uniform(0, 10));
        const auto sim = asymptotically_similar(seq, x, y, Direction::Backward, 60);
        for (std::size_t k = 0; k < sim.gaps.size(); ++k) EXPECT_LE(sim.gaps[k], sim.bounds[k] + 1e-12);
    }
}

TEST(ClusterPoints, GreedySeeds) {
    const std::vector<Point> pts{Point(0.0), Point(5.0), Point(1e-9), Point(5.0 + 1e-9)};
    const auto c = cluster_points(pts, 1e-6);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_NEAR(c[0][0], 5e-10, 1e-15);
    EXPECT_NEAR(c[1][0], 5.0, 1e-8);
}
