#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "phifrac/error.hpp"
#include "phifrac/hausdorff.hpp"
#include "phifrac/point_csv.hpp"
#include "phifrac/random.hpp"

using namespace phifrac;

namespace {

CompactSet random_cloud(Rng& rng, std::size_t dim, std::size_t n, double lo = -5.0, double hi = 5.0) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(dim == 1 ? Point(rng.uniform(lo, hi)) : Point(rng.uniform(lo, hi), rng.uniform(lo, hi)));
    return CompactSet(std::move(pts));
}

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

} // namespace

TEST(MetricDistance, ExamplesAndErrors) {
    EXPECT_EQ(metric_distance(Point(3.0), Point(-1.0)), 4.0);
    EXPECT_EQ(metric_distance(Point(0.0, 0.0), Point(3.0, 4.0)), 5.0);
    EXPECT_EQ(metric_distance(Point(1.5, 2.0), Point(1.5, 2.0)), 0.0);
    EXPECT_EQ(kind_of([] { metric_distance(Point(1.0), Point(1.0, 2.0)); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { Point(std::nan("")); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { Point(1.0, std::numeric_limits<double>::infinity()); }), ErrorKind::InvalidInput);
}

TEST(MetricDistance, SymmetricAndTriangle) {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const Point p(rng.uniform(-9, 9), rng.uniform(-9, 9));
        const Point q(rng.uniform(-9, 9), rng.uniform(-9, 9));
        const Point r(rng.uniform(-9, 9), rng.uniform(-9, 9));
        EXPECT_EQ(metric_distance(p, q), metric_distance(q, p));
        EXPECT_LE(metric_distance(p, r), metric_distance(p, q) + metric_distance(q, r) + 1e-12);
    }
}

TEST(CompactSet, CanonicalizesAndRejectsEmpty) {
    const CompactSet s({Point(3.0), Point(1.0), Point(3.0), Point(1.0 + 1e-14)});
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0][0], 1.0);
    EXPECT_EQ(s[1][0], 3.0);
    EXPECT_EQ(kind_of([] { CompactSet(std::vector<Point>{}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { CompactSet({Point(1.0), Point(1.0, 2.0)}); }), ErrorKind::InvalidInput);
}

TEST(CompactSet, SampleIntervalHitsEndpoints) {
    const auto s = CompactSet::sample_interval(0.0, 20.0, 0.01);
    EXPECT_EQ(s.size(), 2001u);
    EXPECT_EQ(s.points().front()[0], 0.0);
    EXPECT_EQ(s.points().back()[0], 20.0);
    const auto b = CompactSet::sample_box(Box(Point(0.0, 0.0), Point(1.0, 2.0)), 0.5);
    EXPECT_EQ(b.size(), 3u * 5u);
}

TEST(Hausdorff, IntervalExamples) {
    const double pitch = 0.01;
    const auto x = CompactSet::sample_interval(0.0, 20.0, pitch);
    const auto y = CompactSet::sample_interval(22.0, 31.0, pitch);
    EXPECT_NEAR(hausdorff_distance(x, y), 22.0, 0.02);
    EXPECT_NEAR(directed_distance(x, y), 22.0, 0.02);
    EXPECT_NEAR(directed_distance(y, x), 11.0, 0.02);
    EXPECT_NEAR(hausdorff_distance(CompactSet::sample_interval(0, 1, pitch),
                                   CompactSet::sample_interval(-1, 0, pitch)),
                1.0, pitch);
}

TEST(Hausdorff, SmallExamples) {
    const CompactSet a({Point(0.0)});
    const CompactSet b({Point(0.0), Point(1.0)});
    EXPECT_EQ(directed_distance(a, b), 0.0);
    EXPECT_EQ(directed_distance(b, a), 1.0);
    EXPECT_EQ(hausdorff_distance(a, b), 1.0);
    EXPECT_EQ(hausdorff_distance(b, b), 0.0);
    EXPECT_EQ(kind_of([&] { hausdorff_distance(a, CompactSet({Point(0.0, 0.0)})); }), ErrorKind::InvalidInput);
}

TEST(Hausdorff, WitnessTiesGoToFirstIndex) {
    // both points of A are at distance 1 from B; 0 is nearer to nothing else
    const CompactSet a({Point(-1.0), Point(3.0)});
    const CompactSet b({Point(0.0), Point(2.0)});
    const auto d = directed_distance_detail(a, b, HausdorffMethod::BruteForce);
    EXPECT_EQ(d.value, 1.0);
    EXPECT_EQ(d.from_index, 0u);
    EXPECT_EQ(d.to_index, 0u);
    const auto g = directed_distance_detail(a, b, HausdorffMethod::Grid);
    EXPECT_EQ(g.from_index, d.from_index);
    EXPECT_EQ(g.to_index, d.to_index);
}

TEST(HausdorffProperty, IndexMatchesBruteForceOracle) {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + trial % 2;
        // every third trial is strongly clustered
        const double spread = trial % 3 == 0 ? 1e-4 : 5.0;
        auto a = random_cloud(rng, dim, 1 + rng.index(400), -spread, spread);
        auto b = random_cloud(rng, dim, 1 + rng.index(400), -5.0, 5.0);
        const double ref = oracle::hausdorff(a, b);
        EXPECT_NEAR(hausdorff_distance(a, b, HausdorffMethod::Grid), ref, 1e-12) << "trial " << trial;
        EXPECT_EQ(hausdorff_distance(a, b, HausdorffMethod::Grid),
                  hausdorff_distance(a, b, HausdorffMethod::BruteForce));
        const auto dg = directed_distance_detail(a, b, HausdorffMethod::Grid);
        const auto db = directed_distance_detail(a, b, HausdorffMethod::BruteForce);
        EXPECT_EQ(dg.from_index, db.from_index);
        EXPECT_EQ(dg.to_index, db.to_index);
    }
}

TEST(HausdorffProperty, MetricAxioms) {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 1 + trial % 2;
        const auto a = random_cloud(rng, dim, 1 + rng.index(60));
        const auto b = random_cloud(rng, dim, 1 + rng.index(60));
        const auto c = random_cloud(rng, dim, 1 + rng.index(60));
        EXPECT_EQ(hausdorff_distance(a, a), 0.0);
        EXPECT_EQ(hausdorff_distance(a, b), hausdorff_distance(b, a));
        EXPECT_LE(hausdorff_distance(a, c), hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-12);
        EXPECT_GE(hausdorff_distance(a, b), directed_distance(a, b));
    }
}

TEST(NearestNeighborGrid, HandlesDuplicatesAndFarQueries) {
    const std::vector<Point> pts{Point(1.0, 1.0), Point(0.0, 0.0), Point(1.0, 1.0)};
    const NearestNeighborGrid g(pts);
    const auto h = g.nearest(Point(1.0, 1.2));
    EXPECT_EQ(h.index, 0u);
    EXPECT_EQ(g.nearest(Point(-100.0, -100.0)).index, 1u);
    const std::vector<Point> line{Point(2.0), Point(0.0), Point(2.0), Point(1.0)};
    const NearestNeighborGrid l(line);
    EXPECT_EQ(l.nearest(Point(1.9)).index, 0u);
    EXPECT_EQ(l.nearest(Point(0.5)).index, 1u);  // tie between 0 and 1, lower index
    EXPECT_EQ(l.nearest(Point(50.0)).distance, 48.0);
}

TEST(PointCsv, RoundTripIsExact) {
    Rng rng(5);
    for (std::size_t dim : {1u, 2u}) {
        const auto s = random_cloud(rng, dim, 300);
        std::stringstream buf;
        write_point_csv(buf, s, "cloud");
        EXPECT_EQ(read_point_csv(buf), s);
    }
}

TEST(PointCsv, RejectsRaggedRowsAndGarbage) {
    std::stringstream ragged("1,2\n3\n");
    EXPECT_EQ(kind_of([&] { read_point_csv(ragged); }), ErrorKind::InvalidInput);
    std::stringstream junk("1,abc\n");
    EXPECT_EQ(kind_of([&] { read_point_csv(junk); }), ErrorKind::InvalidInput);
    std::stringstream commented("# header\n\n0.5\n0.25\n");
    EXPECT_EQ(read_point_csv(commented).size(), 2u);
}
