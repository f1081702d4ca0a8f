#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "phifrac/cifs.hpp"
#include "phifrac/error.hpp"
#include "phifrac/hausdorff.hpp"
#include "phifrac/random.hpp"
#include "phifrac/sfs.hpp"

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

const Box kUnit = Box::interval(0.0, 1.0);

FunctionSystem cantor() {
    return FunctionSystem({ContractiveMap::affine1d(1.0 / 3.0, 0.0, kUnit),
                           ContractiveMap::affine1d(1.0 / 3.0, 2.0 / 3.0, kUnit)});
}

CompactSet from_values(const std::vector<double>& v) {
    std::vector<Point> pts;
    for (double x : v) pts.emplace_back(x);
    return CompactSet(std::move(pts));
}

CompactSet random_set(Rng& rng, const Box& box, std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(box.dim() == 1 ? Point(rng.uniform(box.lo()[0], box.hi()[0]))
                                     : Point(rng.uniform(box.lo()[0], box.hi()[0]), rng.uniform(box.lo()[1], box.hi()[1])));
    return CompactSet(std::move(pts));
}

} // namespace

TEST(Hutchinson, CantorExamples) {
    const auto f = cantor();
    const auto one = hutchinson(f, from_values({0.0, 1.0}));
    EXPECT_LE(hausdorff_distance(one, from_values({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0})), 1e-15);
    EXPECT_EQ(one.size(), 4u);
    CompactSet a = from_values({0.0, 1.0});
    for (int i = 0; i < 3; ++i) a = hutchinson(f, a);
    const auto ref = from_values(oracle::cantor_endpoints(3));
    EXPECT_EQ(a.size(), 16u);
    EXPECT_LE(oracle::hausdorff(a, ref), 1e-15);
}

TEST(Hutchinson, SingleMapIsImage) {
    const FunctionSystem one({ContractiveMap::affine1d(0.5, 0.25, kUnit)});
    const auto a = from_values({0.0, 0.5, 1.0});
    EXPECT_EQ(hutchinson(one, a), image(one.maps()[0], a));
}

TEST(Hutchinson, ErrorsAndCap) {
    const auto f = cantor();
    EXPECT_EQ(kind_of([&] { hutchinson(f, from_values({2.0})); }), ErrorKind::Domain);
    const auto big = CompactSet::sample_interval(0.0, 1.0, 1e-5);
    EXPECT_EQ(kind_of([&] { hutchinson(f, big, 0.0, 1000); }), ErrorKind::Resource);
    EXPECT_NO_THROW(hutchinson(f, big, 1e-3, 1001));
    EXPECT_EQ(kind_of([] { FunctionSystem({ContractiveMap::affine1d(0.5, 0.0, kUnit),
                                           ContractiveMap::affine1d(0.5, 0.0, Box::interval(0.0, 2.0))}); }),
              ErrorKind::InvalidInput);
}

TEST(Decimate, ErrorBoundAndDeterminism) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const Box sq(Point(0.0, 0.0), Point(1.0, 1.0));
        const auto a = random_set(rng, sq, 500);
        const double pitch = rng.uniform(1e-3, 0.1);
        const auto d = decimate(a, pitch, &sq);
        EXPECT_LE(hausdorff_distance(a, d), pitch * std::sqrt(2.0) / 2.0 + 1e-12);
        EXPECT_EQ(d, decimate(a, pitch, &sq));
        for (const auto& p : d.points()) EXPECT_TRUE(sq.contains(p));
    }
}

TEST(SfsProperty, MonotoneLift) {
    Rng rng(10);
    const auto f = cantor();
    for (int trial = 0; trial < 50; ++trial) {
        const auto b = random_set(rng, kUnit, 2 + rng.index(60));
        std::vector<Point> sub;
        for (std::size_t i = 0; i < b.size(); i += 2) sub.push_back(b[i]);
        const CompactSet a(std::move(sub));
        EXPECT_TRUE(hutchinson(f, a).subset_of(hutchinson(f, b)));
    }
}

TEST(SetLift, ExamplesPassAndWrongPhiFails) {
    EXPECT_TRUE(check_set_lift(cantor(), 200, 1).pass);
    EXPECT_TRUE(check_set_lift(FunctionSystem({ContractiveMap::reciprocal(kUnit)}), 200, 2).pass);
    const Box sq(Point(0.0, 0.0), Point(1.0, 1.0));
    const FunctionSystem pair({ContractiveMap::affine2d({0.5, 0.1, -0.1, 0.4}, {0.0, 0.1}, sq),
                               ContractiveMap::affine2d({0.3, 0.0, 0.0, 0.6}, {0.6, 0.3}, sq)});
    EXPECT_TRUE(check_set_lift(pair, 200, 3).pass);
    const auto wrong = FunctionSystem({cantor().maps()[0].with_phi(ComparisonFunction::linear(0.1)),
                                       cantor().maps()[1].with_phi(ComparisonFunction::linear(0.1))});
    const auto r = check_set_lift(wrong, 200, 4);
    EXPECT_FALSE(r.pass);
    // A = {0}, B = {1}: h(F A, F B) = 1/3 against phi(1) = 0.1
    EXPECT_NEAR(hausdorff_distance(hutchinson(wrong, from_values({0.0})), hutchinson(wrong, from_values({1.0}))),
                1.0 / 3.0, 1e-15);
}

TEST(SfsForward, CantorRatioIsOneThird) {
    SetTrajectoryOptions opt;
    opt.kmax = 8;
    const auto r = sfs_forward(SfsSequence::stationary(cantor()), CompactSet::sample_interval(0.0, 1.0, 1.0 / 81.0), opt);
    ASSERT_GE(r.gaps.size(), 6u);
    for (std::size_t k = 2; k + 1 < r.gaps.size(); ++k) EXPECT_NEAR(r.gaps[k + 1] / r.gaps[k], 1.0 / 3.0, 1e-9) << k;
}

TEST(SfsForward, SingleMapSingleton) {
    const FunctionSystem f({ContractiveMap::affine1d(0.5, 1.0, Box::interval(0.0, 4.0))});
    const auto r = sfs_forward(SfsSequence::stationary(f), from_values({0.0}));
    ASSERT_TRUE(r.converged);
    EXPECT_EQ(r.limit->size(), 1u);
    EXPECT_NEAR((*r.limit)[0][0], 2.0, 1e-9);
}

TEST(SfsForward, AlternatingHasTwoAccumulationSets) {
    const Box dom = Box::interval(0.0, 10.0);
    const auto seq = SfsSequence::periodic({}, {FunctionSystem({ContractiveMap::affine1d(0.5, 0.0, dom)}),
                                                FunctionSystem({ContractiveMap::affine1d(0.5, 3.0, dom)})});
    const auto r = sfs_forward(seq, from_values({0.0}));
    EXPECT_FALSE(r.converged);
    ASSERT_EQ(r.accumulation_sets.size(), 2u);
    EXPECT_NEAR(r.accumulation_sets[0][0][0], 2.0, 1e-6);
    EXPECT_NEAR(r.accumulation_sets[1][0][0], 4.0, 1e-6);
    const auto b = sfs_backward(seq, from_values({0.0}));
    ASSERT_TRUE(b.converged);
    EXPECT_NEAR((*b.limit)[0][0], 2.0, 1e-9);
}

TEST(SfsBackward, CantorAttractorAgainstEnumeration) {
    SetTrajectoryOptions opt;
    opt.decimation_pitch = std::pow(3.0, -12);
    const auto ref = from_values(oracle::cantor_endpoints(12));
    const auto r = sfs_backward(SfsSequence::stationary(cantor()), from_values({0.0}), opt);
    ASSERT_TRUE(r.converged);
    EXPECT_LT(hausdorff_distance(*r.limit, ref), std::pow(3.0, -10));
    // fixed-point residual of the computed attractor
    const auto again = hutchinson(cantor(), *r.limit, opt.decimation_pitch);
    EXPECT_LT(hausdorff_distance(again, *r.limit), opt.decimation_pitch + opt.tol);
}

TEST(SfsBackward, LimitIndependentOfStart) {
    SetTrajectoryOptions opt;
    opt.decimation_pitch = std::pow(3.0, -9);
    opt.keep_iterates = false;
    const auto seq = SfsSequence::stationary(cantor());
    const auto a = sfs_backward(seq, from_values({0.0}), opt);
    const auto b = sfs_backward(seq, CompactSet::sample_interval(0.0, 1.0, 0.01), opt);
    ASSERT_TRUE(a.converged);
    ASSERT_TRUE(b.converged);
    // both limits sit on the same decimation grid
    EXPECT_LE(hausdorff_distance(*a.limit, *b.limit), 10 * opt.tol + opt.decimation_pitch);
}

TEST(SfsBackward, MixedScalesConverge) {
    const auto halves = FunctionSystem({ContractiveMap::affine1d(0.5, 0.0, kUnit), ContractiveMap::affine1d(0.5, 0.5, kUnit)});
    const auto seq = SfsSequence::periodic({cantor(), cantor(), cantor(), cantor(), cantor()}, {halves});
    SetTrajectoryOptions opt;
    opt.kmax = 40;
    opt.decimation_pitch = 1.0 / 4096.0;
    const auto r = sfs_backward(seq, from_values({0.0}), opt);
    ASSERT_TRUE(r.converged);
    for (std::size_t k = r.gaps.size() - 5; k < r.gaps.size(); ++k) EXPECT_LT(r.gaps[k], 1e-9);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Cifs, GeometricTruncation) {
    const CifsSystem geo(
        [](std::size_t i) { return ContractiveMap::affine1d(std::ldexp(1.0, -static_cast<int>(i) - 1), 0.0, kUnit); },
        ComparisonFunction::linear(0.25), kUnit);
    const auto r = cifs_operator(geo, from_values({1.0}), 1e-3);
    // images 2^-(i+1); 2^-11 is the first image within 1e-3 of 2^-10, and the
    // next ten move the union by 2^-10 - 2^-20 < 1e-3
    EXPECT_EQ(r.maps_used, 9u);
    EXPECT_LT(r.certificate_gap, 1e-3);
    std::vector<double> expect;
    for (int i = 1; i <= 9; ++i) expect.push_back(std::ldexp(1.0, -i - 1));
    EXPECT_EQ(r.set, from_values(expect));
}

TEST(Cifs, CoarseEpsAndSingleMap) {
    const CifsSystem geo(
        [](std::size_t i) { return ContractiveMap::affine1d(std::ldexp(1.0, -static_cast<int>(i) - 1), 0.0, kUnit); },
        ComparisonFunction::linear(0.25), kUnit);
    const auto r = cifs_operator(geo, from_values({1.0}), 2.0);
    EXPECT_EQ(r.maps_used, 1u);
    EXPECT_EQ(r.set, from_values({0.25}));

    // one nonzero-content map: every other map sends A to the same point
    const CifsSystem one(
        [](std::size_t i) { return ContractiveMap::affine1d(i == 1 ? 0.5 : 0.0, 0.0, kUnit); },
        ComparisonFunction::linear(0.5), kUnit);
    const auto a = from_values({0.0, 1.0});
    const auto s = cifs_operator(one, a, 1e-6);
    EXPECT_EQ(s.set, hutchinson(FunctionSystem({one.map(1)}), a));
}

TEST(Cifs, CapAndSetLift) {
    const CifsSystem slow([](std::size_t i) { return ContractiveMap::affine1d(0.5, 0.5 / static_cast<double>(i), kUnit); },
                          ComparisonFunction::linear(0.5), kUnit);
    EXPECT_EQ(kind_of([&] { cifs_operator(slow, from_values({0.0}), 1e-9, 50); }), ErrorKind::Resource);
    EXPECT_TRUE(check_set_lift(slow, 30, 100, 9).pass);
}
