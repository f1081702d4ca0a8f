#include <gtest/gtest.h>

#include <cmath>

#include "phifrac/comparison.hpp"
#include "phifrac/error.hpp"
#include "phifrac/random.hpp"

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

const InvariantCheck& check(const ComparisonReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("missing check " + name);
}

} // namespace

TEST(Eval, Examples) {
    EXPECT_EQ(eval(ComparisonFunction::linear(0.5), 4.0), 2.0);
    EXPECT_EQ(eval(ComparisonFunction::ratio_shift(3.0), 3.0), 0.5);
    for (const auto& phi : {ComparisonFunction::linear(0.7), ComparisonFunction::ratio_shift(2.0),
                            ComparisonFunction::rakotch_rational(0.9, 2.0)})
        EXPECT_EQ(eval(phi, 0.0), 0.0) << phi.describe();
}

TEST(Eval, RejectsBadArguments) {
    const auto phi = ComparisonFunction::linear(0.5);
    EXPECT_EQ(kind_of([&] { eval(phi, -1.0); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { eval(phi, std::nan("")); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { eval(phi, INFINITY); }), ErrorKind::InvalidInput);
}

TEST(Construction, RejectsOutOfRangeParameters) {
    EXPECT_EQ(kind_of([] { ComparisonFunction::linear(1.0); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { ComparisonFunction::linear(-0.1); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { ComparisonFunction::ratio_shift(0.5); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { ComparisonFunction::rakotch_rational(1.5, 1.0); }), ErrorKind::InvalidParameter);
    // alpha increasing in t is not a Rakotch factor
    EXPECT_EQ(kind_of([] { ComparisonFunction::rakotch([](double t) { return t / (1.0 + t); }, "bad"); }),
              ErrorKind::InvalidParameter);
}

TEST(PointwiseMax, CollapsesLinearMembers) {
    const auto m = ComparisonFunction::pointwise_max({ComparisonFunction::linear(0.2), ComparisonFunction::linear(0.6)});
    EXPECT_EQ(m.family(), "linear");
    EXPECT_EQ(m(1.0), 0.6);
    const auto mixed = ComparisonFunction::pointwise_max({ComparisonFunction::linear(0.2), ComparisonFunction::ratio_shift(1.0)});
    EXPECT_EQ(mixed(1.0), 0.5);
    EXPECT_EQ(mixed(10.0), 2.0);
    EXPECT_EQ(mixed(0.5), 0.5 / 1.5);
}

TEST(ComposeChain, Examples) {
    const auto half = ComparisonChain::constant(ComparisonFunction::linear(0.5));
    EXPECT_EQ(compose_chain(half, 3, 8.0), 1.0);
    EXPECT_EQ(compose_chain(half, 0, 8.0), 8.0);
    const auto alt = ComparisonChain::periodic({}, {ComparisonFunction::linear(0.5), ComparisonFunction::linear(0.25)});
    EXPECT_EQ(compose_chain(alt, 2, 8.0), 1.0);
    const auto ratio = ComparisonChain::constant(ComparisonFunction::ratio_shift(1.0));
    EXPECT_NEAR(compose_chain(ratio, 5, 1.0), 1.0 / 6.0, 1e-15);
    // direct nesting
    double t = 1.0;
    for (int k = 0; k < 5; ++k) t = t / (t + 1.0);
    EXPECT_EQ(compose_chain(ratio, 5, 1.0), t);
}

TEST(ComposeChain, ReversedOrder) {
    const auto chain = ComparisonChain::periodic({ComparisonFunction::ratio_shift(1.0)}, {ComparisonFunction::linear(0.5)});
    // phi_1 o phi_2 (2) = phi_1(1) = 1/2; phi_2 o phi_1 (2) = (2/3) / 2
    EXPECT_EQ(compose_chain(chain, 2, 2.0), 0.5);
    EXPECT_NEAR(compose_chain_reversed(chain, 2, 2.0), 1.0 / 3.0, 1e-16);
}

TEST(ChainDecays, Examples) {
    const auto half = ComparisonChain::constant(ComparisonFunction::linear(0.5));
    const auto d = chain_decays(half, 1.0, 1e-6, 64);
    EXPECT_TRUE(d.decays);
    EXPECT_EQ(d.witness, 20u);

    // rates 1 - 1/(i+1)^2: the products tend to 1/2, never below 1e-3
    const auto slow = ComparisonChain::generated([](std::size_t i) {
        const double j = static_cast<double>(i + 1);
        return ComparisonFunction::linear(1.0 - 1.0 / (j * j));
    });
    const auto s = chain_decays(slow, 1.0, 1e-3, 5000);
    EXPECT_FALSE(s.decays);
    EXPECT_NEAR(s.value, 0.5, 1e-3);

    // phi^k(1) = 1 / (1 + k); at k = 999 the value is 1/1000, which lies
    // below the double nearest 1e-3.
    const auto ratio = ComparisonChain::constant(ComparisonFunction::ratio_shift(1.0));
    const auto r = chain_decays(ratio, 1.0, 1e-3, 2000);
    EXPECT_TRUE(r.decays);
    EXPECT_EQ(r.witness, 999u);
    EXPECT_GE(compose_chain(ratio, 998, 1.0), 1e-3);
    const auto r2 = chain_decays(ratio, 1.0, 0.99e-3, 2000);
    EXPECT_EQ(r2.witness, 1010u);
}

TEST(ChainSeriesSum, Examples) {
    const auto half = ComparisonChain::constant(ComparisonFunction::linear(0.5));
    const auto s = chain_series_sum(half, 1.0, 64);
    EXPECT_TRUE(s.converged);
    EXPECT_NEAR(s.sum, 1.0, 1e-15);
    const auto ratio = chain_series_sum(ComparisonChain::constant(ComparisonFunction::ratio_shift(1.0)), 1.0, 10000);
    EXPECT_FALSE(ratio.converged);
    // harmonic partial sum H_10001 - 1
    double h = 0.0;
    for (int k = 2; k <= 10001; ++k) h += 1.0 / k;
    EXPECT_NEAR(ratio.sum, h, 1e-9);
    const auto zero = chain_series_sum(ComparisonChain::constant(ComparisonFunction::linear(0.0)), 3.0, 50);
    EXPECT_TRUE(zero.converged);
    EXPECT_EQ(zero.sum, 0.0);
}

TEST(VerifyComparison, Examples) {
    EXPECT_TRUE(verify_comparison(ComparisonFunction::linear(0.5)).pass());
    EXPECT_TRUE(verify_comparison(ComparisonFunction::rakotch_rational(0.5, 1.0)).pass());

    const auto ln = verify_comparison([](double t) { return std::log(t + 2.0); }, "ln(t+2)");
    EXPECT_FALSE(ln.pass());
    EXPECT_FALSE(check(ln, "zero_at_origin").pass);
    EXPECT_FALSE(check(ln, "below_identity").pass);
    EXPECT_EQ(check(ln, "below_identity").first_violation, 1e-6);  // smallest grid t > 0
    EXPECT_EQ(check(ln, "zero_at_origin").first_violation, 0.0);
}

TEST(VerifyComparison, DecayCertificateIsLiteral) {
    // phi^64(t) = t / (1 + 64 t) is never below 1e-6 t on the grid
    const auto ratio = verify_comparison(ComparisonFunction::ratio_shift(1.0));
    EXPECT_TRUE(check(ratio, "below_identity").pass);
    EXPECT_TRUE(check(ratio, "non_decreasing").pass);
    EXPECT_FALSE(check(ratio, "iterate_decay").pass);
    // 0.8^64 ~ 6.3e-7 passes, 0.9^64 ~ 1.2e-3 does not
    EXPECT_TRUE(verify_comparison(ComparisonFunction::linear(0.8)).pass());
    EXPECT_FALSE(verify_comparison(ComparisonFunction::linear(0.9)).pass());
    ComparisonGrid longer;
    longer.decay_iterations = 256;
    EXPECT_TRUE(verify_comparison(ComparisonFunction::linear(0.9), longer).pass());
}

TEST(ComparisonProperty, CompositionMonotoneInK) {
    Rng rng(3);
    const ComparisonGrid grid{200};
    for (int trial = 0; trial < 20; ++trial) {
        const auto chain = ComparisonChain::periodic(
            {}, {ComparisonFunction::linear(rng.uniform(0, 0.99)), ComparisonFunction::ratio_shift(rng.uniform(1, 5)),
                 ComparisonFunction::rakotch_rational(rng.uniform(0.1, 1.0), rng.uniform(0.1, 4))});
        for (double t : grid.samples())
            for (std::size_t k = 0; k < 63; ++k)
                ASSERT_LE(compose_chain(chain, k + 1, t), compose_chain(chain, k, t));
    }
}

TEST(ComparisonProperty, LinearChainIsProduct) {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ComparisonFunction> rates;
        double prod = 1.0;
        const std::size_t k = 1 + rng.index(30);
        for (std::size_t i = 0; i < k; ++i) {
            const double r = rng.uniform(0.5, 0.99);
            prod *= r;
            rates.push_back(ComparisonFunction::linear(r));
        }
        const auto chain = ComparisonChain::periodic(rates, {ComparisonFunction::linear(0.5)});
        const double t = rng.uniform(0, 10);
        EXPECT_NEAR(compose_chain(chain, k, t), prod * t, 1e-12);
    }
}

TEST(ComparisonProperty, SeriesPartialSumsNonDecreasing) {
    const auto chain = ComparisonChain::periodic({}, {ComparisonFunction::ratio_shift(2.0), ComparisonFunction::linear(0.9)});
    double prev = 0.0;
    for (std::size_t k = 1; k <= 200; k += 7) {
        const double s = chain_series_sum(chain, 1.5, k).sum;
        EXPECT_GE(s, prev);
        prev = s;
    }
}

TEST(ComparisonProperty, RakotchRatioNonIncreasing) {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = ComparisonFunction::rakotch_rational(rng.uniform(0.05, 1.0), rng.uniform(0.01, 10));
        const auto r = verify_comparison(phi);
        EXPECT_TRUE(check(r, "rakotch_ratio_non_increasing").pass) << phi.describe();
        double prev = INFINITY;
        for (double t : ComparisonGrid{}.samples()) {
            if (t == 0.0) continue;
            const double ratio = phi(t) / t;
            EXPECT_LE(ratio, prev * (1 + 1e-15));
            prev = ratio;
        }
    }
}

TEST(IndexedFamily, PrefixAndTail) {
    const auto f = IndexedFamily<int>::periodic({7, 8}, {1, 2, 3});
    EXPECT_EQ(f.first(8), (std::vector<int>{7, 8, 1, 2, 3, 1, 2, 3}));
    const auto g = IndexedFamily<int>::generated([](std::size_t i) { return static_cast<int>(i * i); }, {-1});
    EXPECT_EQ(g.first(4), (std::vector<int>{-1, 4, 9, 16}));
    EXPECT_THROW(f.at(0), Error);
    EXPECT_THROW(IndexedFamily<int>::periodic({1}, {}), Error);
}
