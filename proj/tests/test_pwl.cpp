#include "poincare/error.hpp"
#include "poincare/pwl.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace poincare;

namespace {

PiecewiseLinear tent() { return PiecewiseLinear({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}); }

double derivative_energy(const PiecewiseLinear& u, double p) { return drift_energy(u, 0.0, PExponent(p)); }

// Sum over crossings of |u| at level t of 1 / |slope|.
double harmonic_slope_sum(const PiecewiseLinear& u, double t)
{
    const PiecewiseLinear a = u.abs();
    double s = 0.0;
    for (std::size_t i = 0; i < a.pieces(); ++i) {
        const double v0 = a.values()[i], v1 = a.values()[i + 1];
        if ((v0 - t) * (v1 - t) < 0.0)
            s += 1.0 / std::abs(a.slope(i));
    }
    return s;
}

} // namespace

TEST(PiecewiseLinear, Validation)
{
    EXPECT_THROW(PiecewiseLinear({0.0, 1.0}, {0.0}), Error);
    EXPECT_THROW(PiecewiseLinear({0.0}, {0.0}), Error);
    EXPECT_THROW(PiecewiseLinear({0.0, 1.0, 1.0}, {0.0, 1.0, 0.0}), Error);
    EXPECT_THROW(PiecewiseLinear({0.0, 1.0, 2.0}, {0.5, 1.0, 0.0}), Error);
    const PiecewiseLinear u({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 0.0});
    EXPECT_EQ(u.pieces(), 2u); // collinear breakpoint dropped
    EXPECT_DOUBLE_EQ(u(1.5), 1.5);
    EXPECT_EQ(u(-1.0), 0.0);
}

TEST(LpNorm, Tent)
{
    EXPECT_NEAR(lp_norm_p(tent(), PExponent(2.0)), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(lp_norm_p(tent(), PExponent(4.0)), 2.0 / 5.0, 1e-15);
}

TEST(LpNorm, LinearPowerIntegralIsStableForLargeP)
{
    // integral_0^1 (1 + s)^200 ds = (2^201 - 1) / 201
    const double exact = (std::pow(2.0, 201.0) - 1.0) / 201.0;
    EXPECT_NEAR(integral_abs_linear_pow(1.0, 2.0, 1.0, 200.0), exact, 1e-13 * exact);
    // sign change inside: integral_0^2 |s - 1|^3 ds = 1/2
    EXPECT_NEAR(integral_abs_linear_pow(-1.0, 1.0, 2.0, 3.0), 0.5, 1e-15);
}

TEST(Distribution, Tent)
{
    const DistributionFunction mu = distribution(tent());
    for (double t : {0.0, 0.2, 0.5, 0.9})
        EXPECT_NEAR(mu(t), 2.0 * (1.0 - t), 1e-14);
    EXPECT_NEAR(mu.derivative(0.3), -2.0, 1e-14);
}

TEST(Distribution, CounterexampleFunction)
{
    const double eps = 0.01;
    const DistributionFunction mu = distribution(drift_counterexample_function(eps));
    for (double t : {0.1, 0.4, 0.77})
        EXPECT_NEAR(mu(t), (1.0 - t) * (2.0 - eps) / (1.0 - eps), 1e-13);
}

TEST(Distribution, PlateauJump)
{
    const PiecewiseLinear trap({0.0, 1.0, 2.5, 3.0}, {0.0, 1.0, 1.0, 0.0});
    const DistributionFunction mu = distribution(trap);
    bool found = false;
    for (const auto& level : mu.levels())
        if (level.value == 1.0) {
            EXPECT_NEAR(level.left_limit - level.measure, 1.5, 1e-14);
            found = true;
        }
    EXPECT_TRUE(found);
    EXPECT_NEAR(superlevel_measure(trap, 1.0, false), 1.5, 1e-14);
    EXPECT_EQ(superlevel_measure(trap, 1.0, true), 0.0);
}

TEST(Rearrange, SymmetricTentIsCentred)
{
    const PiecewiseLinear r = rearrange(tent());
    EXPECT_EQ(r, PiecewiseLinear({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}));
}

TEST(Rearrange, CounterexampleBecomesSymmetricTent)
{
    const double eps = 0.01;
    const double T = (2.0 - eps) / (1.0 - eps);
    const PiecewiseLinear r = rearrange(drift_counterexample_function(eps));
    ASSERT_EQ(r.pieces(), 2u);
    EXPECT_NEAR(r.left(), -0.5 * T, 1e-14);
    EXPECT_NEAR(r.right(), 0.5 * T, 1e-14);
    EXPECT_NEAR(r.slope(0), 2.0 * (1.0 - eps) / (2.0 - eps), 1e-14);
    EXPECT_NEAR(r.slope(1), -2.0 * (1.0 - eps) / (2.0 - eps), 1e-14);
}

TEST(Rearrange, EquimeasurableOnRandomFunctions)
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        const PiecewiseLinear u = fixtures::random_pwl(rng, 3 + k % 9);
        const PiecewiseLinear r = rearrange(u);
        for (double p : {2.0, 2.5, 3.0, 4.0}) {
            const double a = lp_norm_p(u, PExponent(p));
            EXPECT_NEAR(lp_norm_p(r, PExponent(p)), a, 1e-10 * a);
        }
    }
}

TEST(Rearrange, EvenNonincreasingIdempotent)
{
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; ++k) {
        const PiecewiseLinear r = rearrange(fixtures::random_pwl(rng, 8));
        EXPECT_EQ(rearrange(r), r);
        const auto xs = r.breakpoints();
        const auto vs = r.values();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            EXPECT_NEAR(xs[i], -xs[xs.size() - 1 - i], 1e-12);
            EXPECT_EQ(vs[i], vs[xs.size() - 1 - i]);
            if (xs[i] > 0.0 && i > 0) {
                EXPECT_LE(vs[i], vs[i - 1]);
            }
        }
    }
}

TEST(Rearrange, SlopeHarmonicSum)
{
    std::mt19937_64 rng(13);
    for (int k = 0; k < 30; ++k) {
        const PiecewiseLinear u = fixtures::random_pwl(rng, 6);
        const PiecewiseLinear r = rearrange(u);
        const double top = u.max_abs();
        for (int j = 1; j < 20; ++j) {
            const double t = top * j / 20.0;
            const double lhs = harmonic_slope_sum(u, t);
            if (lhs == 0.0)
                continue;
            EXPECT_NEAR(harmonic_slope_sum(r, t), lhs, 1e-9 * lhs);
        }
    }
}

TEST(Rearrange, PolyaSzego)
{
    std::mt19937_64 rng(14);
    for (int k = 0; k < 100; ++k) {
        const PiecewiseLinear u = fixtures::random_pwl(rng, 2 + k % 10);
        const PiecewiseLinear r = rearrange(u);
        for (double p : {2.0, 3.0, 4.0})
            EXPECT_GE(derivative_energy(u, p), derivative_energy(r, p) * (1.0 - 1e-12));
    }
}

TEST(DriftEnergy, TentValues)
{
    EXPECT_NEAR(drift_energy(tent(), 0.0, PExponent(4.0)), 2.0, 1e-14);
    EXPECT_NEAR(drift_energy(tent(), 1.0, PExponent(4.0)), 6.4, 1e-13);
}

TEST(GeneralDriftEnergy, ConstantAndLinearLevelFunctions)
{
    const PExponent p4(4.0);
    const PiecewiseLinear u = drift_counterexample_function(0.01);
    EXPECT_NEAR(general_drift_energy(u, LevelFunction::constant(0.0), p4, 1e-12), drift_energy(u, 0.0, p4), 1e-13);
    EXPECT_NEAR(general_drift_energy(u, LevelFunction::constant(1.0), p4, 1e-12), 15.840800010101010101, 1e-9);
    EXPECT_NEAR(general_drift_energy(rearrange(u), LevelFunction::constant(1.0), p4, 1e-12),
                15.919800006332134156, 1e-9);
    // f(v) = 2v turns the level drift into the kappa drift.
    std::mt19937_64 rng(15);
    const PiecewiseLinear w = fixtures::random_pwl(rng, 7, true);
    EXPECT_NEAR(general_drift_energy(w, LevelFunction::from([](double v) { return 2.0 * v; }), PExponent(3.0), 1e-12),
                drift_energy(w, 2.0, PExponent(3.0)), 1e-9);
    EXPECT_THROW(general_drift_energy(PiecewiseLinear({0.0, 1.0, 2.0}, {0.0, -1.0, 0.0}),
                                      LevelFunction::constant(1.0), p4, 1e-10),
                 Error);
}

TEST(TwoSlopeGap, SymmetricCases)
{
    const TwoSlopeGap g = two_slope_gap(1.0, 1.0, PExponent(2.0));
    EXPECT_NEAR(g.min_value, 2.0, 1e-14);
    EXPECT_NEAR(g.lower_bound, 2.0, 1e-14);
    EXPECT_NEAR(g.argmin_shift, 0.0, 1e-15);
    for (double p : {2.0, 3.0, 5.0}) {
        const double c = 0.7;
        const TwoSlopeGap s = two_slope_gap(c, c, PExponent(p));
        EXPECT_NEAR(s.argmin_shift, 0.0, 1e-15);
        EXPECT_NEAR(s.min_value, 2.0 * std::pow(c, p - 1.0), 1e-13);
        EXPECT_NEAR(s.lower_bound, s.min_value, 1e-13);
    }
}

TEST(TwoSlopeGap, UnequalSlopes)
{
    const TwoSlopeGap g = two_slope_gap(1.0, 2.0, PExponent(3.0));
    EXPECT_NEAR(g.min_value, 4.6324676318528673647, 1e-12);
    EXPECT_NEAR(g.lower_bound, 32.0 / 9.0, 1e-13);
    EXPECT_NEAR(g.argmin_shift, 0.24264068711928514641, 1e-13);
    EXPECT_THROW(two_slope_gap(1.0, 2.0, PExponent(1.5)), Error);
    EXPECT_THROW(two_slope_gap(-1.0, 2.0, PExponent(3.0)), Error);
}

TEST(DriftBound, CounterexampleFunctionOnKappaGrid)
{
    std::vector<double> kappas;
    for (int i = -50; i <= 50; ++i)
        kappas.push_back(0.1 * i);
    const DriftBoundReport r = verify_drift_bound(drift_counterexample_function(0.01), PExponent(4.0), kappas);
    EXPECT_TRUE(r.holds());
    EXPECT_NEAR(r.sharp, 1.9700005037688124976, 1e-12);
    EXPECT_GE(r.min_margin(), 0.0);
}

TEST(DriftBound, RandomFunctions)
{
    std::mt19937_64 rng(16);
    std::vector<double> kappas;
    for (int i = -100; i <= 100; ++i)
        kappas.push_back(0.1 * i);
    for (int k = 0; k < 100; ++k) {
        const PiecewiseLinear u = fixtures::random_pwl(rng, 10);
        for (double p : {2.0, 3.0, 4.0})
            EXPECT_TRUE(verify_drift_bound(u, PExponent(p), kappas).holds()) << k << " p=" << p;
    }
    EXPECT_THROW(verify_drift_bound(tent(), PExponent(1.5), kappas), Error);
}

TEST(Counterexample, ReferenceValues)
{
    const DriftCounterexample c = drift_counterexample(PExponent(4.0), 0.01);
    EXPECT_NEAR(c.lhs, 15.840800010101010101, 1e-10);
    EXPECT_NEAR(c.rhs_rearranged, 15.919800006332134156, 1e-10);
    EXPECT_NEAR(c.sharp, 1.9700005037688124976, 1e-12);
    EXPECT_FALSE(c.rearranged_inequality_holds());
    EXPECT_TRUE(c.refined_inequality_holds());
}

TEST(Counterexample, HoldsAcrossExponents)
{
    for (double p : {3.0, 4.0, 6.0})
        for (double eps : {0.001, 0.01}) {
            const DriftCounterexample c = drift_counterexample(PExponent(p), eps);
            EXPECT_LT(c.lhs, c.rhs_rearranged) << p << " " << eps;
            EXPECT_GE(c.lhs, c.sharp);
        }
}

TEST(Counterexample, SmallEpsilonLimitAndFirstOrderGap)
{
    const DriftCounterexample c = drift_counterexample(PExponent(4.0), 1e-9);
    EXPECT_NEAR(c.lhs, 16.0, 1e-6);
    EXPECT_NEAR(c.rhs_rearranged, 16.0, 1e-6);
    EXPECT_NEAR(c.sharp, 2.0, 1e-6);
    // Gap at p = 3 from the closed forms (mpmath), linear in eps.
    const DriftCounterexample d = drift_counterexample(PExponent(3.0), 0.02);
    EXPECT_NEAR(d.rhs_rearranged - d.lhs, 0.0389939393939393939, 1e-12);
    const DriftCounterexample e = drift_counterexample(PExponent(3.0), 0.001);
    EXPECT_NEAR(e.rhs_rearranged - e.lhs, 0.0019974992496248124, 1e-12);
}
