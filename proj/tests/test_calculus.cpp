#include "rhopoly/calculus.hpp"
#include "support.hpp"

using namespace rhopoly;
using test::below;
using test::near;
using test::rel_near;

namespace {

const PrecisionContext& ctx60()
{
    static const auto c = PrecisionContext::make(60);
    return c;
}

const ParamGridTables& generic_grid()
{
    static const auto g = build_grid(Params::parse("0.5", "1.5", "1", "1"), 4, ctx60(), {Axis::lambda, Axis::t});
    return g;
}

::testing::AssertionResult passes(const IdentityReport& rep)
{
    if (rep.residuals.empty()) return ::testing::AssertionFailure() << rep.id << ": no residuals";
    for (const auto& r : rep.residuals)
        if (!r.pass)
            return ::testing::AssertionFailure() << rep.id << ' ' << r.identity << " n=" << r.n
                                                 << " value=" << r.value.to_string(4) << " tol=" << r.tol.to_string(4);
    return ::testing::AssertionSuccess();
}

} // namespace

TEST(TableDerivative, LaguerreCoefficientsAtZeroT)
{
    // t = 0: coefficients scale as lambda^{(alpha+1)/2 + k}
    const auto p = Params::parse("0.5", "2", "1.5", "0");
    const auto g = build_grid(p, 4, ctx60(), {Axis::lambda});
    const auto& d = g.along(Axis::lambda);
    EXPECT_FALSE(d.one_sided);
    PrecisionScope s(g.ctx.digits);
    for (int n = 0; n <= 4; ++n) {
        for (int k = 0; k <= n; ++k) {
            const Real expected = g.table.coeffs[n][k] * ((p.alpha + 1) / 2 + k) / p.lambda;
            EXPECT_TRUE(near(d.coeffs[n][k], expected, pow10(-15) * max(Real(1), abs(expected)))) << n << ' ' << k;
        }
        // b_n/a_n = -n(n+alpha)/lambda and B_n = (2n+alpha+1)/lambda
        EXPECT_TRUE(near(d.b_over_a(g.table, n), n * (n + p.alpha) / sqr(p.lambda), pow10(-15)));
        EXPECT_TRUE(near(d.B[n], -(2 * n + p.alpha + 1) / sqr(p.lambda), pow10(-15)));
    }
    EXPECT_THROW(g.along(Axis::t), DomainError);
}

TEST(TableDerivative, OneSidedAtZeroT)
{
    const auto g = build_grid(Params::parse("0", "1", "1", "0"), 2, ctx60(), {Axis::t});
    EXPECT_TRUE(g.along(Axis::t).one_sided);
    const auto& base = generic_grid();
    PrecisionScope s(g.ctx.digits);
    EXPECT_TRUE(fd_tolerance(g, Real(1)) > fd_tolerance(base, Real(1)));
}

TEST(Identities, LambdaAndTLaws)
{
    const auto& g = generic_grid();
    for (int n = 0; n <= 4; ++n) {
        EXPECT_TRUE(passes(check_thm2_lambda(g, n)));
        EXPECT_TRUE(passes(check_thm2_t(g, n)));
        EXPECT_TRUE(passes(check_cor3(g, n)));
        EXPECT_TRUE(passes(check_thm3(g, n)));
    }
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(passes(check_2_30(g, n)));
}

TEST(Identities, TodaEquations)
{
    const auto& g = generic_grid();
    for (int n = 0; n <= 3; ++n) EXPECT_TRUE(passes(check_corollary1(g, n)));
    EXPECT_THROW(check_corollary1(g, 4), DomainError);
}

TEST(Identities, ToleranceIsFarBelowTheDerivatives)
{
    const auto& g = generic_grid();
    const auto& dl = g.along(Axis::lambda);
    PrecisionScope s(g.ctx.digits);
    for (int n = 0; n <= 4; ++n) EXPECT_TRUE(abs(dl.a[n]) > pow10(10) * fd_tolerance(g, abs(g.table.a[n])));
}

TEST(Identities, ScalingLaw)
{
    const auto& g = generic_grid();
    EXPECT_TRUE(passes(check_scaling(g.table, Real(2), ctx60())));
    EXPECT_TRUE(passes(check_scaling(g.table, Real("0.5"), ctx60())));
}

TEST(Identities, StepRefinementIsSecondOrder)
{
    EXPECT_TRUE(passes(check_refinement(Params::parse("0.5", "1.5", "1", "1"), 2, ctx60(), Real("0.001"))));
}

TEST(Identities, ShiftedKernelIntegrals)
{
    const auto T = build_recurrence(Params::parse("0.5", "1.5", "1", "1"), 2, ctx60());
    const auto q = PrecisionContext::make(35, 1e-25);
    for (int n = 0; n <= 1; ++n) EXPECT_TRUE(passes(check_2_36_2_37(T, n, q)));
}

TEST(QuasiOrthogonality, DerivativeAlongT)
{
    const auto& g = generic_grid();
    for (int n = 1; n <= 4; ++n) {
        const auto rep = check_quasi_orthogonality(g, n, Axis::t);
        EXPECT_TRUE(passes(rep));
        bool saw_lower_bound = false;
        for (const auto& r : rep.residuals) saw_lower_bound = saw_lower_bound || r.lower_bound;
        EXPECT_TRUE(saw_lower_bound);
    }
}

TEST(QuasiOrthogonality, OnlyTAndPathAxes)
{
    EXPECT_THROW(check_quasi_orthogonality(generic_grid(), 2, Axis::lambda), DomainError);
}

TEST(OneParameterFamily, PathIdentities)
{
    const auto g = build_grid(Params::parse("0.5", "1.5", "0.5", "0.5"), 3, ctx60(), {Axis::path});
    for (int n = 0; n <= 2; ++n) EXPECT_TRUE(passes(check_section4(g, n)));
}

TEST(OneParameterFamily, Endpoints)
{
    EXPECT_TRUE(passes(check_section4_endpoints(Real(0), Real(1), 3, ctx60(), pow10(-30))));
}

TEST(Reconstruction, LambdaIntegral)
{
    const std::vector<Real> xs{Real("0.5"), Real(2)};
    EXPECT_TRUE(passes(check_thm4_lambda(Params::parse("0.5", "1.5", "1", "1"), 2, xs, ctx60())));
}

TEST(Reconstruction, TIntegral)
{
    const std::vector<Real> xs{Real("0.5"), Real(2)};
    EXPECT_TRUE(passes(check_thm4_t(Params::parse("0.5", "1.5", "1", "1"), 2, xs, ctx60())));
}

TEST(Reconstruction, FewerPointsAreLessAccurate)
{
    const std::vector<Real> xs{Real(1)};
    ReconstructionOptions coarse;
    coarse.points = 4;
    coarse.rel_tol = 1e-30;
    const auto rep = check_thm4_t(Params::parse("0.5", "1.5", "1", "1"), 1, xs, ctx60(), coarse);
    EXPECT_FALSE(rep.pass());
}
