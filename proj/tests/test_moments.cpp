#include "rhopoly/moments.hpp"
#include "support.hpp"

using namespace rhopoly;
using test::below;
using test::rel_near;

TEST(AuxIntegral, MatchesQuadrature)
{
    const auto ctx = PrecisionContext::make(50);
    PrecisionScope s(50);
    const Real lambda(2), t("0.5");
    for (const auto& [c, d] : {std::pair{"2.5", "1.5"}, std::pair{"4", "3.5"}, std::pair{"1.25", "4"}}) {
        const Real cc(c), dd(d);
        auto f = [&](const Real& u, const Real& log_u) {
            return exp((cc - 1) * log_u - u - dd * log(lambda * u + t));
        };
        const Real q = integrate_semiline<Real>(f, pow10(-45)).value;
        EXPECT_TRUE(rel_near(aux_integral(cc, dd, lambda, t, ctx), q, pow10(-42))) << c << ' ' << d;
    }
}

TEST(AuxIntegral, Limits)
{
    const auto ctx = PrecisionContext::make(50);
    PrecisionScope s(50);
    const Real c("3.5"), d("1.5");
    EXPECT_TRUE(rel_near(aux_integral(c, d, Real(0), Real(2), ctx), tgamma(c) / pow(Real(2), d), pow10(-48)));
    EXPECT_TRUE(rel_near(aux_integral(c, d, Real(3), Real(0), ctx), tgamma(c - d) / pow(Real(3), d), pow10(-48)));
    // continuity into both limits
    EXPECT_TRUE(rel_near(aux_integral(c, d, pow10(-30), Real(2), ctx), tgamma(c) / pow(Real(2), d), pow10(-25)));
    EXPECT_TRUE(rel_near(aux_integral(c, d, Real(3), pow10(-30), ctx), tgamma(c - d) / pow(Real(3), d), pow10(-25)));
    EXPECT_THROW(aux_integral(Real(0), d, Real(1), Real(1), ctx), DomainError);
    EXPECT_THROW(aux_integral(c, d, Real(0), Real(0), ctx), DomainError);
    EXPECT_THROW(aux_integral(Real(1), Real(2), Real(1), Real(0), ctx), DomainError);
}

TEST(Moments, ClosedFormAgainstQuadrature)
{
    const auto ctx = PrecisionContext::make(40, 1e-30);
    PrecisionScope s(40);
    for (const auto& p : {Params::parse("0.5", "1.5", "1", "1"), Params::parse("0", "0.25", "2", "0.5")})
        for (int n : {0, 1, 3}) {
            EXPECT_TRUE(rel_near(moment_closed_form(n, p, ctx), moment_quadrature(n, p, ctx), pow10(-27)))
                << p.describe() << " n=" << n;
        }
}

TEST(Moments, LambdaZeroGammaProduct)
{
    const auto ctx = PrecisionContext::make(60);
    PrecisionScope s(60);
    const auto p = Params::parse("0.5", "1.5", "0", "2");
    for (int n = 0; n <= 10; ++n) {
        const Real e = tgamma(p.alpha + n + 1) * tgamma(p.alpha + p.nu + n + 1) / pow(p.t, p.alpha + n + 1);
        EXPECT_TRUE(rel_near(moment(n, p, ctx), e, pow10(-55)));
    }
    const auto unit = Params::parse("0", "1", "0", "1");
    EXPECT_TRUE(rel_near(moment(0, unit, ctx), Real(1), pow10(-58)));
    EXPECT_TRUE(rel_near(moment(3, unit, ctx), Real(144), pow10(-58)));
}

TEST(Moments, TZeroGammaProduct)
{
    const auto ctx = PrecisionContext::make(60);
    PrecisionScope s(60);
    const auto p = Params::parse("1", "2", "0.5", "0");
    for (int n = 0; n <= 6; ++n)
        EXPECT_TRUE(rel_near(moment(n, p, ctx), factorial(n + 1) * pow(Real(2), n + 2), pow10(-55)));
    EXPECT_TRUE(rel_near(moment(2, p, ctx), moment_quadrature(2, p, ctx), pow10(-45)));
}

TEST(Moments, ContinuousNearTheLimits)
{
    const auto ctx = PrecisionContext::make(60);
    PrecisionScope s(60);
    const auto p = Params::parse("0.5", "1.5", "1", "1");
    const auto lam0 = p.with_lambda(Real(0));
    const auto t0 = p.with_t(Real(0));
    EXPECT_TRUE(rel_near(moment(2, p.with_lambda(pow10(-25)), ctx), moment(2, lam0, ctx), pow10(-20)));
    EXPECT_TRUE(rel_near(moment(2, p.with_t(pow10(-25)), ctx), moment(2, t0, ctx), pow10(-20)));
}

TEST(MomentTable, SourcesAndBounds)
{
    const auto ctx = PrecisionContext::make(50);
    const auto p = Params::parse("0.5", "1.5", "1", "1");
    const auto t = build_moment_table(p, 4, ctx);
    EXPECT_EQ(t.mu.size(), 10u);
    EXPECT_EQ(t.source, MomentSource::closed_form);
    EXPECT_EQ(build_moment_table(p.with_lambda(Real(0)), 2, ctx).source, MomentSource::mellin_lambda0);
    EXPECT_EQ(build_moment_table(p.with_t(Real(0)), 2, ctx).source, MomentSource::gamma_t0);
    EXPECT_THROW(build_moment_table(p, -1, ctx), DomainError);
    EXPECT_THROW(build_moment_table(p, 25, ctx), DomainError);
    for (std::size_t k = 1; k < t.mu.size(); ++k) EXPECT_TRUE(t.mu[k] > 0);
}
