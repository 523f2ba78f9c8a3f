#include "rhopoly/numerics.hpp"
#include "support.hpp"

#include <cmath>

using namespace rhopoly;
using test::below;
using test::near;
using test::rel_near;

TEST(Real, PrecisionScopeIsRestored)
{
    const int before = working_digits();
    {
        PrecisionScope s(200);
        EXPECT_EQ(working_digits(), 200);
        {
            PrecisionScope inner(40);
            EXPECT_EQ(working_digits(), 40);
        }
        EXPECT_EQ(working_digits(), 200);
    }
    EXPECT_EQ(working_digits(), before);
}

TEST(Real, ParsesDecimalStrings)
{
    PrecisionScope s(60);
    EXPECT_TRUE(near(Real("0.1") * 10, Real(1), pow10(-58)));
    EXPECT_THROW(Real("abc"), std::invalid_argument);
    EXPECT_EQ(Real("2.5").to_string(3), "2.50e+00");
}

TEST(Real, HighPrecisionIsReal)
{
    PrecisionScope s(100);
    // 1 + 10^-80 - 1 survives only with > 80 digits
    EXPECT_TRUE(near((1 + pow10(-80)) - 1, pow10(-80), pow10(-95)));
}

TEST(PrecisionContext, Validates)
{
    EXPECT_NO_THROW(PrecisionContext::make(30));
    EXPECT_THROW(PrecisionContext::make(29), DomainError);
    EXPECT_THROW(PrecisionContext::make(50, 1e-45), DomainError);
    EXPECT_THROW(PrecisionContext::make(120, {}, 301), DomainError);
    const auto c = PrecisionContext::make(100);
    EXPECT_EQ(c.escalated().digits, 200);
    EXPECT_EQ(c.escalated().escalated().digits, 240);
    EXPECT_FALSE(c.escalated().escalated().can_escalate());
}

TEST(Params, DomainRules)
{
    EXPECT_NO_THROW(Params::parse("0.5", "1.5", "1", "1"));
    EXPECT_THROW(Params::parse("-1", "1", "1", "1"), DomainError);
    EXPECT_THROW(Params::parse("0", "-0.5", "1", "1"), DomainError);
    EXPECT_THROW(Params::parse("0", "1", "0", "0"), DomainError);
    EXPECT_THROW(Params::parse("0", "0", "1", "0"), DomainError);
    EXPECT_NO_THROW(Params::parse("0", "0", "1", "1"));
}

TEST(Gamma, ValuesAndPoles)
{
    const auto ctx = PrecisionContext::make(60);
    PrecisionScope s(60);
    EXPECT_TRUE(rel_near(gamma_fn(Real(1) / 2, ctx), sqrt(pi()), pow10(-58)));
    EXPECT_TRUE(rel_near(gamma_fn(Real(7), ctx), Real(720), pow10(-58)));
    EXPECT_THROW(gamma_fn(Real(-2), ctx), DomainError);
    EXPECT_TRUE(rel_near(log_gamma(Real(101), ctx), log(factorial(100)), pow10(-58)));
    EXPECT_TRUE(rel_near(pochhammer(Real(1) / 2, 3), Real(15) / 8, pow10(-58)));
}

TEST(Quadrature, GammaIntegralsAtHighPrecision)
{
    PrecisionScope s(120);
    for (const char* a : {"0.5", "1", "3.25"}) {
        const Real p(a);
        auto f = [&](const Real& x, const Real& lx) { return exp((p - 1) * lx - x); };
        auto r = integrate_semiline<Real>(f, pow10(-110));
        EXPECT_TRUE(rel_near(r.value, tgamma(p), pow10(-108))) << "a = " << a;
    }
}

TEST(Quadrature, AlgebraicTail)
{
    PrecisionScope s(60);
    // int_0^inf dx / (1 + x)^2 = 1
    auto f = [](const Real& x) { return 1 / sqr(1 + x); };
    EXPECT_TRUE(rel_near(integrate_semiline<Real>(f, pow10(-50)).value, Real(1), pow10(-48)));
}

TEST(Quadrature, DoublePrecision)
{
    auto f = [](double x) { return std::exp(-x) * std::sqrt(x); };
    const auto r = integrate_semiline<double>(f, 1e-12);
    EXPECT_NEAR(r.value, std::tgamma(1.5), 1e-12);
}

TEST(Quadrature, NestedUseKeepsNodesValid)
{
    PrecisionScope s(40);
    // int_0^inf e^{-x} (int_0^inf e^{-x y} e^{-y} dy) dx = int e^{-x}/(1+x) dx = e E_1(1)
    auto inner = [](const Real& x) {
        auto g = [&](const Real& y) { return exp(-x * y - y); };
        return integrate_semiline<Real>(g, pow10(-35)).value;
    };
    auto outer = [&](const Real& x) { return x > 100 ? Real(0) : exp(-x) * inner(x); };
    const double expected = std::exp(1.0) * -std::expint(-1.0);
    EXPECT_NEAR(integrate_semiline<Real>(outer, pow10(-30)).value.to_double(), expected, 1e-14);
}

TEST(Quadrature, LineTrapezoidTwoScales)
{
    PrecisionScope s(60);
    // int_R exp(w - 1e-20 e^w) dw = 1e20
    const Real z = pow10(-20);
    auto g = [&](const Real& w) { return exp(w - z * exp(w)); };
    EXPECT_TRUE(rel_near(integrate_line_trapezoid(g, Real(0), pow10(-50)), 1 / z, pow10(-48)));
}

TEST(GaussLegendre, ExactForPolynomials)
{
    PrecisionScope s(60);
    const auto& gl = gauss_legendre(10);
    for (int k = 0; k < 20; ++k) {
        Real sum(0);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            sum += gl.weights[i] * pow(gl.nodes[i], k);
        const Real exact = k % 2 ? Real(0) : Real(2) / (k + 1);
        EXPECT_TRUE(near(sum, exact, pow10(-55))) << "k = " << k;
    }
}

TEST(GradedRule, SquareRootSingularity)
{
    PrecisionScope s(40);
    auto error = [](int points) {
        const auto rule = graded_rule(Real(0), Real(1), points, 40);
        Real sum(0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * sqrt(rule.nodes[i]);
        return abs(sum - Real(2) / 3);
    };
    // panels of ratio 1/4 see the singularity at distance ~ 3x their half width
    const Real e12 = error(12), e24 = error(24);
    EXPECT_TRUE(below(e12, pow10(-11)));
    EXPECT_TRUE(below(e24, pow10(-21)));
    EXPECT_TRUE(below(e24, e12 * pow10(-8)));
}

TEST(GradedRule, CumulativeIntegral)
{
    PrecisionScope s(40);
    const auto rule = graded_rule(Real(0), Real(2), 20, 6);
    std::vector<Real> v;
    for (const auto& x : rule.nodes) v.push_back(exp(x));
    const auto c = cumulative_integral(rule, v);
    for (std::size_t i = 0; i < c.size(); i += 7)
        EXPECT_TRUE(near(c[i], expm1(rule.nodes[i]), pow10(-18)));
}

TEST(FiniteDifference, RichardsonAndOrders)
{
    const auto ctx = PrecisionContext::make(90);
    PrecisionScope s(90);
    auto e = [](const Real& x) { return exp(x); };
    auto cube = [](const Real& x) { return x * x * x; };
    const Real x = Real(1) / 3;
    for (int order = 1; order <= 3; ++order) {
        const auto d = finite_difference(e, x, order, ctx);
        EXPECT_TRUE(below(d.value - exp(x), max(d.err_estimate, pow10(-40)))) << "order " << order;
    }
    EXPECT_TRUE(near(finite_difference(cube, x, 1, ctx).value, 3 * x * x, pow10(-50)));
    EXPECT_TRUE(near(finite_difference(cube, x, 3, ctx).value, Real(6), pow10(-30)));
}

TEST(FiniteDifference, UncorrectedCentralErrorQuartersWithHalvedStep)
{
    PrecisionScope s(60);
    auto central = [](const Real& x, const Real& h) { return (exp(x + h) - exp(x - h)) / (2 * h); };
    const Real x = Real(1) / 2, h = pow10(-4);
    const Real e1 = abs(central(x, h) - exp(x));
    const Real e2 = abs(central(x, h / 2) - exp(x));
    const double ratio = (e1 / e2).to_double();
    EXPECT_NEAR(ratio, 4.0, 0.01);
    auto cube = [](const Real& y) { return y * y * y; };
    auto central_cube = [&](const Real& y, const Real& hh) { return (cube(y + hh) - cube(y - hh)) / (2 * hh); };
    // error is exactly h^2 for x^3
    EXPECT_TRUE(near(central_cube(x, h) - 3 * x * x, h * h, pow10(-50)));
}

TEST(FiniteDifference, OneSidedAtBoundary)
{
    const auto ctx = PrecisionContext::make(60);
    PrecisionScope s(60);
    auto f = [](const Real& x) { return sqrt(x + 1); };
    const auto d = finite_difference(f, Real(0), 1, ctx, std::nullopt, Real(0));
    EXPECT_TRUE(d.one_sided);
    EXPECT_TRUE(near(d.value, Real(1) / 2, pow10(-20)));
}
