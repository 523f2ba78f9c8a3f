#include "rhopoly/opoly.hpp"
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

const RecurrenceTable& generic_table()
{
    static const auto t = build_recurrence(Params::parse("0.5", "1.5", "1", "1"), 6, ctx60());
    return t;
}

} // namespace

TEST(Recurrence, Orthonormal)
{
    const auto& T = generic_table();
    EXPECT_TRUE(below(orthonormality_defect(T), pow10(-45)));
    PrecisionScope s(T.digits);
    for (int n = 0; n <= T.N; ++n) {
        EXPECT_TRUE(T.a[n] > 0);
        EXPECT_TRUE(near(T.b_over_a(n) * T.a[n], T.b[n], pow10(-50)));
    }
    EXPECT_TRUE(rel_near(T.a[0], 1 / sqrt(T.moments.mu[0]), pow10(-55)));
}

TEST(Recurrence, ThreeTermRelation)
{
    const auto& T = generic_table();
    for (int n = 0; n < T.N; ++n) EXPECT_TRUE(below(recurrence_residual(T, n), pow10(-40))) << n;
}

TEST(Recurrence, BIsTheFirstMomentOfTheSquare)
{
    const auto& T = generic_table();
    PrecisionScope s(T.digits);
    for (int n = 0; n <= T.N; ++n) EXPECT_TRUE(rel_near(moment_product(T, n, n, 1), T.B[n], pow10(-45)));
}

TEST(Recurrence, LaguerreLimit)
{
    // t = 0: orthonormal Laguerre polynomials of Gamma(nu) x^alpha e^{-lambda x}
    const auto p = Params::parse("0.5", "2", "1.5", "0");
    const auto T = build_recurrence(p, 6, ctx60());
    const auto L = modified_laguerre_table(p, 6, T.digits);
    PrecisionScope s(T.digits);
    for (int n = 0; n <= 6; ++n) {
        for (int k = 0; k <= n; ++k) EXPECT_TRUE(near(T.coeffs[n][k], L[n][k], pow10(-40) * abs(L[n][n]) * 1e6));
        EXPECT_TRUE(rel_near(T.B[n], (2 * n + 1 + p.alpha) / p.lambda, pow10(-45)));
        EXPECT_TRUE(near(T.A[n], sqrt(n * (n + p.alpha)) / p.lambda, pow10(-45)));
    }
}

TEST(Recurrence, LambdaZeroUnitCase)
{
    const auto T = build_recurrence(Params::parse("0", "1", "0", "1"), 3, ctx60());
    PrecisionScope s(T.digits);
    EXPECT_TRUE(rel_near(T.moments.mu[0], Real(1), pow10(-55)));
    EXPECT_TRUE(rel_near(T.a[0], Real(1), pow10(-55)));
    // mu = 1, 2, 12: P_1 = (x - 2) / sqrt(8)
    EXPECT_TRUE(rel_near(T.B[0], Real(2), pow10(-55)));
    EXPECT_TRUE(rel_near(T.a[1], 1 / sqrt(Real(8)), pow10(-55)));
}

TEST(Evaluation, RoutesAgree)
{
    const auto& T = generic_table();
    PrecisionScope s(T.digits);
    for (int n = 0; n <= T.N; ++n)
        for (const char* x : {"0", "0.3", "2", "11"})
            EXPECT_TRUE(near(eval_poly(T, n, Real(x), EvalRoute::recurrence),
                             eval_poly(T, n, Real(x), EvalRoute::coefficients), pow10(-40)));
    EXPECT_THROW(eval_poly(T, T.N + 1, Real(1)), DomainError);
}

TEST(ChristoffelDarboux, SumEqualsQuotient)
{
    const auto& T = generic_table();
    PrecisionScope s(T.digits);
    for (int n = 0; n < T.N; ++n) {
        const auto cd = christoffel_darboux(T, n, Real("0.7"), Real("3.1"));
        EXPECT_FALSE(cd.confluent);
        EXPECT_TRUE(near(cd.sum_form, cd.quotient_form, pow10(-40)));
        const auto conf = christoffel_darboux(T, n, Real("1.2"), Real("1.2"));
        EXPECT_TRUE(conf.confluent);
        EXPECT_TRUE(near(conf.sum_form, conf.quotient_form, pow10(-40)));
    }
    EXPECT_THROW(christoffel_darboux(T, T.N, Real(1), Real(2)), DomainError);
}

TEST(GaussRule, ExactUpToDegreeTwoNMinusOne)
{
    const auto& T = generic_table();
    for (int N : {1, 3, 6}) {
        const auto g = gauss_rule(T, N);
        PrecisionScope s(g.digits);
        ASSERT_EQ(static_cast<int>(g.nodes.size()), N);
        for (int i = 1; i < N; ++i) EXPECT_TRUE(g.nodes[i - 1] < g.nodes[i]);
        for (int k = 0; k <= 2 * N - 1; ++k) {
            Real q(0);
            for (int i = 0; i < N; ++i) q += g.weights[i] * pow(g.nodes[i], k);
            EXPECT_TRUE(rel_near(q, T.moments.mu[k], pow10(-40))) << "N=" << N << " k=" << k;
        }
        for (int i = 0; i < N; ++i) EXPECT_TRUE(below(eval_poly(T, N, g.nodes[i]), pow10(-35)));
    }
    const auto one = gauss_rule(T, 1);
    PrecisionScope s(one.digits);
    EXPECT_TRUE(rel_near(one.nodes[0], T.B[0], pow10(-50)));
    EXPECT_TRUE(rel_near(one.weights[0], T.moments.mu[0], pow10(-50)));
}

TEST(GaussRule, LaguerreNodesAtZeroT)
{
    const auto p = Params::parse("0.5", "1", "2", "0");
    const auto T = build_recurrence(p, 5, ctx60());
    const auto g = gauss_rule(T, 5);
    PrecisionScope s(g.digits);
    Real total(0);
    for (int i = 0; i < 5; ++i) {
        EXPECT_TRUE(below(laguerre(5, p.alpha, p.lambda * g.nodes[i]), pow10(-40)));
        total += g.weights[i];
    }
    EXPECT_TRUE(rel_near(total, tgamma(p.alpha + 1) / pow(p.lambda, p.alpha + 1), pow10(-45)));
}

TEST(Normalization, IntegralsMatchCoefficients)
{
    const auto& T = generic_table();
    PrecisionScope s(T.digits);
    for (int n = 0; n + 2 <= T.N; ++n) {
        const auto r = normalization_integrals(T, n);
        for (int k = 0; k < 3; ++k) EXPECT_TRUE(rel_near(r.computed[k], r.predicted[k], pow10(-40))) << n << ' ' << k;
        const auto q = square_moments(T, n);
        EXPECT_TRUE(rel_near(q.second_moment, q.second_formula, pow10(-40)));
        EXPECT_TRUE(rel_near(q.third_moment, q.third_formula, pow10(-40)));
        EXPECT_TRUE(rel_near(q.d_relation, q.second_formula, pow10(-40)));
    }
    EXPECT_THROW(normalization_integrals(T, T.N - 1), DomainError);
}
