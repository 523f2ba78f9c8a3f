// Builds the recurrence table at one parameter point, prints the recurrence
// coefficients, a Gauss rule and a couple of kernel values.

#include "rhopoly/opoly.hpp"

#include <iostream>

int main()
{
    using namespace rhopoly;
    const auto ctx = PrecisionContext::make(50);
    PrecisionScope scope(ctx.digits);

    const auto p = Params::make(Real(1) / 2, Real(3) / 2, Real(1), Real(1));
    const auto table = build_recurrence(p, 6, ctx);

    std::cout << "weight x^alpha e^{-lambda x} rho_nu(x t) at " << p.describe() << "\n\n";
    std::cout << " n  B_n                         A_n\n";
    for (int n = 0; n <= table.N; ++n)
        std::cout << ' ' << n << "  " << table.B[n].to_string(24) << "  " << table.A[n].to_string(24) << '\n';

    const auto rule = gauss_rule(table, 4);
    std::cout << "\n4-point Gauss rule\n";
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        std::cout << "  x = " << rule.nodes[k].to_string(20) << "   w = " << rule.weights[k].to_string(20) << '\n';

    std::cout << "\nrho_{1/2}(1) = " << rho_eval(Real(1) / 2, Real(1), ctx).to_string(30) << '\n';
    std::cout << "sqrt(pi)/e^2 = " << (sqrt(pi()) * exp(Real(-2))).to_string(30) << '\n';
    std::cout << "orthonormality defect: " << orthonormality_defect(table).to_string(3) << '\n';
}
