#ifndef RHOPOLY_IO_HPP
#define RHOPOLY_IO_HPP

// JSON and CSV serialization. Every number is a decimal string at the run's
// working digits; object keys keep insertion order.

#include "rhopoly/opoly.hpp"
#include "rhopoly/report.hpp"
#include "rhopoly/suites.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace rhopoly {

using Json = nlohmann::ordered_json;

inline std::string decimal(const Real& x, int digits) { return x.to_string(digits); }

/// Shortest round-trip form of a double.
inline std::string decimal(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline Json to_json(const RunConfig& c)
{
    Json j;
    j["alpha"] = c.alpha;
    j["nu"] = c.nu;
    j["lambda"] = c.lambda;
    j["t"] = c.t;
    j["N"] = c.N;
    j["n"] = c.n;
    j["digits"] = c.digits;
    j["tol"] = decimal(c.context().tol);
    j["suite"] = c.suite;
    return j;
}

inline Json to_json(const Params& p, int digits)
{
    Json j;
    j["alpha"] = decimal(p.alpha, digits);
    j["nu"] = decimal(p.nu, digits);
    j["lambda"] = decimal(p.lambda, digits);
    j["t"] = decimal(p.t, digits);
    return j;
}

inline Json to_json(const Residual& r, int digits)
{
    Json j;
    j["identity"] = r.identity;
    j["n"] = r.n;
    if (r.m) j["m"] = *r.m;
    if (r.skipped) {
        j["skipped"] = true;
    } else {
        j["value"] = decimal(r.value, digits);
        j["tol"] = decimal(r.tol, digits);
        if (r.lower_bound) j["lower_bound"] = true;
    }
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json to_json(const IdentityReport& rep, int digits)
{
    Json j;
    j["id"] = rep.id;
    j["params"] = to_json(rep.params, digits);
    j["degrees"] = rep.degrees();
    j["pass"] = rep.pass();
    Json rs = Json::array();
    for (const auto& r : rep.residuals) rs.push_back(to_json(r, digits));
    j["residuals"] = std::move(rs);
    return j;
}

inline Json verification_report(const RunConfig& cfg, const std::vector<IdentityReport>& reports)
{
    Json j;
    j["config"] = to_json(cfg);
    bool pass = true;
    Json suites = Json::array();
    for (const auto& r : reports) {
        suites.push_back(to_json(r, cfg.digits));
        pass = pass && r.pass();
    }
    j["pass"] = pass;
    j["suites"] = std::move(suites);
    return j;
}

namespace detail {

inline Json decimals(const std::vector<Real>& v, int digits)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(decimal(x, digits));
    return a;
}

} // namespace detail

inline Json to_json(const RecurrenceTable& T, double tol)
{
    const int d = T.digits;
    Json j;
    j["params"] = to_json(T.params, d);
    j["N"] = T.N;
    j["digits"] = d;
    j["tol"] = decimal(tol);
    j["moment_source"] = to_string(T.moments.source);
    j["mu"] = detail::decimals(T.moments.mu, d);
    j["a"] = detail::decimals(T.a, d);
    j["b"] = detail::decimals(T.b, d);
    j["d"] = detail::decimals(T.d, d);
    j["A"] = detail::decimals(T.A, d);
    j["B"] = detail::decimals(T.B, d);
    Json coeffs = Json::array();
    for (const auto& row : T.coeffs) coeffs.push_back(detail::decimals(row, d));
    j["coefficients"] = std::move(coeffs);
    return j;
}

inline Json to_json(const GaussRule& g, const Params& p)
{
    Json j;
    j["params"] = to_json(p, g.digits);
    j["N"] = g.N;
    j["digits"] = g.digits;
    j["nodes"] = detail::decimals(g.nodes, g.digits);
    j["weights"] = detail::decimals(g.weights, g.digits);
    return j;
}

/// n,a,b,d,A,B per degree; coefficient vectors are JSON-only.
inline void write_csv(std::ostream& os, const RecurrenceTable& T)
{
    const int d = T.digits;
    os << "n,a,b,d,A,B\n";
    for (int n = 0; n <= T.N; ++n)
        os << n << ',' << decimal(T.a[n], d) << ',' << decimal(T.b[n], d) << ',' << decimal(T.d[n], d) << ','
           << decimal(T.A[n], d) << ',' << decimal(T.B[n], d) << '\n';
}

inline void write_csv(std::ostream& os, const GaussRule& g)
{
    os << "k,node,weight\n";
    for (std::size_t k = 0; k < g.nodes.size(); ++k)
        os << k << ',' << decimal(g.nodes[k], g.digits) << ',' << decimal(g.weights[k], g.digits) << '\n';
}

} // namespace rhopoly

#endif // RHOPOLY_IO_HPP
