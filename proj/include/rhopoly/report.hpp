#ifndef RHOPOLY_REPORT_HPP
#define RHOPOLY_REPORT_HPP

// Residual records produced by the identity checks.

#include "rhopoly/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rhopoly {

/// One checked instance of an identity. Normally pass <=> value <= tol; with
/// lower_bound set the check asserts value >= tol instead (a quantity that must
/// be distinctly nonzero).
struct Residual {
    std::string identity;
    int n = 0;
    std::optional<int> m;
    Real value;
    Real tol;
    bool pass = false;
    bool lower_bound = false;
    bool skipped = false;
    std::string note;
};

inline Residual make_residual(std::string identity, int n, std::optional<int> m, const Real& value,
                              const Real& tol, std::string note = {})
{
    Residual r;
    r.identity = std::move(identity);
    r.n = n;
    r.m = m;
    r.value = abs(value);
    r.tol = tol;
    r.pass = isfinite(r.value) && r.value <= tol;
    r.note = std::move(note);
    return r;
}

inline Residual make_lower_bound(std::string identity, int n, std::optional<int> m, const Real& value,
                                 const Real& threshold, std::string note = {})
{
    Residual r = make_residual(std::move(identity), n, m, value, threshold, std::move(note));
    r.lower_bound = true;
    r.pass = isfinite(r.value) && r.value >= threshold;
    return r;
}

inline Residual make_skipped(std::string identity, int n, std::string note)
{
    Residual r;
    r.identity = std::move(identity);
    r.n = n;
    r.skipped = true;
    r.pass = true;
    r.note = std::move(note);
    return r;
}

struct IdentityReport {
    std::string id;
    Params params;
    std::vector<Residual> residuals;

    bool pass() const
    {
        for (const auto& r : residuals)
            if (!r.pass) return false;
        return true;
    }

    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& r : residuals)
            if (out.empty() || out.back() != r.n) out.push_back(r.n);
        return out;
    }

    /// Largest value/tol over the non-skipped upper-bound residuals.
    double worst_ratio() const
    {
        double worst = 0;
        for (const auto& r : residuals) {
            if (r.skipped || r.lower_bound || is_zero(r.tol)) continue;
            worst = std::max(worst, (r.value / r.tol).to_double());
        }
        return worst;
    }

    void append(const IdentityReport& other)
    {
        residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
    }
};

} // namespace rhopoly

#endif // RHOPOLY_REPORT_HPP
