#ifndef RHOPOLY_TEST_SUPPORT_HPP
#define RHOPOLY_TEST_SUPPORT_HPP

#include "rhopoly/real.hpp"

#include <gtest/gtest.h>

#include <string>

namespace rhopoly::test {

inline ::testing::AssertionResult near(const Real& a, const Real& b, const Real& tol)
{
    const Real diff = abs(a - b);
    if (diff <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << a.to_string(25) << " vs " << b.to_string(25) << ": |diff| "
                                         << diff.to_string(4) << " > " << tol.to_string(4);
}

inline ::testing::AssertionResult rel_near(const Real& a, const Real& b, const Real& rel)
{
    return near(a, b, rel * max(abs(a), abs(b)));
}

inline ::testing::AssertionResult below(const Real& value, const Real& bound)
{
    if (abs(value) <= bound) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << abs(value).to_string(4) << " > " << bound.to_string(4);
}

} // namespace rhopoly::test

#endif
