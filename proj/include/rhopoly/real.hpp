#ifndef RHOPOLY_REAL_HPP
#define RHOPOLY_REAL_HPP

// Arbitrary precision real numbers on top of MPFR.
//
// Every Real owns its mpfr_t. Newly created values (including the results of
// arithmetic) take the calling thread's working precision, which is changed
// with a PrecisionScope. There is no process-wide precision state, so threads
// working at different precisions do not interfere.

#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rhopoly {

/// Number of mantissa bits used for `digits` decimal digits (plus guard bits).
inline mpfr_prec_t digits_to_bits(int digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

namespace detail {

inline mpfr_prec_t& working_bits()
{
    thread_local mpfr_prec_t bits = digits_to_bits(120);
    return bits;
}

inline int& working_digits_ref()
{
    thread_local int digits = 120;
    return digits;
}

} // namespace detail

inline int working_digits() { return detail::working_digits_ref(); }
inline mpfr_prec_t working_bits() { return detail::working_bits(); }

/// Sets the thread's working precision for the lifetime of the object.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits)
        : saved_bits_(detail::working_bits()), saved_digits_(detail::working_digits_ref())
    {
        detail::working_bits() = digits_to_bits(digits);
        detail::working_digits_ref() = digits;
    }
    ~PrecisionScope()
    {
        detail::working_bits() = saved_bits_;
        detail::working_digits_ref() = saved_digits_;
    }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_bits_;
    int saved_digits_;
};

class Real {
public:
    Real() { init(); mpfr_set_zero(v_, 1); }
    Real(int x) { init(); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(long x) { init(); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(long long x) { init(); mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN); }
    Real(unsigned x) { init(); mpfr_set_ui(v_, x, MPFR_RNDN); }
    Real(unsigned long x) { init(); mpfr_set_ui(v_, x, MPFR_RNDN); }
    Real(unsigned long long x) { init(); mpfr_set_ui(v_, static_cast<unsigned long>(x), MPFR_RNDN); }
    Real(double x) { init(); mpfr_set_d(v_, x, MPFR_RNDN); }

    /// Parses a decimal literal; throws std::invalid_argument on malformed input.
    explicit Real(std::string_view text)
    {
        init();
        std::string s(text);
        if (s.empty() || mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            mpfr_clear(v_);
            throw std::invalid_argument("not a decimal number: '" + s + "'");
        }
    }
    explicit Real(const char* text) : Real(std::string_view(text)) {}
    explicit Real(const std::string& text) : Real(std::string_view(text)) {}

    Real(const Real& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept
    {
        v_[0] = o.v_[0];
        o.v_[0]._mpfr_d = nullptr;
    }
    Real& operator=(const Real& o)
    {
        if (this != &o) {
            if (v_[0]._mpfr_d == nullptr)
                mpfr_init2(v_, mpfr_get_prec(o.v_));
            else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
                mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept
    {
        std::swap(v_[0], o.v_[0]);
        return *this;
    }
    ~Real()
    {
        if (v_[0]._mpfr_d != nullptr)
            mpfr_clear(v_);
    }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }
    mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant digits, e.g. "1.50000e+00".
    std::string to_string(int digits) const
    {
        if (digits < 1) digits = 1;
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    Real operator-() const
    {
        Real r;
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Real& x)
    {
        return os << x.to_string(static_cast<int>(os.precision()));
    }

private:
    void init() { mpfr_init2(v_, detail::working_bits()); }

    mpfr_t v_;
};

namespace detail {

template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
inline Real unary(const Real& x)
{
    Real r;
    Fn(r.get(), x.get(), MPFR_RNDN);
    return r;
}

} // namespace detail

inline Real exp(const Real& x) { return detail::unary<mpfr_exp>(x); }
inline Real log(const Real& x) { return detail::unary<mpfr_log>(x); }
inline Real log1p(const Real& x) { return detail::unary<mpfr_log1p>(x); }
inline Real expm1(const Real& x) { return detail::unary<mpfr_expm1>(x); }
inline Real sqrt(const Real& x) { return detail::unary<mpfr_sqrt>(x); }
inline Real sinh(const Real& x) { return detail::unary<mpfr_sinh>(x); }
inline Real cosh(const Real& x) { return detail::unary<mpfr_cosh>(x); }
inline Real sin(const Real& x) { return detail::unary<mpfr_sin>(x); }
inline Real cos(const Real& x) { return detail::unary<mpfr_cos>(x); }
inline Real abs(const Real& x) { return detail::unary<mpfr_abs>(x); }
inline Real fabs(const Real& x) { return abs(x); }
inline Real tgamma(const Real& x) { return detail::unary<mpfr_gamma>(x); }

inline Real lgamma(const Real& x)
{
    Real r;
    int sign = 0;
    mpfr_lgamma(r.get(), &sign, x.get(), MPFR_RNDN);
    return r;
}

inline Real pow(const Real& x, const Real& y)
{
    Real r;
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

inline Real pow(const Real& x, long n)
{
    Real r;
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

inline Real pow(const Real& x, int n) { return pow(x, static_cast<long>(n)); }

inline Real floor(const Real& x)
{
    Real r;
    mpfr_floor(r.get(), x.get());
    return r;
}

inline Real ldexp(const Real& x, long e)
{
    Real r;
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

inline Real pi()
{
    Real r;
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

/// 10^e at working precision.
inline Real pow10(long e) { return pow(Real(10), e); }

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

inline bool isfinite(const Real& x) { return mpfr_number_p(x.get()) != 0; }
inline bool isnan(const Real& x) { return mpfr_nan_p(x.get()) != 0; }
inline bool is_zero(const Real& x) { return mpfr_zero_p(x.get()) != 0; }
inline bool is_integer(const Real& x) { return mpfr_integer_p(x.get()) != 0; }
inline int sign(const Real& x) { return mpfr_sgn(x.get()); }

inline Real sqr(const Real& x) { return x * x; }

} // namespace rhopoly

#endif // RHOPOLY_REAL_HPP
