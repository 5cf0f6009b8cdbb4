#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "vode/errors.hpp"

namespace vode {

enum class RoundingMode {
    /// Every endpoint is the correctly directed rounding of the exact result.
    hardware_directed,
    /// Endpoints are round-to-nearest results pushed outward by one ulp.
    outward_by_one_ulp,
};

struct RoundingContract {
    RoundingMode mode;
};

/// Rounding realization compiled into this build.
RoundingContract rounding_contract() noexcept;

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double next_up(double x) noexcept {
    if (std::isnan(x) || x == kInf) return x;
    if (x == 0.0) return std::numeric_limits<double>::denorm_min();
    auto bits = std::bit_cast<std::uint64_t>(x);
    bits = x > 0 ? bits + 1 : bits - 1;
    return std::bit_cast<double>(bits);
}

inline double next_down(double x) noexcept { return -next_up(-x); }

// Error-free transformations give the sign of the rounding error of a
// round-to-nearest result, which is all that is needed to round in a
// chosen direction. Outside this magnitude band the residual may itself
// be inexact, so we fall back to a one-ulp step.
inline bool residual_exact(double x) noexcept {
    const double a = std::fabs(x);
    return a > 0x1p-960 && a < 0x1p960;
}

#if defined(VODE_ROUNDING_OUTWARD_ULP)

inline double add_down(double a, double b) noexcept { return next_down(a + b); }
inline double add_up(double a, double b) noexcept { return next_up(a + b); }
inline double mul_down(double a, double b) noexcept {
    if (a == 0.0 || b == 0.0) return 0.0;
    return next_down(a * b);
}
inline double mul_up(double a, double b) noexcept {
    if (a == 0.0 || b == 0.0) return 0.0;
    return next_up(a * b);
}
inline double div_down(double a, double b) noexcept {
    if (a == 0.0) return 0.0;
    return next_down(a / b);
}
inline double div_up(double a, double b) noexcept {
    if (a == 0.0) return 0.0;
    return next_up(a / b);
}
inline double sqrt_down(double a) noexcept { return a == 0.0 ? 0.0 : next_down(std::sqrt(a)); }
inline double sqrt_up(double a) noexcept { return a == 0.0 ? 0.0 : next_up(std::sqrt(a)); }

#else

inline double two_sum_error(double a, double b, double s) noexcept {
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) noexcept {
    const double s = a + b;
    if (!std::isfinite(s)) return s == kInf ? std::numeric_limits<double>::max() : s;
    return two_sum_error(a, b, s) < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) noexcept {
    const double s = a + b;
    if (!std::isfinite(s)) return s == -kInf ? std::numeric_limits<double>::lowest() : s;
    return two_sum_error(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double mul_down(double a, double b) noexcept {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) return p == kInf ? std::numeric_limits<double>::max() : p;
    if (!residual_exact(p)) return next_down(p);
    return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) noexcept {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) return p == -kInf ? std::numeric_limits<double>::lowest() : p;
    if (!residual_exact(p)) return next_up(p);
    return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// For q = fl(a/b) the residual a - q*b is exact; the true quotient is q + r/b.
inline double div_down(double a, double b) noexcept {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (!std::isfinite(q)) return q == kInf ? std::numeric_limits<double>::max() : q;
    if (!residual_exact(q) || !residual_exact(a) || !residual_exact(b)) return next_down(q);
    const double r = std::fma(-q, b, a);
    const bool below = (r < 0.0) != (b < 0.0) && r != 0.0;
    return below ? next_down(q) : q;
}

inline double div_up(double a, double b) noexcept {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (!std::isfinite(q)) return q == -kInf ? std::numeric_limits<double>::lowest() : q;
    if (!residual_exact(q) || !residual_exact(a) || !residual_exact(b)) return next_up(q);
    const double r = std::fma(-q, b, a);
    const bool above = (r > 0.0) != (b < 0.0) && r != 0.0;
    return above ? next_up(q) : q;
}

inline double sqrt_down(double a) noexcept {
    if (a == 0.0) return 0.0;
    const double s = std::sqrt(a);
    if (!residual_exact(a)) return next_down(s);
    return std::fma(-s, s, a) < 0.0 ? next_down(s) : s;
}

inline double sqrt_up(double a) noexcept {
    if (a == 0.0) return 0.0;
    const double s = std::sqrt(a);
    if (!residual_exact(a)) return next_up(s);
    return std::fma(-s, s, a) > 0.0 ? next_up(s) : s;
}

#endif

inline double sub_down(double a, double b) noexcept { return add_down(a, -b); }
inline double sub_up(double a, double b) noexcept { return add_up(a, -b); }

}  // namespace rounding

/// Closed interval [lo, hi] with binary64 endpoints.
///
/// Every operation returns an interval containing the exact real image of its
/// arguments. The default-constructed interval is the point 0.
class Interval {
public:
    constexpr Interval() noexcept = default;
    constexpr Interval(double x) noexcept : lo_(x), hi_(x) {}  // NOLINT: points convert implicitly
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw DomainError("interval requires lo <= hi and no NaN endpoints");
    }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }

    Interval& operator+=(const Interval& b) noexcept;
    Interval& operator-=(const Interval& b) noexcept;
    Interval& operator*=(const Interval& b) noexcept;
    Interval& operator/=(const Interval& b);

    friend bool operator==(const Interval&, const Interval&) = default;

    /// Builds an interval without the invariant check; callers guarantee lo <= hi.
    static constexpr Interval unchecked(double lo, double hi) noexcept {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    /// The whole real line; only produced on explicit request.
    static Interval entire() noexcept { return unchecked(-rounding::kInf, rounding::kInf); }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline Interval operator-(const Interval& a) noexcept { return Interval::unchecked(-a.hi(), -a.lo()); }

inline Interval operator+(const Interval& a, const Interval& b) noexcept {
    return Interval::unchecked(rounding::add_down(a.lo(), b.lo()), rounding::add_up(a.hi(), b.hi()));
}

inline Interval operator-(const Interval& a, const Interval& b) noexcept {
    return Interval::unchecked(rounding::sub_down(a.lo(), b.hi()), rounding::sub_up(a.hi(), b.lo()));
}

inline Interval operator*(const Interval& a, const Interval& b) noexcept {
    using namespace rounding;
    const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (al >= 0.0) {
        if (bl >= 0.0) return Interval::unchecked(mul_down(al, bl), mul_up(ah, bh));
        if (bh <= 0.0) return Interval::unchecked(mul_down(ah, bl), mul_up(al, bh));
        return Interval::unchecked(mul_down(ah, bl), mul_up(ah, bh));
    }
    if (ah <= 0.0) {
        if (bl >= 0.0) return Interval::unchecked(mul_down(al, bh), mul_up(ah, bl));
        if (bh <= 0.0) return Interval::unchecked(mul_down(ah, bh), mul_up(al, bl));
        return Interval::unchecked(mul_down(al, bh), mul_up(al, bl));
    }
    if (bl >= 0.0) return Interval::unchecked(mul_down(al, bh), mul_up(ah, bh));
    if (bh <= 0.0) return Interval::unchecked(mul_down(ah, bl), mul_up(al, bl));
    return Interval::unchecked(std::min(mul_down(al, bh), mul_down(ah, bl)),
                               std::max(mul_up(al, bl), mul_up(ah, bh)));
}

/// Throws DivisionByZeroInterval when 0 lies in the divisor.
Interval operator/(const Interval& a, const Interval& b);

inline Interval& Interval::operator+=(const Interval& b) noexcept { return *this = *this + b; }
inline Interval& Interval::operator-=(const Interval& b) noexcept { return *this = *this - b; }
inline Interval& Interval::operator*=(const Interval& b) noexcept { return *this = *this * b; }
inline Interval& Interval::operator/=(const Interval& b) { return *this = *this / b; }

/// Dedicated square: sqr([-1,1]) = [0,1].
inline Interval sqr(const Interval& a) noexcept {
    using namespace rounding;
    if (a.lo() >= 0.0) return Interval::unchecked(mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi()));
    if (a.hi() <= 0.0) return Interval::unchecked(mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo()));
    const double m = std::max(-a.lo(), a.hi());
    return Interval::unchecked(0.0, mul_up(m, m));
}

Interval pow_int(const Interval& a, int n);
Interval sqrt(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval abs(const Interval& a) noexcept;

/// Outward enclosure of pi.
Interval pi() noexcept;

// ---- set operations -------------------------------------------------------

inline Interval hull(const Interval& a, const Interval& b) noexcept {
    return Interval::unchecked(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

/// Empty overlap is reported as std::nullopt, never as an inverted interval.
inline std::optional<Interval> intersect(const Interval& a, const Interval& b) noexcept {
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return std::nullopt;
    return Interval::unchecked(lo, hi);
}

/// Like intersect() but throws EmptyIntersection.
Interval intersect_or_throw(const Interval& a, const Interval& b);

/// Representable point inside the interval.
inline double mid(const Interval& a) noexcept {
    if (a.lo() == a.hi()) return a.lo();
    if (std::isinf(a.lo()) || std::isinf(a.hi())) {
        if (std::isinf(a.lo()) && std::isinf(a.hi())) return 0.0;
        return std::isinf(a.lo()) ? std::numeric_limits<double>::lowest() : std::numeric_limits<double>::max();
    }
    const double m = 0.5 * a.lo() + 0.5 * a.hi();
    return std::clamp(m, a.lo(), a.hi());
}

/// Upper bound on hi - lo.
inline double diam(const Interval& a) noexcept { return rounding::sub_up(a.hi(), a.lo()); }

/// Upper bound on the radius around mid(a).
inline double rad(const Interval& a) noexcept {
    const double m = mid(a);
    return std::max(rounding::sub_up(a.hi(), m), rounding::sub_up(m, a.lo()));
}

/// Splits at the midpoint; the two halves share the midpoint.
inline std::pair<Interval, Interval> split(const Interval& a) noexcept {
    const double m = mid(a);
    return {Interval::unchecked(a.lo(), m), Interval::unchecked(m, a.hi())};
}

inline bool contains(const Interval& a, double x) noexcept { return a.lo() <= x && x <= a.hi(); }
inline bool contains(const Interval& a, const Interval& b) noexcept { return a.lo() <= b.lo() && b.hi() <= a.hi(); }
inline bool contains_zero(const Interval& a) noexcept { return a.lo() <= 0.0 && 0.0 <= a.hi(); }
/// b lies in the interior of a.
inline bool interior_contains(const Interval& a, const Interval& b) noexcept {
    return a.lo() < b.lo() && b.hi() < a.hi();
}
inline bool is_point(const Interval& a) noexcept { return a.lo() == a.hi(); }

/// max |x| over the interval.
inline double mag(const Interval& a) noexcept { return std::max(std::fabs(a.lo()), std::fabs(a.hi())); }
/// min |x| over the interval.
inline double mig(const Interval& a) noexcept {
    if (contains_zero(a)) return 0.0;
    return std::min(std::fabs(a.lo()), std::fabs(a.hi()));
}

/// Symmetric interval [-r, r].
inline Interval ball(double r) noexcept { return Interval::unchecked(-r, r); }

/// Widens both endpoints by `r` (rounded outward).
inline Interval widen(const Interval& a, double r) noexcept {
    return Interval::unchecked(rounding::sub_down(a.lo(), r), rounding::add_up(a.hi(), r));
}

// ---- text ------------------------------------------------------------------

/// "[lo, hi]" with 17 significant digits.
std::string to_string(const Interval& a);

/// Parses the "[lo, hi]" form produced by to_string(); endpoints are taken as written.
Interval parse_interval(std::string_view text);

/// Outward enclosure of a decimal literal such as "-8.3809417428298762873487630431".
/// Exactly representable literals give point intervals.
Interval from_decimal(std::string_view literal);

std::ostream& operator<<(std::ostream& os, const Interval& a);

}  // namespace vode
