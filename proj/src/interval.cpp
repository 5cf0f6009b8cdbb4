#include "vode/interval.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace vode {

RoundingContract rounding_contract() noexcept {
#if defined(VODE_ROUNDING_OUTWARD_ULP)
    return {RoundingMode::outward_by_one_ulp};
#else
    return {RoundingMode::hardware_directed};
#endif
}

Interval operator/(const Interval& a, const Interval& b) {
    using namespace rounding;
    if (contains_zero(b)) throw DivisionByZeroInterval("divisor " + to_string(b) + " contains zero");
    const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (bl > 0.0) {
        if (al >= 0.0) return Interval::unchecked(div_down(al, bh), div_up(ah, bl));
        if (ah <= 0.0) return Interval::unchecked(div_down(al, bl), div_up(ah, bh));
        return Interval::unchecked(div_down(al, bl), div_up(ah, bl));
    }
    if (al >= 0.0) return Interval::unchecked(div_down(ah, bh), div_up(al, bl));
    if (ah <= 0.0) return Interval::unchecked(div_down(ah, bl), div_up(al, bh));
    return Interval::unchecked(div_down(ah, bh), div_up(al, bh));
}

namespace {

// x^n for x >= 0 by repeated squaring of point intervals.
Interval pow_nonneg_point(double x, int n) {
    Interval base(x);
    Interval acc(1.0);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = sqr(base);
    }
    return acc;
}

// Enclosure of x^n for a point x of either sign.
Interval pow_point(double x, int n) {
    Interval r = pow_nonneg_point(std::fabs(x), n);
    if (x < 0.0 && (n & 1)) r = -r;
    return r;
}

// libm results are trusted to within one ulp; two ulps of widening covers that.
constexpr int kLibmUlps = 2;

double down_ulps(double x, int k) {
    for (int i = 0; i < k; ++i) x = rounding::next_down(x);
    return x;
}

double up_ulps(double x, int k) {
    for (int i = 0; i < k; ++i) x = rounding::next_up(x);
    return x;
}

Interval libm_point(double v) { return Interval::unchecked(down_ulps(v, kLibmUlps), up_ulps(v, kLibmUlps)); }

Interval clamp_unit(const Interval& a) {
    return Interval::unchecked(std::max(a.lo(), -1.0), std::min(a.hi(), 1.0));
}

Interval sin_point(double x) {
    if (x == 0.0) return Interval(0.0);
    return clamp_unit(libm_point(std::sin(x)));
}

Interval cos_point(double x) {
    if (x == 0.0) return Interval(1.0);
    return clamp_unit(libm_point(std::cos(x)));
}

// Integers k that may satisfy x = offset + k*pi for some x in a.
// Returns false when the range is too large to enumerate.
bool critical_indices(const Interval& a, const Interval& offset, double& kmin, double& kmax) {
    const Interval u = (a - offset) / pi();
    kmin = std::ceil(u.lo());
    kmax = std::floor(u.hi());
    return kmax - kmin < 4.0;
}

bool is_even(double k) { return std::fmod(k, 2.0) == 0.0; }

}  // namespace

Interval pow_int(const Interval& a, int n) {
    if (n < 0) throw DomainError("pow_int requires a nonnegative exponent");
    if (n == 0) return Interval(1.0);
    if (n == 1) return a;
    if (n == 2) return sqr(a);
    if (n & 1) {
        // Odd powers are monotone increasing.
        return Interval::unchecked(pow_point(a.lo(), n).lo(), pow_point(a.hi(), n).hi());
    }
    const Interval m = abs(a);
    return Interval::unchecked(pow_nonneg_point(m.lo(), n).lo(), pow_nonneg_point(m.hi(), n).hi());
}

Interval sqrt(const Interval& a) {
    if (a.lo() < 0.0) throw DomainError("sqrt of " + to_string(a));
    return Interval::unchecked(rounding::sqrt_down(a.lo()), rounding::sqrt_up(a.hi()));
}

Interval sin(const Interval& a) {
    if (!std::isfinite(a.lo()) || !std::isfinite(a.hi())) return Interval::unchecked(-1.0, 1.0);
    if (is_point(a)) return sin_point(a.lo());
    if (diam(a) >= 2.0 * 3.14159265358979) return Interval::unchecked(-1.0, 1.0);
    // Extrema of sin sit at pi/2 + k*pi: maxima for even k, minima for odd k.
    double kmin = 0, kmax = 0;
    if (!critical_indices(a, pi() * Interval(0.5), kmin, kmax)) return Interval::unchecked(-1.0, 1.0);
    Interval r = hull(sin_point(a.lo()), sin_point(a.hi()));
    for (double k = kmin; k <= kmax; k += 1.0) r = hull(r, Interval(is_even(k) ? 1.0 : -1.0));
    return clamp_unit(r);
}

Interval cos(const Interval& a) {
    if (!std::isfinite(a.lo()) || !std::isfinite(a.hi())) return Interval::unchecked(-1.0, 1.0);
    if (is_point(a)) return cos_point(a.lo());
    if (diam(a) >= 2.0 * 3.14159265358979) return Interval::unchecked(-1.0, 1.0);
    double kmin = 0, kmax = 0;
    if (!critical_indices(a, Interval(0.0), kmin, kmax)) return Interval::unchecked(-1.0, 1.0);
    Interval r = hull(cos_point(a.lo()), cos_point(a.hi()));
    for (double k = kmin; k <= kmax; k += 1.0) r = hull(r, Interval(is_even(k) ? 1.0 : -1.0));
    return clamp_unit(r);
}

Interval exp(const Interval& a) {
    auto lo_of = [](double x) {
        if (x == 0.0) return 1.0;
        if (x == -rounding::kInf) return 0.0;
        return std::max(0.0, down_ulps(std::exp(x), kLibmUlps));
    };
    auto hi_of = [](double x) {
        if (x == 0.0) return 1.0;
        const double v = std::exp(x);
        return std::isinf(v) ? v : up_ulps(v, kLibmUlps);
    };
    return Interval::unchecked(lo_of(a.lo()), hi_of(a.hi()));
}

Interval log(const Interval& a) {
    if (!(a.lo() > 0.0)) throw DomainError("log of " + to_string(a));
    auto lo_of = [](double x) { return x == 1.0 ? 0.0 : down_ulps(std::log(x), kLibmUlps); };
    auto hi_of = [](double x) {
        if (x == 1.0) return 0.0;
        const double v = std::log(x);
        return std::isinf(v) ? v : up_ulps(v, kLibmUlps);
    };
    return Interval::unchecked(lo_of(a.lo()), hi_of(a.hi()));
}

Interval abs(const Interval& a) noexcept {
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return -a;
    return Interval::unchecked(0.0, std::max(-a.lo(), a.hi()));
}

Interval pi() noexcept {
    // 0x1.921fb54442d18p+1 is the double just below pi.
    constexpr double below = 0x1.921fb54442d18p+1;
    return Interval::unchecked(below, rounding::next_up(below));
}

Interval intersect_or_throw(const Interval& a, const Interval& b) {
    auto r = intersect(a, b);
    if (!r) throw EmptyIntersection("empty intersection of " + to_string(a) + " and " + to_string(b));
    return *r;
}

std::string to_string(const Interval& a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo(), a.hi());
    return buf;
}

std::ostream& operator<<(std::ostream& os, const Interval& a) { return os << to_string(a); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double_exact(std::string_view text) {
    const std::string s(trim(text));
    if (s.empty()) throw ParseError("empty number");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ParseError("malformed number '" + s + "'");
    return v;
}

}  // namespace

Interval parse_interval(std::string_view text) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw ParseError("interval must have the form [lo, hi]");
    const auto body = text.substr(1, text.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("interval must have the form [lo, hi]");
    const double lo = parse_double_exact(body.substr(0, comma));
    const double hi = parse_double_exact(body.substr(comma + 1));
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw ParseError("interval endpoints out of order");
    return Interval::unchecked(lo, hi);
}

Interval from_decimal(std::string_view literal) {
    const std::string_view s = trim(literal);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';

    std::string digits;
    long long exponent = 0;
    bool seen_point = false, any_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            any_digit = true;
            digits.push_back(c);
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw ParseError("malformed decimal literal '" + std::string(s) + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        const std::string rest(s.substr(i));
        char* end = nullptr;
        const long long e = std::strtoll(rest.c_str(), &end, 10);
        if (end == rest.c_str() || end != rest.c_str() + rest.size())
            throw ParseError("malformed exponent in '" + std::string(s) + "'");
        exponent += e;
        i = s.size();
    }
    if (i != s.size()) throw ParseError("trailing characters in '" + std::string(s) + "'");

    const double nearest = parse_double_exact(s);

    // Exactness test on M * 10^E with M an integer.
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return Interval(negative ? -0.0 : 0.0);
    digits = digits.substr(first);
    while (digits.size() > 1 && digits.back() == '0') {
        digits.pop_back();
        ++exponent;
    }
    bool exact = false;
    if (digits.size() <= 19) {
        unsigned long long m = std::strtoull(digits.c_str(), nullptr, 10);
        constexpr unsigned long long two53 = 1ULL << 53;
        if (exponent >= 0) {
            exact = true;
            for (long long k = 0; k < exponent && exact; ++k) {
                if (m > two53 / 10) exact = false;
                else m *= 10;
            }
            exact = exact && m <= two53;
        } else if (exponent >= -22) {
            exact = true;
            for (long long k = 0; k < -exponent && exact; ++k) {
                if (m % 5 != 0) exact = false;
                else m /= 5;
            }
            // What remains is m * 2^exponent, exact when m fits the mantissa.
            exact = exact && m <= two53;
        }
    }
    if (exact && std::isfinite(nearest)) return Interval(nearest);
    return Interval::unchecked(rounding::next_down(nearest), rounding::next_up(nearest));
}

}  // namespace vode
