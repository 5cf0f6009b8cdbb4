#pragma once

// Randomized containment check of interval operations against higher-precision
// arithmetic: __float128 for + - * / sqrt, long double for the libm functions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "vode/interval.hpp"

namespace vode::testing {

struct FuzzReport {
    std::size_t ops = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::string first_violation;
};

class IntervalFuzzer {
public:
    explicit IntervalFuzzer(std::uint64_t seed) : rng_(seed) {}

    double random_double(int emin = -30, int emax = 30) {
        std::uniform_real_distribution<double> m(0.5, 1.0);
        std::uniform_int_distribution<int> e(emin, emax);
        std::bernoulli_distribution neg(0.5);
        const double v = std::ldexp(m(rng_), e(rng_));
        return neg(rng_) ? -v : v;
    }

    Interval random_interval(int emin = -30, int emax = 30) {
        std::uniform_int_distribution<int> kind(0, 9);
        switch (kind(rng_)) {
            case 0: return Interval(random_double(emin, emax));
            case 1: {
                const double a = std::fabs(random_double(emin, emax));
                return Interval(0.0, a);
            }
            case 2: {
                const double a = std::fabs(random_double(emin, emax));
                return Interval(-a, 0.0);
            }
            case 3: {
                // narrow interval around a point
                const double c = random_double(emin, emax);
                const double w = std::fabs(c) * std::ldexp(1.0, -std::uniform_int_distribution<int>(5, 50)(rng_));
                return Interval(c - w, c + w);
            }
            default: {
                double a = random_double(emin, emax), b = random_double(emin, emax);
                if (a > b) std::swap(a, b);
                return Interval(a, b);
            }
        }
    }

    double sample(const Interval& a) {
        std::uniform_int_distribution<int> pick(0, 9);
        const int k = pick(rng_);
        if (k == 0) return a.lo();
        if (k == 1) return a.hi();
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double t = u(rng_);
        const double x = a.lo() + t * (a.hi() - a.lo());
        return std::clamp(x, a.lo(), a.hi());
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline bool inside(const Interval& r, __float128 v) {
    return static_cast<__float128>(r.lo()) <= v && v <= static_cast<__float128>(r.hi());
}

inline bool inside(const Interval& r, long double v) {
    return static_cast<long double>(r.lo()) <= v && v <= static_cast<long double>(r.hi());
}

inline __float128 sqrt128(__float128 x) {
    __float128 g = std::sqrt(static_cast<double>(x));
    if (g == 0) return g;
    for (int it = 0; it < 3; ++it) g = (g + x / g) / 2;
    return g;
}

/// Runs `n_ops` random operations, each probed at `samples` point selections
/// (endpoints included with positive probability).
inline FuzzReport fuzz_intervals(std::uint64_t seed, std::size_t n_ops, std::size_t samples) {
    IntervalFuzzer fz(seed);
    FuzzReport rep;
    std::uniform_int_distribution<int> op_pick(0, 9);
    auto check = [&](bool ok, int op, const Interval& a, const Interval& b) {
        ++rep.samples;
        if (!ok && rep.violations++ == 0)
            rep.first_violation = "op " + std::to_string(op) + " a=" + to_string(a) + " b=" + to_string(b);
    };
    for (std::size_t n = 0; n < n_ops; ++n) {
        const int op = op_pick(fz.rng());
        ++rep.ops;
        if (op <= 3) {
            const Interval a = fz.random_interval();
            Interval b = fz.random_interval();
            if (op == 3 && contains_zero(b)) b = Interval(std::fabs(b.hi()) + 1.0, std::fabs(b.hi()) + 2.0);
            const Interval r = op == 0 ? a + b : op == 1 ? a - b : op == 2 ? a * b : a / b;
            for (std::size_t s = 0; s < samples; ++s) {
                const __float128 x = fz.sample(a), y = fz.sample(b);
                const __float128 v = op == 0 ? x + y : op == 1 ? x - y : op == 2 ? x * y : x / y;
                check(inside(r, v), op, a, b);
            }
            continue;
        }
        Interval a;
        switch (op) {
            case 4: a = fz.random_interval(); break;
            case 5: a = abs(fz.random_interval()); break;
            case 6: a = fz.random_interval(-30, 2); break;
            case 7: {
                const double h = std::fabs(fz.random_double());
                a = Interval(h * 0.5, h);
                break;
            }
            default: a = fz.random_interval(-10, 4); break;
        }
        const Interval r = op == 4 ? sqr(a) : op == 5 ? sqrt(a) : op == 6 ? exp(a) : op == 7 ? log(a) : op == 8 ? sin(a) : cos(a);
        for (std::size_t s = 0; s < samples; ++s) {
            const double x = fz.sample(a);
            bool ok = false;
            switch (op) {
                case 4: ok = inside(r, static_cast<__float128>(x) * x); break;
                case 5: ok = inside(r, sqrt128(x)); break;
                case 6: ok = inside(r, std::exp(static_cast<long double>(x))); break;
                case 7: ok = inside(r, std::log(static_cast<long double>(x))); break;
                case 8: ok = inside(r, std::sin(static_cast<long double>(x))); break;
                default: ok = inside(r, std::cos(static_cast<long double>(x))); break;
            }
            check(ok, op, a, a);
        }
    }
    return rep;
}

}  // namespace vode::testing
