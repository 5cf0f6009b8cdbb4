#pragma once

// Nonrigorous long-double reference flows used as test oracles. The right-hand
// sides are written out by hand so they share no code with the parser.

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace vode::testing {

using State = std::vector<long double>;
using Rhs = std::function<void(const State&, State&, long double)>;

struct RefSystem {
    const char* name;
    Rhs rhs;
};

inline RefSystem michelson(long double c) {
    return {"michelson", [c](const State& x, State& d, long double) {
                d[0] = x[1];
                d[1] = x[2];
                d[2] = c * c - x[1] - x[0] * x[0] / 2;
            }};
}

inline RefSystem rossler(long double a, long double b) {
    return {"rossler", [a, b](const State& x, State& d, long double) {
                d[0] = -(x[1] + x[2]);
                d[1] = x[0] + b * x[1];
                d[2] = b + x[2] * (x[0] - a);
            }};
}

inline RefSystem lorenz() {
    return {"lorenz", [](const State& x, State& d, long double) {
                d[0] = 10 * (x[1] - x[0]);
                d[1] = x[0] * (28 - x[2]) - x[1];
                d[2] = x[0] * x[1] - 8.0L / 3.0L * x[2];
            }};
}

inline RefSystem pendulum() {
    return {"pendulum", [](const State& x, State& d, long double) {
                d[0] = x[1];
                d[1] = -std::sin(x[0]);
            }};
}

/// Forced Duffing-type oscillator x'' = -0.1x - 0.1x^3 + forcing·cos t.
inline RefSystem nakao(long double forcing = 0.4464L) {
    return {"nakao", [forcing](const State& x, State& d, long double t) {
                d[0] = x[1];
                d[1] = -0.1L * x[0] - 0.1L * x[0] * x[0] * x[0] + forcing * std::cos(t);
            }};
}

inline RefSystem harmonic() {
    return {"harmonic", [](const State& x, State& d, long double) {
                d[0] = x[1];
                d[1] = -x[0];
            }};
}

/// Integrates from t0 to t1 (either direction) with a tight adaptive RKF78.
inline State flow(const RefSystem& sys, State x, long double t0, long double t1, long double tol = 1e-17L) {
    namespace ode = boost::numeric::odeint;
    if (t0 == t1) return x;
    using stepper_t = ode::runge_kutta_fehlberg78<State, long double>;
    auto stepper = ode::make_controlled<stepper_t>(tol, tol);
    const long double dt = (t1 > t0 ? 1 : -1) * std::min<long double>(0.01L, std::fabs(t1 - t0));
    ode::integrate_adaptive(stepper, sys.rhs, x, t0, t1, dt);
    return x;
}

struct Crossing {
    State x;
    long double t;
};

/// Returns of the flow to {x[index] = value}. `direction` is +1, -1 or 0 for
/// both. A crossing only counts after |S| has exceeded `escape` once.
inline std::vector<Crossing> crossings(const RefSystem& sys, State x, long double t0, int index, long double value,
                                       int direction, int count, long double escape, long double t_max = 200) {
    namespace ode = boost::numeric::odeint;
    std::vector<Crossing> out;
    const long double h = 0.005L;
    long double t = t0;
    bool armed = std::fabs(x[index] - value) > escape;
    State d(x.size());
    while (static_cast<int>(out.size()) < count) {
        if (t - t0 > t_max) throw std::runtime_error("no crossing within time limit");
        State y = flow(sys, x, t, t + h);
        const long double s0 = x[index] - value, s1 = y[index] - value;
        bool hit = armed && ((s0 < 0 && s1 >= 0 && direction >= 0) || (s0 > 0 && s1 <= 0 && direction <= 0));
        if (hit) {
            // Newton on the crossing time, restarted from the step start.
            long double tau = h * s0 / (s0 - s1);
            State z;
            for (int it = 0; it < 20; ++it) {
                z = flow(sys, x, t, t + tau);
                sys.rhs(z, d, t + tau);
                const long double g = z[index] - value;
                const long double delta = g / d[index];
                tau -= delta;
                if (std::fabs(delta) < 1e-18L) break;
            }
            z = flow(sys, x, t, t + tau);
            out.push_back({z, t + tau});
            armed = false;
        }
        x = y;
        t += h;
        if (!armed && std::fabs(x[index] - value) > escape) armed = true;
    }
    return out;
}

}  // namespace vode::testing
