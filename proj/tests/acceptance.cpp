// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 100).

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "support/interval_oracle.hpp"
#include "support/systems.hpp"
#include "vode/cases.hpp"
#include "vode/solver.hpp"

using namespace vode;
namespace ref = vode::testing;
using namespace vode::testing::systems;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

void run(int id, const std::string& name, double limit) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        const CaseResult r = run_case({name, {}, {}, {}});
        const double s = seconds_since(t0);
        int failed = 0;
        std::string first;
        for (const auto& c : r.certificate.checks)
            if (!c.pass && failed++ == 0) first = c.description;
        pass = r.certificate.overall && r.certificate.recheck() && s <= limit;
        detail = std::to_string(r.certificate.checks.size()) + " checks, " + std::to_string(failed) + " failed";
        if (!first.empty()) detail += " (first: " + first + ")";
        detail += fmt(", %.1f s of %.0f s", s, limit);
    } catch (const std::exception& e) {
        detail = std::string("error: ") + e.what();
    }
    report(id, name, pass, detail);
}

// ---- property suites ----------------------------------------------------------

std::string containment(int per_system) {
    std::mt19937_64 rng(7);
    int escapes = 0, samples = 0;
    for (auto& c : systems()) {
        const IVec box = box_around(c.start, c.radius);
        const auto s = integrate_to(c.field, from_box(box), c.T);
        for (int k = 0; k < per_system; ++k, ++samples) {
            ref::State x(c.start.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] = std::uniform_real_distribution<double>(box[i].lo(), box[i].hi())(rng);
            if (!inside(s.hull(), ref::flow(c.reference, x, 0, c.T))) ++escapes;
        }
    }
    return escapes ? std::to_string(escapes) + " escapes" : std::to_string(samples) + " trajectories contained";
}

std::string c1_differences(int per_system) {
    std::mt19937_64 rng(11);
    const long double delta = 1e-6L;
    int bad = 0, points = 0;
    for (auto& c : systems()) {
        const std::size_t n = c.start.size();
        for (int k = 0; k < per_system; ++k, ++points) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i)
                p[i] = c.start[i] + std::uniform_real_distribution<double>(-c.radius, c.radius)(rng);
            const IMat V = integrate_c1(c.field, c1_from(from_box(box_around(p, 2e-6))), c.T).V();
            bool ok = true;
            for (std::size_t j = 0; j < n; ++j) {
                ref::State xp(p.begin(), p.end()), xm(p.begin(), p.end());
                xp[j] += delta;
                xm[j] -= delta;
                const auto fp = ref::flow(c.reference, xp, 0, c.T), fm = ref::flow(c.reference, xm, 0, c.T);
                for (std::size_t i = 0; i < n; ++i) {
                    const long double fd = (fp[i] - fm[i]) / (2 * delta);
                    ok = ok && fd >= V(i, j).lo() && fd <= V(i, j).hi();
                }
            }
            bad += !ok;
        }
    }
    return bad ? std::to_string(bad) + " points outside" : std::to_string(points) + " points contained";
}

std::string newton_soundness(int trials) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> root(-2.0, 2.0), radius(-6.0, -0.5), unit(-1.0, 1.0);
    int unsound = 0, proved = 0;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> roots(trial % 2 ? 3 : 2);
        for (double& r : roots) r = root(rng);
        const double rad = std::pow(10.0, radius(rng));
        const double c = roots[0] + rad * unit(rng);
        const IVec X{Interval(c - rad, c + rad)};
        const IVec x0{Interval(c + 0.5 * rad * unit(rng))};
        const NewtonProblem F{[roots](const IVec& x) {
                                  Interval p(1.0);
                                  for (double r : roots) p = p * (x[0] - Interval(r));
                                  return IVec{p};
                              },
                              [roots](const IVec& x) {
                                  Interval s(0.0);
                                  for (std::size_t i = 0; i < roots.size(); ++i) {
                                      Interval p(1.0);
                                      for (std::size_t j = 0; j < roots.size(); ++j)
                                          if (j != i) p = p * (x[0] - Interval(roots[j]));
                                      s = s + p;
                                  }
                                  IMat J(1, 1);
                                  J(0, 0) = s;
                                  return J;
                              }};
        const auto v = interval_newton(F, x0, X);
        int inside_roots = 0;
        for (double r : roots) inside_roots += contains(v.X[0], r);
        if (v.status == NewtonVerdict::Status::no_zero && inside_roots) ++unsound;
        if (v.status != NewtonVerdict::Status::unique_zero) continue;
        ++proved;
        const auto w = newton_refine(F, v);
        bool caught = false;
        for (double r : roots) caught = caught || contains(w.refined[0], r);
        if (inside_roots != 1 || !caught) ++unsound;
    }
    return std::to_string(unsound) + " unsound verdicts, " + std::to_string(proved) + " of " + std::to_string(trials) +
           " proved";
}

std::string posdef_brute_force(int selections) {
    std::mt19937_64 rng(424242);
    auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    int done = 0, bad = 0;
    while (done < selections) {
        const double c11 = uniform(-1, 4), c22 = uniform(-1, 4), c12 = uniform(-2, 2), r = uniform(0, 0.3);
        const IMat m{{Interval(c11 - r, c11 + r), Interval(c12 - r, c12 + r)},
                     {Interval(c12 - r, c12 + r), Interval(c22 - r, c22 + r)}};
        if (!posdef_sym_2x2(m)) continue;
        for (int k = 0; k < 25 && done < selections; ++k, ++done) {
            Eigen::Matrix2d s;
            s(0, 0) = uniform(m(0, 0).lo(), m(0, 0).hi());
            s(1, 1) = uniform(m(1, 1).lo(), m(1, 1).hi());
            s(0, 1) = s(1, 0) = uniform(m(0, 1).lo(), m(0, 1).hi());
            bad += !(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(s).eigenvalues().minCoeff() > 0);
        }
    }
    return std::to_string(bad) + " of " + std::to_string(done) + " selections indefinite";
}

}  // namespace

int main() {
    run(1, "rossler-trap", 60);
    run(2, "michelson-symmetric", 120);
    run(3, "rossler-periodic", 120);
    run(4, "rossler-horseshoe", 300);
    run(5, "bvp-nakao", 60);
    run(6, "lorenz-coords", 120);
    run(7, "pendulum-repr", 120);

    const auto t0 = std::chrono::steady_clock::now();
    const auto fuzz = ref::fuzz_intervals(20240611, 1'000'000, 20);
    const std::string a = containment(50), b = c1_differences(20), c = newton_soundness(100),
                      d = posdef_brute_force(10000);
    const bool pass = fuzz.violations == 0 && fuzz.ops == 1'000'000 && a.find("escapes") == std::string::npos &&
                      b.find("outside") == std::string::npos && c.rfind("0 unsound", 0) == 0 && d.rfind("0 of", 0) == 0;
    report(8, "property suites", pass,
           std::to_string(fuzz.ops) + " interval ops with " + std::to_string(fuzz.violations) + " violations; " + a +
               "; " + b + "; " + c + "; " + d + fmt("; %.1f s", seconds_since(t0)));
    return failures > 100 ? 100 : failures;
}
