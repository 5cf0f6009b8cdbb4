#include <doctest.h>

#include <cmath>
#include <random>

#include "vode/verify.hpp"

using namespace vode;

namespace {

NewtonProblem scalar(std::function<Interval(const Interval&)> f, std::function<Interval(const Interval&)> df) {
    return {[f](const IVec& x) { return IVec{f(x[0])}; },
            [df](const IVec& x) {
                IMat J(1, 1);
                J(0, 0) = df(x[0]);
                return J;
            }};
}

// Product of (x − r) over the roots and its derivative, in interval arithmetic.
NewtonProblem polynomial(const std::vector<double>& roots) {
    auto f = [roots](const Interval& x) {
        Interval p(1.0);
        for (double r : roots) p = p * (x - Interval(r));
        return p;
    };
    auto df = [roots](const Interval& x) {
        Interval s(0.0);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            Interval p(1.0);
            for (std::size_t j = 0; j < roots.size(); ++j)
                if (j != i) p = p * (x - Interval(roots[j]));
            s = s + p;
        }
        return s;
    };
    return scalar(f, df);
}

using Status = NewtonVerdict::Status;

}  // namespace

TEST_CASE("comparison operators") {
    CHECK(holds(Interval(1, 2), "<", 2.5));
    CHECK_FALSE(holds(Interval(1, 2), "<", 2.0));
    CHECK(holds(Interval(1, 2), "<=", 2.0));
    CHECK(holds(Interval(1, 2), ">", 0.5));
    CHECK_FALSE(holds(Interval(1, 2), ">", 1.0));
    CHECK(holds(Interval(1, 2), ">=", 1.0));
    CHECK_THROWS_AS(holds(Interval(1, 2), "==", 1.0), DomainError);
}

TEST_CASE("interval Newton examples") {
    const auto F = scalar([](const Interval& x) { return sqr(x) - Interval(2.0); },
                          [](const Interval& x) { return Interval(2.0) * x; });
    const auto v = newton_step(F, IVec{Interval(1.5)}, IVec{Interval(1, 2)});
    CHECK(v.status == Status::unique_zero);
    CHECK(v.N[0] == Interval(1.375, 1.4375));
    CHECK(contains(v.refined[0], std::sqrt(2.0)));
    const auto r = newton_refine(F, v);
    CHECK(diam(r.refined[0]) < 1e-14);
    CHECK(r.refined[0].lo() <= 1.41421356237309504880L);
    CHECK(r.refined[0].hi() >= 1.41421356237309504880L);

    const auto id = scalar([](const Interval& x) { return x; }, [](const Interval&) { return Interval(1.0); });
    const auto z = newton_step(id, IVec{Interval(0.0)}, IVec{Interval(-1, 1)});
    CHECK(z.status == Status::unique_zero);
    CHECK(z.N[0] == Interval(0.0));

    const auto far = scalar([](const Interval& x) { return x - Interval(5.0); }, [](const Interval&) { return Interval(1.0); });
    CHECK(newton_step(far, IVec{Interval(0.0)}, IVec{Interval(-1, 1)}).status == Status::no_zero);

    // 0 ∈ DF(X): the elimination breaks down.
    const auto flat = scalar([](const Interval& x) { return sqr(x) + Interval(1.0); },
                             [](const Interval& x) { return Interval(2.0) * x; });
    CHECK(interval_newton(flat, IVec{Interval(0.0)}, IVec{Interval(-1, 1)}).status == Status::inconclusive);
}

TEST_CASE("inconclusive Newton enlarges the box") {
    // F(x) = x − 0.09 + x²/2: on [−0.1, 0.1] N touches the right end; ×4 fits.
    const auto F = scalar([](const Interval& x) { return x - Interval(0.09) + sqr(x) * Interval(0.5); },
                          [](const Interval& x) { return Interval(1.0) + x; });
    const auto v = interval_newton(F, IVec{Interval(0.0)}, IVec{Interval(-0.1, 0.1)});
    CHECK(v.status == Status::unique_zero);
    CHECK(v.enlargements == 1);
    CHECK(v.X[0] == Interval(-0.4, 0.4));
    const double root = -1.0 + std::sqrt(1.18);
    CHECK(contains(v.refined[0], root));
    CHECK(interval_newton(F, IVec{Interval(0.0)}, IVec{Interval(-0.1, 0.1)}, 0).status == Status::inconclusive);
}

TEST_CASE("two-dimensional Newton") {
    NewtonProblem F{[](const IVec& x) { return IVec{sqr(x[0]) + sqr(x[1]) - Interval(1.0), x[0] - x[1]}; },
                    [](const IVec& x) {
                        IMat J(2, 2);
                        J(0, 0) = Interval(2.0) * x[0];
                        J(0, 1) = Interval(2.0) * x[1];
                        J(1, 0) = Interval(1.0);
                        J(1, 1) = Interval(-1.0);
                        return J;
                    }};
    const IVec X{Interval(0.65, 0.75), Interval(0.65, 0.75)};
    const auto v = newton_refine(F, interval_newton(F, to_interval(mid(X)), X));
    REQUIRE(v.status == Status::unique_zero);
    CHECK(contains(v.refined[0], std::sqrt(0.5)));
    CHECK(contains(v.refined[1], std::sqrt(0.5)));
    CHECK(max_diam(v.refined) < 1e-14);
}

TEST_CASE("Newton soundness on random polynomials") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> root(-2.0, 2.0), radius(-6.0, -0.5), unit(-1.0, 1.0);
    int proved = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> roots(trial % 2 ? 3 : 2);
        for (double& r : roots) r = root(rng);
        const double rad = std::pow(10.0, radius(rng));
        const double c = roots[0] + rad * unit(rng);
        const IVec X{Interval(c - rad, c + rad)};
        const IVec x0{Interval(c + 0.5 * rad * unit(rng))};
        const auto F = polynomial(roots);
        const auto v = interval_newton(F, x0, X);
        if (v.status == Status::no_zero) {
            for (double r : roots) CHECK_FALSE(contains(v.X[0], r));
        }
        if (v.status != Status::unique_zero) continue;
        ++proved;
        int inside = 0;
        for (double r : roots) inside += contains(v.X[0], r);
        CHECK(inside == 1);
        const auto w = newton_refine(F, v);
        bool caught = false;
        for (double r : roots) caught = caught || contains(w.refined[0], r);
        CHECK(caught);
        CHECK(subset(w.refined, v.refined));
        // Refining again never grows the enclosure.
        const auto again = newton_refine(F, w);
        CHECK(subset(again.refined, w.refined));
    }
    CHECK(proved > 50);
}

TEST_CASE("sign change examples") {
    const auto id = [](double y) { return Interval(y); };
    CHECK(sign_change_existence("id", id, Interval(-1, 1)).overall);
    const auto neg = [](double y) { return Interval(-y); };
    CHECK(sign_change_existence("neg", neg, Interval(-1, 1)).overall);
    const auto square = [](double y) { return sqr(Interval(y)); };
    const auto c = sign_change_existence("square", square, Interval(-1, 1));
    CHECK_FALSE(c.overall);
    CHECK(c.checks.size() == 2);
    CHECK(c.recheck());
    // An endpoint bound that contains zero fails.
    const auto fuzzy = [](double y) { return Interval(y - 0.5, y + 0.5); };
    CHECK_FALSE(sign_change_existence("fuzzy", fuzzy, Interval(-0.25, 1)).overall);
}

TEST_CASE("covering check examples") {
    const double lM = -8.4, rM = -7.6, rN = -4.6;
    const IVec edge{Interval(rM), Interval(0.028, 0.034)};
    const auto identity = [](const IVec& p) { return p[0]; };
    // With P = Id the right edge of M does not map past r_N.
    const auto c = covering_check("identity", {{"r_M edge", edge, ">", rN}}, identity, 3);
    CHECK_FALSE(c.overall);
    CHECK(c.checks[0].description.find("depth limit") != std::string::npos);
    CHECK(c.recheck());

    const auto shifted = [](const IVec& p) { return p[0] + Interval(4.0); };
    CHECK(covering_check("shift", {{"r_M edge", edge, ">", rN}}, shifted).overall);
    const auto left = covering_check("left", {{"l_M edge", IVec{Interval(lM), Interval(0.028, 0.034)}, "<", lM}}, identity, 2);
    CHECK_FALSE(left.overall);
    CHECK(left.checks[0].bound == Interval(lM));
    CHECK_THROWS_AS(covering_check("bad", {{"e", edge, "<=", 0.0}}, identity), DomainError);
}

TEST_CASE("covering check refines and is monotone in depth") {
    // z + (z − z) has width 3·diam(z): the top piece must be narrow to stay below 1.01.
    const auto loose = [](const IVec& p) { return p[1] + (p[1] - p[1]); };
    const std::vector<CoveringEdge> edges{{"edge", IVec{Interval(0.0), Interval(0, 1)}, "<", 1.01}};
    bool previous = false;
    int first = -1;
    for (int depth = 0; depth <= 12; ++depth) {
        const bool pass = covering_check("loose", edges, loose, depth).overall;
        if (previous) CHECK(pass);
        if (pass && first < 0) first = depth;
        previous = pass;
    }
    CHECK(first > 3);
    CHECK(first <= 12);
}

TEST_CASE("cone condition examples") {
    const IMat hyperbolic{{2.0, 0.0}, {0.0, 0.1}};
    const IMat M = cone_matrix(hyperbolic, 1.0, -100.0);
    CHECK(M(0, 0) == Interval(3.0));
    CHECK(contains(M(1, 1), 99.0));
    CHECK(M(0, 1) == Interval(0.0));
    CHECK(cone_condition("diag", {hyperbolic}, 1.0, -100.0).overall);
    CHECK_FALSE(cone_condition("identity", {IMat::identity(2)}, 1.0, -100.0).overall);
    CHECK_FALSE(cone_condition("empty", {}, 1.0, -100.0).overall);
    CHECK_THROWS_AS(cone_condition("signs", {hyperbolic}, -1.0, -100.0), DomainError);
    const auto mixed = cone_condition("mixed", {hyperbolic, IMat::identity(2)}, 1.0, -100.0);
    CHECK_FALSE(mixed.overall);
    CHECK(mixed.checks[0].description.find("piece 1") != std::string::npos);
}

TEST_CASE("cone condition implies positive quadratic forms") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int certified = 0;
    for (int piece = 0; piece < 10; ++piece) {
        // Saddle-like matrices with a small interval spread.
        const double a = 1.5 + 2.0 * u(rng), d = 0.2 * u(rng), b = u(rng) - 0.5, c = 0.05 * (u(rng) - 0.5);
        const double r = 0.01 * u(rng);
        const IMat DP{{Interval(a - r, a + r), Interval(b - r, b + r)}, {Interval(c - r, c + r), Interval(d - r, d + r)}};
        if (!cone_condition("piece", {DP}, 1.0, -100.0).overall) continue;
        ++certified;
        bool ok = true;
        for (int k = 0; k < 100; ++k) {
            double m[2][2];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m[i][j] = DP(i, j).lo() + u(rng) * diam(DP(i, j));
            const double M11 = m[0][0] * m[0][0] - 100 * m[1][0] * m[1][0] - 1;
            const double M22 = m[0][1] * m[0][1] - 100 * m[1][1] * m[1][1] + 100;
            const double M12 = m[0][0] * m[0][1] - 100 * m[1][0] * m[1][1];
            for (int v = 0; v < 100; ++v) {
                const double t = 6.283185307179586 * u(rng);
                const double x = std::cos(t), y = std::sin(t);
                ok = ok && M11 * x * x + 2 * M12 * x * y + M22 * y * y > 0;
            }
        }
        CHECK(ok);
    }
    CHECK(certified >= 5);
}

TEST_CASE("saddle verdict examples") {
    const auto s = saddle_verdict("diag", IMat{{2.0, 0.0}, {0.0, 0.5}});
    CHECK(s.overall);
    CHECK(s.checks.size() == 3);
    const double c = std::cos(0.3), n = std::sin(0.3);
    const auto rot = saddle_verdict("rotation", IMat{{c, -n}, {n, c}});
    CHECK_FALSE(rot.overall);
    CHECK(rot.checks.size() == 1);
    CHECK_FALSE(saddle_verdict("contracting", IMat{{0.5, 0.0}, {0.0, 0.25}}).overall);
    CHECK(saddle_verdict("flip", IMat{{-2.4, 1.97}, {-0.0011, 0.0009}}).overall);
}

TEST_CASE("certificate JSON") {
    Certificate c;
    c.claim_id = "demo";
    c.add("third", Interval(1.0) / Interval(3.0), "<", 0.5);
    c.add("lower", Interval(-1.0, 2.0), ">", 0.0);
    c.config["order"] = 20;
    c.config["tolerance"] = 1e-10;
    c.field_hash = field_hash("var:x;fun:x;");
    CHECK_FALSE(c.overall);
    CHECK(c.recheck());

    const std::string text = c.dump();
    CHECK(text.find("\"claim_id\"") < text.find("\"checks\""));
    CHECK(text.find("\"checks\"") < text.find("\"overall\""));
    CHECK(text.find("\"overall\"") < text.find("\"config\""));
    CHECK(text.find("\"config\"") < text.find("\"field_hash\""));
    CHECK(text.find("\"description\"") < text.find("\"bound\""));
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    CHECK(text.find("1.0000000000000000e-10") == std::string::npos);
    CHECK(text.find("1e-10") != std::string::npos);

    const auto back = Certificate::from_json(nlohmann::ordered_json::parse(text));
    CHECK(back.recheck());
    CHECK(back.checks[0].bound == c.checks[0].bound);
    CHECK(back.dump() == text);

    // Tampering with a bound is caught without re-running anything.
    auto forged = back;
    forged.checks[1].pass = true;
    forged.overall = true;
    CHECK_FALSE(forged.recheck());
    forged.checks[1].bound = Interval(0.5, 2.0);
    CHECK(forged.recheck());

    Certificate failing;
    failing.add_failure("integration aborted");
    CHECK_FALSE(failing.overall);
    CHECK(failing.recheck());
}

TEST_CASE("field hash is 64-bit FNV-1a") {
    CHECK(field_hash("") == "cbf29ce484222325");
    CHECK(field_hash("a") == "af63dc4c8601ec8c");
    CHECK(field_hash("var:x;fun:x;") != field_hash("var:x;fun:-x;"));
}
