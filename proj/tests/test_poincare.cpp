#include <doctest.h>

#include <limits>
#include <random>

#include "support/reference.hpp"
#include "vode/poincare.hpp"

using namespace vode;
namespace ref = vode::testing;

namespace {

VectorField rossler() {
    auto f = parse_field("par:a,b;var:x,y,z;fun:-(y+z),x+b*y,b+z*(x-a);");
    f.set_parameter("a", from_decimal("5.7"));
    f.set_parameter("b", from_decimal("0.2"));
    return f;
}

VectorField michelson() {
    auto f = parse_field("par:c;var:x,y,z;fun:y,z,c^2-y-x^2/2;");
    f.set_parameter("c", Interval(1.0));
    return f;
}

const char* kHarmonic = "var:x,y;fun:y,-x;";

// Period-1 point of the Rössler return map in (y, z) chart coordinates.
IVec u1() {
    return {from_decimal("-8.3809417428298762873487630431"), from_decimal("0.029590060630667102951494027735")};
}

IVec box_around(const IVec& c, double r) {
    IVec b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) b[i] = c[i] + Interval(-r, r);
    return b;
}

bool inside(const Interval& x, long double v) { return x.lo() <= v && v <= x.hi(); }

}  // namespace

TEST_CASE("section charts") {
    const auto s = Section::coordinate(3, 0, 2.0);
    CHECK(s.chart_dimension() == 2);
    CHECK(s.value(IVec{Interval(3.0), Interval(1.0), Interval(1.0)}) == Interval(1.0));
    const IVec y = s.to_chart(IVec{Interval(2.0), Interval(4.0), Interval(5.0)});
    CHECK(y == IVec{Interval(4.0), Interval(5.0)});
    const IVec back = s.embed(y).hull();
    CHECK(contains(back[0], 2.0));
    CHECK(contains(back[1], 4.0));

    const auto a = Section::affine(DVec{1.0, 1.0}, DVec{1.0, 0.0});
    CHECK(contains(a.value(IVec{Interval(0.5), Interval(0.5)}), 0.0));
    const DMat B = a.basis();
    CHECK(std::fabs(B(0, 0) + B(1, 0)) < 1e-15);
    CHECK(std::fabs(B(0, 0) * B(0, 0) + B(1, 0) * B(1, 0) - 1.0) < 1e-15);
    CHECK_THROWS_AS(Section::affine(DVec{0.0, 0.0}, DVec{0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(Section::coordinate(2, 2, 0.0), DimensionMismatch);
}

TEST_CASE("harmonic oscillator returns after one period") {
    const auto sec = Section::coordinate(2, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(parse_field(kHarmonic), sec);
    const auto r = P(sec.embed(IVec{Interval(1.0)}));
    CHECK(contains(r.image.hull()[0], 1.0));
    CHECK(contains(r.return_time, 2.0 * 3.141592653589793));
    CHECK(r.return_time.lo() <= 6.283185307179586477L);
    CHECK(r.return_time.hi() >= 6.283185307179586477L);
    CHECK(diam(r.return_time) < 1e-12);
    CHECK(r.crossing_signs == std::vector<int>{1});

    const auto d = P.derivative(sec.embed_c1(IVec{Interval(1.0)}));
    REQUIRE(d.DP);
    CHECK(contains((*d.DP)(0, 0), 1.0));
    CHECK(diam((*d.DP)(0, 0)) < 1e-10);
}

TEST_CASE("direction discipline") {
    const auto f = parse_field(kHarmonic);
    const auto start = Section::coordinate(2, 0, 0.0).embed(IVec{Interval(1.0)});

    const auto both = PoincareMap(f, Section::coordinate(2, 0, 0.0, CrossingDirection::both))(start, 2);
    CHECK(both.crossing_signs == std::vector<int>{-1, 1});
    CHECK(contains(both.return_time, 6.283185307179586));

    const auto first = PoincareMap(f, Section::coordinate(2, 0, 0.0, CrossingDirection::both))(start);
    CHECK(contains(first.image.hull()[0], -1.0));
    CHECK(contains(first.return_time, 3.141592653589793));

    const auto neg = PoincareMap(f, Section::coordinate(2, 0, 0.0, CrossingDirection::negative))(start);
    CHECK(neg.crossing_signs == std::vector<int>{-1});
    CHECK(contains(neg.image.hull()[0], -1.0));
}

TEST_CASE("failures are reported") {
    const auto f = parse_field(kHarmonic);
    CHECK_THROWS_AS(PoincareMap(f, Section::coordinate(2, 0, 5.0), {}, 20.0)(
                        Section::coordinate(2, 0, 0.0).embed(IVec{Interval(1.0)})),
                    NoCrossing);
    // Orbits of radius about 1 graze x = 1 where x' = y vanishes.
    const auto graze = Section::coordinate(2, 0, 1.0, CrossingDirection::positive);
    const auto start = Section::coordinate(2, 0, 0.0).embed(IVec{Interval(0.99, 1.01)});
    CHECK_THROWS_AS(PoincareMap(f, graze)(start), TransversalityFailure);
    CHECK_THROWS_AS(PoincareMap(f, graze)(start, 0), DomainError);
    CHECK_THROWS_AS(PoincareMap(f, Section::coordinate(3, 0, 0.0)), DimensionMismatch);
}

TEST_CASE("Rössler crossings of sampled trajectories lie in the image") {
    const auto sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    const IVec box = box_around(u1(), 1e-4);
    const auto r = PoincareMap(rossler(), sec)(sec.embed(box));
    const IVec h = r.image.hull();
    std::mt19937_64 rng(3);
    int escapes = 0;
    for (int k = 0; k < 50; ++k) {
        const long double y = std::uniform_real_distribution<double>(box[0].lo(), box[0].hi())(rng);
        const long double z = std::uniform_real_distribution<double>(box[1].lo(), box[1].hi())(rng);
        const auto c = ref::crossings(ref::rossler(5.7L, 0.2L), {0.0L, y, z}, 0, 0, 0.0L, 1, 1, 1e-6L);
        if (!inside(h[0], c[0].x[1]) || !inside(h[1], c[0].x[2]) || !inside(r.return_time, c[0].t)) ++escapes;
    }
    CHECK(escapes == 0);
}

TEST_CASE("Rössler derivative at the period-1 point") {
    const auto sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(rossler(), sec);
    const auto r = P.derivative(sec.embed_c1(u1()));
    REQUIRE(r.DP);
    CHECK(subset(r.image.hull(), box_around(u1(), 1e-9)));
    const auto v = eig_bounds_2x2(*r.DP);
    REQUIRE(v.kind == SpectralVerdict::Kind::real_pair);
    CHECK(mag(v.lambda1) > 1.0);
    CHECK(mag(v.lambda2) < 1.0);
}

TEST_CASE("Rössler derivative contains central differences") {
    const auto sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(rossler(), sec);
    std::mt19937_64 rng(5);
    const long double delta = 1e-6L;
    for (int k = 0; k < 10; ++k) {
        IVec p = u1();
        for (auto& c : p) c = Interval(mid(c) + std::uniform_real_distribution<double>(-1e-3, 1e-3)(rng));
        // The box covers the stencil, so each exact quotient is a mean value of DP.
        const auto r = P.derivative(sec.embed_c1(box_around(p, 2e-6)));
        REQUIRE(r.DP);
        bool ok = true;
        for (std::size_t j = 0; j < 2; ++j) {
            ref::State xp{0.0L, mid(p[0]), mid(p[1])}, xm = xp;
            xp[1 + j] += delta;
            xm[1 + j] -= delta;
            const auto cp = ref::crossings(ref::rossler(5.7L, 0.2L), xp, 0, 0, 0.0L, 1, 1, 1e-6L);
            const auto cm = ref::crossings(ref::rossler(5.7L, 0.2L), xm, 0, 0, 0.0L, 1, 1, 1e-6L);
            for (std::size_t i = 0; i < 2; ++i) ok = ok && inside((*r.DP)(i, j), (cp[0].x[1 + i] - cm[0].x[1 + i]) / (2 * delta));
        }
        INFO("point " << k);
        CHECK(ok);
    }
}

TEST_CASE("two returns at once are no looser than recomputing from the hull") {
    const auto sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(rossler(), sec);
    const auto start = sec.embed(box_around(u1(), 1e-6));
    const auto twice = P(start, 2);
    const auto once = P(start);
    const auto again = P(sec.embed(once.image.hull(), once.ambient.time));
    IVec widened = again.image.hull();
    for (auto& c : widened) c = widen(c, 8.0 * mag(c) * std::numeric_limits<double>::epsilon());
    CHECK(subset(twice.image.hull(), widened));
    CHECK(max_diam(twice.image.hull()) < max_diam(again.image.hull()));
}

TEST_CASE("Michelson return map is reversible") {
    const auto sec = Section::coordinate(3, 0, 0.0, CrossingDirection::both);
    const IVec u{Interval(0.5), Interval(0.0)};
    const auto r = PoincareMap(michelson(), sec)(sec.embed(u));
    // R(x, y, z) = (−x, y, −z) reverses time: φ_T(R(φ_T(u))) = R(u) = u.
    const IVec a = r.ambient.hull();
    const IVec Ra{-a[0], a[1], -a[2]};
    const auto back = integrate_to(michelson(), from_box(Ra), r.return_time);
    const IVec b = back.hull();
    CHECK(contains(b[0], 0.0));
    CHECK(contains(b[1], 0.5));
    CHECK(contains(b[2], 0.0));
    CHECK(max_diam(b) < 1e-6);
}
