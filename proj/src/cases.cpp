#include "vode/cases.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>

#include <boost/numeric/odeint.hpp>

#include "vode/poincare.hpp"

namespace vode {

namespace {

using json = nlohmann::ordered_json;

const char* kRossler = "par:a,b;var:x,y,z;fun:-(y+z),x+b*y,b+z*(x-a);";
const char* kMichelson = "var:x,y,z,c;fun:y,z,c^2-y-x^2/2,0;";
const char* kLorenz = "par:s,r,q;var:x,y,z;fun:s*(y-x),x*(r-z)-y,x*y-q*z;";
const char* kPendulum = "var:x,y;fun:y,-sin(x);";
// With +cos forcing the zero sits at -0.5072. The -cos equation is its mirror
// image under x -> -x and is checked at +0.5072.
const char* kNakao = "time:t;var:x,dx;fun:dx,-0.1*x-0.1*x^3+0.4464*cos(t);";
const char* kNakaoMirror = "time:t;var:x,dx;fun:dx,-0.1*x-0.1*x^3-0.4464*cos(t);";

// Thresholds for strict checks against decimal constants: bound > c is shown
// by bound.lo > hi([c]), bound < c by bound.hi < lo([c]).
double above(const char* c) { return from_decimal(c).hi(); }
double below(const char* c) { return from_decimal(c).lo(); }

// Outward cover of a decimal interval [lo, hi].
Interval decimal_interval(const char* lo, const char* hi) { return Interval(from_decimal(lo).lo(), from_decimal(hi).hi()); }

VectorField rossler() {
    auto f = parse_field(kRossler);
    f.set_parameter("a", from_decimal("5.7"));
    f.set_parameter("b", from_decimal("0.2"));
    return f;
}

std::string hash_of(const std::string& source, const VectorField& f) {
    std::string s = source;
    for (std::size_t i = 0; i < f.parameter_count(); ++i)
        s += "|" + f.parameter_names()[i] + "=" + to_string(f.parameters()[i]);
    return field_hash(s);
}

struct Defaults {
    int order = 20;
    double tolerance = 1e-10;
    int subdivisions = 1;
};

struct Setup {
    SolverConfig solver;
    int subdivisions;
    Certificate cert;
};

Setup setup(const CaseConfig& cfg, const Defaults& d, const std::string& source, const VectorField& f) {
    Setup s;
    s.solver.order = cfg.order.value_or(d.order);
    s.solver.tolerance = cfg.tolerance.value_or(d.tolerance);
    s.solver.validate();
    s.subdivisions = cfg.subdivisions.value_or(d.subdivisions);
    if (s.subdivisions < 1) throw DomainError("subdivisions must be at least 1");
    s.cert.claim_id = cfg.name;
    s.cert.config["case"] = cfg.name;
    s.cert.config["order"] = s.solver.order;
    s.cert.config["tolerance"] = s.solver.tolerance;
    s.cert.config["subdivisions"] = s.subdivisions;
    s.cert.config["field"] = source;
    s.cert.field_hash = hash_of(source, f);
    return s;
}

json bounds(const Interval& x) { return json::array({x.lo(), x.hi()}); }

json bounds(const IVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(bounds(x));
    return a;
}

// Prefixes every check description of c and folds it into into.
void merge_as(Certificate& into, const std::string& prefix, Certificate c) {
    for (auto& k : c.checks) k.description = prefix + ": " + k.description;
    into.merge(c);
}

// ---- rossler-trap -------------------------------------------------------------

CaseResult rossler_trap(const CaseConfig& cfg) {
    const auto f = rossler();
    Setup s = setup(cfg, {20, 1e-10, 200}, kRossler, f);
    const Interval Y = decimal_interval("-10.7", "-2.7"), Z = decimal_interval("0.028", "0.034");
    s.cert.config["W"] = json::array({"[-10.7,-2.7]", "[0.028,0.034]"});
    CaseResult out;
    s.cert.add("x' = -(y+z) on W", -(Y + Z), ">", 0.0);

    const Section sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(f, sec, s.solver);
    const int N = s.subdivisions;
    std::optional<IVec> all;
    for (int i = 0; i < N; ++i) {
        const double a = i == 0 ? Y.lo() : Y.lo() + (Y.hi() - Y.lo()) * i / N;
        const double b = i == N - 1 ? Y.hi() : Y.lo() + (Y.hi() - Y.lo()) * (i + 1) / N;
        try {
            const IVec h = P(sec.embed(IVec{Interval(a, b), Z})).image.hull();
            out.rows.push_back({i, h[0], h[1]});
            all = all ? hull(*all, h) : h;
        } catch (const Error& e) {
            s.cert.add_failure("piece " + std::to_string(i) + " [" + std::to_string(a) + ", " + std::to_string(b) +
                               "]: " + e.what());
        }
    }
    if (all) {
        const std::string n = " over " + std::to_string(N) + " pieces";
        s.cert.add("min pi_y P" + n, (*all)[0], ">", above("-10.7"));
        s.cert.add("max pi_y P" + n, (*all)[0], "<", below("-2.7"));
        s.cert.add("min pi_z P" + n, (*all)[1], ">", above("0.028"));
        s.cert.add("max pi_z P" + n, (*all)[1], "<", below("0.034"));
    }
    out.certificate = std::move(s.cert);
    return out;
}

// ---- michelson-symmetric ------------------------------------------------------

CaseResult michelson_symmetric(const CaseConfig& cfg) {
    // c rides along as a constant state so its spread enters the set's frame
    // instead of being wrapped into every Taylor coefficient.
    const auto f = parse_field(kMichelson);
    const Interval C = Interval(1.0) + Interval(-1.0, 1.0) / Interval(128.0);
    Setup s = setup(cfg, {20, 1e-12, 8}, kMichelson, f);
    s.cert.config["C"] = bounds(C);
    CaseResult out;

    const int K = s.subdivisions;
    std::vector<Interval> cs;
    for (int i = 0; i < K; ++i) {
        const double a = i == 0 ? C.lo() : C.lo() + (C.hi() - C.lo()) * i / K;
        const double b = i == K - 1 ? C.hi() : C.lo() + (C.hi() - C.lo()) * (i + 1) / K;
        cs.push_back(Interval(a, b));
    }
    const Section sec = Section::coordinate(4, 0, 0.0, CrossingDirection::both);
    PoincareMap P(f, sec, s.solver);
    auto image = [&](const Interval& y, const Interval& c) {
        return P(sec.embed(IVec{y, Interval(0.0), c})).image.hull();
    };

    // Brackets from nonrigorous shooting at c = 1 and at both ends of C.
    const auto zeros = michelson_symmetric_zeros(1.0, 0.0, 3.0, 0.01);
    if (zeros.size() < 2) {
        s.cert.add_failure("fewer than two symmetric zeros found by shooting");
        out.certificate = std::move(s.cert);
        return out;
    }
    std::vector<Interval> brackets;
    for (int k = 0; k < 2; ++k) {
        double lo = zeros[k], hi = zeros[k];
        for (double c : {C.lo(), C.hi()}) {
            for (double z : michelson_symmetric_zeros(c, zeros[k] - 0.05, zeros[k] + 0.05, 0.001)) {
                lo = std::min(lo, z);
                hi = std::max(hi, z);
            }
        }
        const double margin = std::max(0.5 * (hi - lo), 1e-3);
        brackets.push_back(Interval(lo - margin, hi + margin));
    }
    json br = json::array();
    for (const auto& b : brackets) br.push_back(bounds(b));
    s.cert.config["brackets"] = br;

    int row = 0;
    for (int k = 0; k < 2; ++k) {
        const std::string name = "Y" + std::to_string(k + 1);
        const Interval Yk = brackets[k];
        try {
            auto g = [&](double y) {
                std::optional<Interval> z;
                for (const auto& c : cs) {
                    const IVec h = image(Interval(y), c);
                    out.rows.push_back({row++, h[0], h[1]});
                    z = z ? hull(*z, h[1]) : h[1];
                }
                return *z;
            };
            merge_as(s.cert, name + " pi_z P_c", sign_change_existence(name, g, Yk));
            // π_y P_c < 0 over the whole bracket and all of C.
            std::vector<CoveringEdge> side;
            for (const auto& c : cs)
                side.push_back({"pi_y P_c over " + name + " x {0}, c in " + to_string(c), IVec{Yk, Interval(0.0), c},
                                "<", 0.0});
            s.cert.merge(covering_check(name, side, [&](const IVec& piece) { return image(piece[0], piece[2])[0]; }, 8));
        } catch (const Error& e) {
            s.cert.add_failure(name + ": " + e.what());
        }
    }
    s.cert.add("gap between Y1 and Y2", Interval(brackets[1].lo()) - Interval(brackets[0].hi()), ">", 0.0);
    out.certificate = std::move(s.cert);
    return out;
}

// ---- rossler-periodic ---------------------------------------------------------

CaseResult rossler_periodic(const CaseConfig& cfg) {
    const auto f = rossler();
    Setup s = setup(cfg, {60, 1e-16, 1}, kRossler, f);
    const std::array<std::array<const char*, 2>, 3> u{{
        {"-8.3809417428298762873487630431", "0.029590060630667102951494027735"},
        {"-5.4240738226652043515673025463", "0.031081210807876445187367377796"},
        {"-6.2331586285379749515076479411", "0.030640111658160569478006226700"},
    }};
    const double radius = 1e-10, target = 1e-12;
    s.cert.config["radius"] = radius;
    s.cert.config["target_diameter"] = target;
    CaseResult out;

    const Section sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(f, sec, s.solver);
    std::vector<std::optional<IVec>> refined(3);
    for (int m = 1; m <= 3; ++m) {
        const std::string name = "u" + std::to_string(m);
        const IVec x0{from_decimal(u[m - 1][0]), from_decimal(u[m - 1][1])};
        const IVec X = x0 + IVec{Interval(-radius, radius), Interval(-radius, radius)};
        NewtonProblem F{[&](const IVec& x) { return P(sec.embed(x), m).image.hull() - x; },
                        [&](const IVec& B) { return *P.derivative(sec.embed_c1(B), m).DP - IMat::identity(2); }};
        try {
            const NewtonVerdict v = interval_newton(F, x0, X, 0);
            if (v.N.size() == 0) {
                s.cert.add_failure(name + ": Newton operator undefined (singular Jacobian)");
                continue;
            }
            for (std::size_t i = 0; i < 2; ++i) {
                const std::string coord = i == 0 ? "y" : "z";
                s.cert.add(name + ": N_" + coord + " lower end inside X", v.N[i], ">", X[i].lo());
                s.cert.add(name + ": N_" + coord + " upper end inside X", v.N[i], "<", X[i].hi());
            }
            if (v.status != NewtonVerdict::Status::unique_zero) continue;
            const NewtonVerdict r = newton_refine(F, v);
            refined[m - 1] = r.refined;
            out.rows.push_back({m, r.refined[0], r.refined[1]});
            s.cert.add(name + ": refined max diameter", Interval(max_diam(r.refined)), "<=", target);
            merge_as(s.cert, name, saddle_verdict(name, *P.derivative(sec.embed_c1(r.refined), m).DP));
        } catch (const Error& e) {
            s.cert.add_failure(name + ": " + e.what());
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (!refined[i] || !refined[j]) continue;
            // Separate along the coordinate with the larger gap.
            const IVec& a = *refined[i];
            const IVec& b = *refined[j];
            std::size_t k = std::fabs(mid(b[0]) - mid(a[0])) >= std::fabs(mid(b[1]) - mid(a[1])) ? 0 : 1;
            const Interval gap = b[k] - a[k];
            s.cert.add("u" + std::to_string(j + 1) + " - u" + std::to_string(i + 1) + (k ? " in z" : " in y"), gap,
                       mid(gap) > 0 ? ">" : "<", 0.0);
        }
    out.certificate = std::move(s.cert);
    return out;
}

// ---- rossler-horseshoe --------------------------------------------------------

CaseResult rossler_horseshoe(const CaseConfig& cfg) {
    const auto f = rossler();
    Setup s = setup(cfg, {20, 1e-10, 32}, kRossler, f);
    const Interval Z = decimal_interval("0.028", "0.034");
    const double lambda = 1.0, mu = -100.0;
    s.cert.config["l_M"] = -8.4;
    s.cert.config["r_M"] = -7.6;
    s.cert.config["l_N"] = -5.7;
    s.cert.config["r_N"] = -4.6;
    s.cert.config["lambda"] = lambda;
    s.cert.config["mu"] = mu;
    CaseResult out;

    const Section sec = Section::coordinate(3, 0, 0.0, CrossingDirection::positive);
    PoincareMap P(f, sec, s.solver);
    int row = 0;
    auto py = [&](const IVec& piece) {
        const IVec h = P(sec.embed(piece), 2).image.hull();
        out.rows.push_back({row, h[0], h[1]});
        return h[0];
    };
    const std::vector<CoveringEdge> edges{
        {"pi_y P^2 on {l_M} x Z < l_M", IVec{from_decimal("-8.4"), Z}, "<", below("-8.4")},
        {"pi_y P^2 on {r_M} x Z > r_N", IVec{from_decimal("-7.6"), Z}, ">", above("-4.6")},
        {"pi_y P^2 on {r_N} x Z < l_M", IVec{from_decimal("-4.6"), Z}, "<", below("-8.4")},
        {"pi_y P^2 on {l_N} x Z > r_N", IVec{from_decimal("-5.7"), Z}, ">", above("-4.6")},
    };
    for (const auto& e : edges) {
        s.cert.merge(covering_check("covering", {e}, py, 12));
        ++row;
    }

    // Cone condition over an adaptive cover of M ∪ N: pieces failing on their
    // own are bisected in y, up to 8 levels.
    std::vector<IMat> DPs;
    std::function<void(const IVec&, int)> cover = [&](const IVec& piece, int depth) {
        IMat DP;
        try {
            DP = *P.derivative(sec.embed_c1(piece), 2).DP;
        } catch (const Error& e) {
            if (depth >= 8) throw;
            DP = IMat::identity(2);  // forces a split
        }
        if (depth < 8 && !cone_condition("piece", {DP}, lambda, mu).overall) {
            const double m = mid(piece[0]);
            cover(IVec{Interval(piece[0].lo(), m), piece[1]}, depth + 1);
            cover(IVec{Interval(m, piece[0].hi()), piece[1]}, depth + 1);
            return;
        }
        DPs.push_back(DP);
    };
    const int K = s.subdivisions;
    try {
        for (const Interval& set : {decimal_interval("-8.4", "-7.6"), decimal_interval("-5.7", "-4.6")})
            for (int i = 0; i < K; ++i) {
                const double a = i == 0 ? set.lo() : set.lo() + (set.hi() - set.lo()) * i / K;
                const double b = i == K - 1 ? set.hi() : set.lo() + (set.hi() - set.lo()) * (i + 1) / K;
                cover(IVec{Interval(a, b), Z}, 0);
            }
        s.cert.merge(cone_condition("cone", DPs, lambda, mu));
    } catch (const Error& e) {
        s.cert.add_failure(std::string("cone cover: ") + e.what());
    }
    s.cert.config["cone_pieces"] = DPs.size();
    out.certificate = std::move(s.cert);
    return out;
}

// ---- bvp-nakao ----------------------------------------------------------------

Certificate nakao_zero(const std::string& name, const char* source, const char* center, const SolverConfig& sc) {
    const auto f = parse_field(source);
    const Interval T = Interval(2.0) * pi();
    const Interval c = from_decimal(center);
    const double radius = 1e-4;
    const IVec x0{c};
    const IVec X{c + Interval(-radius, radius)};
    NewtonProblem F{[&](const IVec& x) {
                        return IVec{integrate_to(f, from_box(IVec{x[0], Interval(0.0)}), T, sc).hull()[1]};
                    },
                    [&](const IVec& B) {
                        IMat J(1, 1);
                        J(0, 0) = integrate_c1(f, c1_from(from_box(IVec{B[0], Interval(0.0)})), T, sc).V()(1, 0);
                        return J;
                    }};
    Certificate cert;
    cert.claim_id = name;
    const NewtonVerdict v = interval_newton(F, x0, X, 0);
    if (v.N.size() == 0) {
        cert.add_failure("Newton operator undefined (singular Jacobian)");
        return cert;
    }
    cert.add("N lower end inside X", v.N[0], ">", X[0].lo());
    cert.add("N upper end inside X", v.N[0], "<", X[0].hi());
    if (v.status == NewtonVerdict::Status::unique_zero) {
        const NewtonVerdict r = newton_refine(F, v);
        cert.add(std::string("|x* - (") + center + ")|", abs(r.refined[0] - c), "<=", below("0.0001"));
    }
    return cert;
}

CaseResult bvp_nakao(const CaseConfig& cfg) {
    const auto f = parse_field(kNakao);
    Setup s = setup(cfg, {20, 1e-12, 1}, kNakao, f);
    s.cert.config["mirror_field"] = kNakaoMirror;
    CaseResult out;
    try {
        merge_as(s.cert, "x* near -0.5072", nakao_zero("nakao", kNakao, "-0.5072", s.solver));
        merge_as(s.cert, "forcing -0.4464 cos t, x* near 0.5072", nakao_zero("mirror", kNakaoMirror, "0.5072", s.solver));
    } catch (const Error& e) {
        s.cert.add_failure(e.what());
    }
    out.certificate = std::move(s.cert);
    return out;
}

// ---- lorenz-coords ------------------------------------------------------------

CaseResult lorenz_coords(const CaseConfig& cfg) {
    auto f = parse_field(kLorenz);
    f.set_parameter("s", Interval(10.0));
    f.set_parameter("r", Interval(28.0));
    f.set_parameter("q", Interval(8.0) / Interval(3.0));
    Setup s = setup(cfg, {20, 1e-10, 10}, kLorenz, f);
    CaseResult out;

    const Interval alpha = Interval(7.0) * pi() / Interval(18.0);
    const Interval ca = cos(alpha), sa = sin(alpha);
    const IMat Qinv{{ca, sa}, {-sa, ca}};
    const Interval S = decimal_interval("0.625", "0.675");
    const Section sec = Section::coordinate(3, 2, 27.0, CrossingDirection::both);
    PoincareMap P(f, sec, s.solver);

    std::optional<Interval> composed, pipelined;
    const int N = s.subdivisions;
    for (int i = 0; i < N; ++i) {
        const double a = i == 0 ? S.lo() : S.lo() + (S.hi() - S.lo()) * i / N;
        const double b = i == N - 1 ? S.hi() : S.lo() + (S.hi() - S.lo()) * (i + 1) / N;
        const double c = 0.5 * (a + b);
        // u = Q_α·(s, 0) on {z = 27}, parametrized by s − c.
        const IVec x0{Interval(c) * ca, Interval(c) * sa, Interval(27.0)};
        IMat C(3, 1);
        C(0, 0) = ca;
        C(1, 0) = sa;
        C(2, 0) = Interval(0.0);
        const IVec r0{Interval(a) - Interval(c), Interval(b) - Interval(c)};
        try {
            const auto r = P(from_affine(x0, C, IVec{hull(r0[0], r0[1])}), 2);
            const Interval one = linear_image(Qinv, r.image).hull()[1];
            const Interval two = (Qinv * r.image.hull())[1];
            out.rows.push_back({i, r.image.hull()[0], r.image.hull()[1]});
            composed = composed ? hull(*composed, one) : one;
            pipelined = pipelined ? hull(*pipelined, two) : two;
        } catch (const Error& e) {
            s.cert.add_failure("piece " + std::to_string(i) + ": " + e.what());
        }
    }
    if (composed && pipelined) {
        s.cert.config["composed_bound"] = bounds(*composed);
        s.cert.config["pipelined_bound"] = bounds(*pipelined);
        s.cert.add("|pi_y (Q^-1 P^2)(u)|, composed", abs(*composed), "<", below("3.6"));
        s.cert.add("diam of composed bound below diam of pipelined bound", Interval(diam(*composed)), "<",
                   diam(*pipelined));
    }
    out.certificate = std::move(s.cert);
    return out;
}

// ---- pendulum-repr ------------------------------------------------------------

CaseResult pendulum_repr(const CaseConfig& cfg) {
    const auto f = parse_field(kPendulum);
    Setup s = setup(cfg, {20, 1e-10, 1}, kPendulum, f);
    CaseResult out;
    const DoubletonSet seg = from_affine(IVec{Interval(2.5), Interval(2.5)}, IMat{{1.0, 1.0}, {-1.0, 1.0}},
                                         IVec{Interval(-0.5, 0.5), Interval(0.0)});
    const DoubletonSet box = from_box(seg.hull());
    const DoubletonSet d = integrate_to(f, seg, 2.0, s.solver);
    const DoubletonSet b = integrate_to(f, box, 2.0, s.solver);
    const IVec hd = d.hull(), hb = b.hull();
    out.rows.push_back({0, hd[0], hd[1]});
    out.rows.push_back({1, hb[0], hb[1]});
    s.cert.config["segment_hull"] = bounds(hd);
    s.cert.config["box_hull"] = bounds(hb);
    s.cert.add("diam x(2): segment vs box", Interval(diam(hd[0])), "<", diam(hb[0]));
    s.cert.add("diam x'(2): segment vs box", Interval(diam(hd[1])), "<", diam(hb[1]));
    out.certificate = std::move(s.cert);
    return out;
}

}  // namespace

const std::vector<std::string>& case_names() {
    static const std::vector<std::string> names{"michelson-symmetric", "rossler-trap",  "rossler-periodic",
                                                "rossler-horseshoe",   "bvp-nakao",     "lorenz-coords",
                                                "pendulum-repr"};
    return names;
}

CaseResult run_case(const CaseConfig& cfg) {
    if (cfg.name == "rossler-trap") return rossler_trap(cfg);
    if (cfg.name == "michelson-symmetric") return michelson_symmetric(cfg);
    if (cfg.name == "rossler-periodic") return rossler_periodic(cfg);
    if (cfg.name == "rossler-horseshoe") return rossler_horseshoe(cfg);
    if (cfg.name == "bvp-nakao") return bvp_nakao(cfg);
    if (cfg.name == "lorenz-coords") return lorenz_coords(cfg);
    if (cfg.name == "pendulum-repr") return pendulum_repr(cfg);
    throw DomainError("unknown case '" + cfg.name + "'");
}

std::string enclosures_csv(const std::string& case_name, const std::vector<EnclosureRow>& rows) {
    std::string out = "case,piece_id,x_lo,x_hi,y_lo,y_hi\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,%.17g,%.17g\n", r.piece_id, r.x.lo(), r.x.hi(), r.y.lo(),
                      r.y.hi());
        out += case_name + buf;
    }
    return out;
}

std::pair<double, double> michelson_return(double y, double c) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 3>;
    auto rhs = [c](const State& x, State& d, double) {
        d[0] = x[1];
        d[1] = x[2];
        d[2] = c * c - x[1] - 0.5 * x[0] * x[0];
    };
    auto stepper = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
    stepper.initialize(State{0.0, y, 0.0}, 0.0, 0.01);
    bool armed = false;
    while (stepper.current_time() < 200.0) {
        const auto [t0, t1] = stepper.do_step(rhs);
        const State a = stepper.previous_state(), b = stepper.current_state();
        if (std::fabs(b[0]) > 1e3) break;
        if (armed && (a[0] > 0.0) != (b[0] > 0.0)) {
            double lo = t0, hi = t1;
            State x;
            for (int k = 0; k < 80; ++k) {
                const double m = 0.5 * (lo + hi);
                stepper.calc_state(m, x);
                ((x[0] > 0.0) == (a[0] > 0.0) ? lo : hi) = m;
            }
            stepper.calc_state(0.5 * (lo + hi), x);
            return {x[1], x[2]};
        }
        if (std::fabs(b[0]) > 1e-6) armed = true;
    }
    throw NoCrossing("Michelson shooting: no return to x = 0");
}

std::vector<double> michelson_symmetric_zeros(double c, double lo, double hi, double scan) {
    std::vector<double> zeros;
    auto g = [c](double y) -> std::optional<double> {
        try {
            return michelson_return(y, c).second;
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    double prev_y = lo;
    std::optional<double> prev = lo > 0.0 ? g(lo) : std::nullopt;
    const int n = static_cast<int>(std::ceil((hi - lo) / scan));
    for (int k = 1; k <= n; ++k) {
        const double y = std::min(hi, lo + k * scan);
        const auto v = g(y);
        if (prev && v && (*prev > 0.0) != (*v > 0.0)) {
            double a = prev_y, b = y;
            const bool a_pos = *prev > 0.0;
            for (int i = 0; i < 60 && b - a > 1e-14; ++i) {
                const double m = 0.5 * (a + b);
                const auto gm = g(m);
                if (!gm) break;
                ((*gm > 0.0) == a_pos ? a : b) = m;
            }
            zeros.push_back(0.5 * (a + b));
        }
        prev_y = y;
        prev = v;
    }
    return zeros;
}

}  // namespace vode
