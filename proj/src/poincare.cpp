#include "vode/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>

namespace vode {

namespace {

Interval dot(const IVec& a, const IVec& b) {
    Interval s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

int sign_of(const Interval& g) { return g.lo() > 0.0 ? 1 : (g.hi() < 0.0 ? -1 : 0); }

DoubletonSet& base_of(DoubletonSet& s) { return s; }
DoubletonSet& base_of(C1DoubletonSet& s) { return s.base; }
const DoubletonSet& base_of(const DoubletonSet& s) { return s; }
const DoubletonSet& base_of(const C1DoubletonSet& s) { return s.base; }

}  // namespace

Section Section::coordinate(std::size_t dimension, std::size_t index, double value, CrossingDirection direction) {
    if (index >= dimension || dimension < 2) throw DimensionMismatch("section coordinate index out of range");
    Section s;
    s.normal_ = IVec(dimension, Interval(0.0));
    s.normal_[index] = Interval(1.0);
    s.origin_ = IVec(dimension, Interval(0.0));
    s.origin_[index] = Interval(value);
    s.level_ = Interval(value);
    s.basis_ = DMat(dimension, dimension - 1, 0.0);
    for (std::size_t i = 0, j = 0; i < dimension; ++i)
        if (i != index) s.basis_(i, j++) = 1.0;
    s.index_ = index;
    s.direction_ = direction;
    return s;
}

Section Section::affine(const DVec& normal, const DVec& offset, CrossingDirection direction) {
    const std::size_t n = normal.size();
    if (offset.size() != n || n < 2) throw DimensionMismatch("affine section dimensions");
    if (!(norm_inf(normal) > 0.0)) throw DomainError("section normal must not vanish");
    Section s;
    s.normal_ = to_interval(normal);
    s.origin_ = to_interval(offset);
    s.level_ = dot(s.normal_, s.origin_);
    // Complete n with the identity columns least aligned with it, then
    // orthonormalize; the trailing columns span the complement.
    std::size_t skip = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(normal[i]) > std::fabs(normal[skip])) skip = i;
    DMat a(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a(i, 0) = normal[i];
    for (std::size_t i = 0, j = 1; i < n; ++i)
        if (i != skip) a(i, j++) = 1.0;
    const DMat q = near_orthogonalize(a).q;
    s.basis_ = DMat(n, n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) s.basis_(i, j - 1) = q(i, j);
    s.direction_ = direction;
    return s;
}

Interval Section::value(const IVec& x) const {
    if (x.size() != dimension()) throw DimensionMismatch("section value");
    if (index_) return x[*index_] - level_;
    return dot(normal_, x) - level_;
}

Interval Section::value(const DoubletonSet& s) const {
    if (s.dimension() != dimension()) throw DimensionMismatch("section value");
    const std::size_t n = dimension();
    // nᵀx + (nᵀC)·r0 + (nᵀQ)·q
    IVec nc(s.C.cols(), Interval(0.0)), nq(n, Interval(0.0));
    for (std::size_t j = 0; j < s.C.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) nc[j] += normal_[i] * s.C(i, j);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) nq[j] += normal_[i] * s.Q(i, j);
    return dot(normal_, s.x) + dot(nc, s.r0) + dot(nq, s.q) - level_;
}

IVec Section::to_chart(const IVec& x) const {
    if (x.size() != dimension()) throw DimensionMismatch("to_chart");
    if (index_) {
        IVec y;
        y = IVec(dimension() - 1);
        for (std::size_t i = 0, j = 0; i < dimension(); ++i)
            if (i != *index_) y[j++] = x[i];
        return y;
    }
    return transpose(basis_) * (x - origin_);
}

DoubletonSet Section::to_chart(const DoubletonSet& s) const {
    const DMat Bt = transpose(basis_);
    const IVec xc = to_chart(s.x);
    IMat C = Bt * s.C;
    if (index_) {
        // Dropping a coordinate is exact; keep the (chart-sized) Q frame.
        C = IMat(chart_dimension(), s.C.cols());
        for (std::size_t i = 0, k = 0; i < dimension(); ++i) {
            if (i == *index_) continue;
            for (std::size_t j = 0; j < s.C.cols(); ++j) C(k, j) = s.C(i, j);
            ++k;
        }
    }
    DoubletonSet out = from_affine(xc, C, s.r0, s.time);
    // The Q·q part projects to a chart box added to the q frame.
    const IVec qpart = Bt * (s.Q * s.q);
    out.q = out.q + qpart;
    return out;
}

DoubletonSet Section::embed(const IVec& chart_box, const Interval& time) const {
    if (chart_box.size() != chart_dimension()) throw DimensionMismatch("embed");
    const IVec c = to_interval(mid(chart_box));
    const IVec x0 = origin_ + basis_ * c;
    return from_affine(x0, to_interval(basis_), chart_box - c, time);
}

C1DoubletonSet Section::embed_c1(const IVec& chart_box, const Interval& time) const {
    return c1_from(embed(chart_box, time), to_interval(basis_));
}

PoincareMap::PoincareMap(VectorField f, Section section, SolverConfig cfg, double max_time)
    : solver_(std::move(f), cfg), section_(std::move(section)), max_time_(max_time) {
    if (section_.dimension() != solver_.field().dimension()) throw DimensionMismatch("section and field dimensions");
}

PoincareResult PoincareMap::operator()(const DoubletonSet& start, int n_iter) { return run(start, n_iter); }

PoincareResult PoincareMap::derivative(const C1DoubletonSet& start, int n_iter) { return run(start, n_iter); }

template <class Set>
PoincareResult PoincareMap::run(Set s, int n_iter) {
    if (n_iter < 1) throw DomainError("n_iter must be at least 1");
    const VectorField& f = solver_.field();
    const SolverConfig& cfg = solver_.config();
    const std::size_t n = f.dimension();
    const IVec& nrm = section_.normal();
    const DVec nmid = mid(nrm);
    const Interval t_start = base_of(s).time;
    PoincareResult result;
    constexpr bool c1 = std::is_same_v<Set, C1DoubletonSet>;
    IMat DP_ambient;  // product of the ambient derivative factors (with the embedding)

    for (int it = 0; it < n_iter; ++it) {
        const Interval S0 = section_.value(base_of(s));
        const double threshold = 10.0 * diam(S0) + 1e-6;
        auto escaped = [&](const Interval& v) { return v.lo() > threshold || v.hi() < -threshold; };
        bool armed = escaped(S0);
        double limit = std::numeric_limits<double>::infinity();
        long steps = 0;

        for (;;) {
            if (++steps > cfg.max_steps) throw MaxStepsExceeded("no section crossing within max_steps");
            DoubletonSet& b = base_of(s);
            if ((b.time - t_start).lo() > max_time_) throw NoCrossing("no section crossing within the time limit");

            TaylorJet cj = ode_taylor(f, b.time, b.x, cfg.order);
            const double h = std::min(solver_.suggest_step(cj), limit);
            FlowEnclosure enc = solver_.enclose(b.time, b.hull(), h);
            enc.jet = std::move(cj);

            auto commit = [&](double dt) {
                solver_.advance(s, enc, Interval(dt));
                limit = std::numeric_limits<double>::infinity();
                if (!armed && escaped(section_.value(base_of(s)))) armed = true;
            };

            const Interval SZ = section_.value(enc.Z);
            if (!armed || !contains_zero(SZ)) {
                commit(enc.h);
                continue;
            }
            const Interval G = dot(nrm, eval(f, b.time + Interval(0.0, enc.h), enc.Z));
            const int g_sign = sign_of(G);
            if (g_sign == 0) {
                if (enc.h * 0.5 < cfg.h_min)
                    throw TransversalityFailure("<grad S, f> contains 0 on the crossing enclosure");
                limit = enc.h * 0.5;
                continue;
            }
            const int s_sign = sign_of(section_.value(b));
            if (s_sign == g_sign || s_sign == 0) {
                // Moving away from the section (or already straddling after an
                // ignored crossing): nothing to count in this step.
                commit(enc.h);
                if (s_sign == 0) armed = escaped(section_.value(base_of(s)));
                continue;
            }
            const CrossingDirection dir = section_.direction();
            if ((dir == CrossingDirection::positive && g_sign < 0) ||
                (dir == CrossingDirection::negative && g_sign > 0)) {
                commit(enc.h);
                armed = escaped(section_.value(base_of(s)));
                continue;
            }

            // Cheap test on this step alone: Newton from the end of the step
            // either shows that nothing crosses yet or brackets where crossing starts.
            {
                DoubletonSet Y = base_of(s);
                solver_.advance(Y, enc, Interval(enc.h));
                const Interval N = Interval(enc.h) - section_.value(Y) / G;
                const auto Ni = intersect(N, Interval(0.0, enc.h));
                if (!Ni) {
                    commit(enc.h);
                    continue;
                }
                if (Ni->lo() > 0.05 * enc.h) {
                    commit(Ni->lo());
                    continue;
                }
            }

            // The crossing starts within this step. Collect steps until the
            // whole set lies past the section; ⟨n, f⟩ keeps one sign on all of
            // them, so every trajectory crosses exactly once inside the window.
            struct Piece {
                Set start;
                FlowEnclosure enc;
            };
            const DoubletonSet from = base_of(s);
            std::vector<Piece> win{{s, enc}};
            Set cur = s;
            solver_.advance(cur, enc, Interval(enc.h));
            Interval Gw = G;
            while (sign_of(section_.value(base_of(cur))) != g_sign) {
                if (win.size() >= 10000) throw TransversalityFailure("crossing window does not close");
                const DoubletonSet& cb = base_of(cur);
                TaylorJet jet = ode_taylor(f, cb.time, cb.x, cfg.order);
                double hw = solver_.suggest_step(jet);
                FlowEnclosure e;
                for (;;) {
                    e = solver_.enclose(cb.time, cb.hull(), hw);
                    const Interval Ge = dot(nrm, eval(f, cb.time + Interval(0.0, e.h), e.Z));
                    if (sign_of(Ge) == g_sign) {
                        Gw = hull(Gw, Ge);
                        break;
                    }
                    hw = e.h * 0.5;
                    if (hw < cfg.h_min) throw TransversalityFailure("<grad S, f> contains 0 inside the crossing window");
                }
                e.jet = std::move(jet);
                win.push_back({cur, e});
                solver_.advance(cur, e, Interval(e.h));
            }

            // Pieces of the window that meet a relative time range R, with the
            // local advance time inside each.
            auto each_piece = [&](const Interval& R, auto&& fn) {
                for (const Piece& p : win) {
                    const Interval t0 = base_of(p.start).time - from.time;
                    const auto local = intersect(R - t0, Interval(0.0, p.enc.h));
                    if (local) fn(p, *local);
                }
            };
            auto field_over = [&](const Interval& R) {
                std::optional<IVec> F;
                each_piece(R, [&](const Piece& p, const Interval& local) {
                    DoubletonSet y = base_of(p.start);
                    solver_.advance(y, p.enc, local);
                    const IVec Fy = eval(f, y.time, y.hull());
                    F = F ? hull(*F, Fy) : Fy;
                });
                if (!F) throw TransversalityFailure("crossing bracket left the window");
                return *F;
            };
            auto state_at = [&](double tau) {
                for (const Piece& p : win) {
                    const DoubletonSet& b0 = base_of(p.start);
                    const double t0 = mid(b0.time - from.time);
                    if (tau <= t0 + p.enc.h || &p == &win.back()) {
                        DoubletonSet y = b0;
                        solver_.advance(y, p.enc, Interval(std::clamp(tau - t0, 0.0, p.enc.h)));
                        return y;
                    }
                }
                return from;
            };

            // Interval Newton on the crossing time: T ∋ τ(x) for every x.
            const Interval t_end = base_of(cur).time - from.time;
            Interval T(0.0, t_end.hi());
            Interval Gt = Gw;
            double tau;
            {
                const double s0 = mid(section_.value(from)), s1 = mid(section_.value(base_of(cur)));
                tau = std::clamp(t_end.hi() * s0 / (s0 - s1), 0.0, t_end.hi());
            }
            DoubletonSet Y;
            Interval SY, rel;
            for (int pass = 0; pass < 40; ++pass) {
                Y = state_at(tau);
                rel = Y.time - from.time;
                SY = section_.value(Y);
                const auto Ni = intersect(rel - SY / Gt, T);
                if (!Ni) throw TransversalityFailure("inconsistent crossing-time bracket");
                const double before = diam(T);
                T = *Ni;
                const double improvement = before > 0.0 ? 1.0 - diam(T) / before : 0.0;
                Gt = intersect(Gt, dot(nrm, field_over(T))).value_or(Gt);
                if (pass > 0 && improvement < 0.01) break;
                tau = std::clamp(mid(rel) - mid(SY) / mid(Gt), T.lo(), T.hi());
            }

            // Project Y onto the section along the flow:
            // z = y − w·S(y) with w = f/⟨n, f⟩ over the trajectories between Y and the crossing.
            const IVec F = field_over(hull(T, rel));
            const Interval nf = dot(nrm, F);
            IVec W(n);
            for (std::size_t i = 0; i < n; ++i) W[i] = F[i] / nf;
            const DVec wm = mid(W);
            IMat M = IMat::identity(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) M(i, j) = M(i, j) - Interval(wm[i]) * nrm[j];
            IVec shift(n);
            const Interval level = dot(nrm, section_.origin());
            for (std::size_t i = 0; i < n; ++i) shift[i] = Interval(wm[i]) * level - (W[i] - Interval(wm[i])) * SY;
            DoubletonSet image = translate(linear_image(M, Y), shift);
            image.time = from.time + T;
            result.crossing_signs.push_back(g_sign);

            if constexpr (c1) {
                std::optional<IMat> V;
                each_piece(T, [&](const Piece& p, const Interval& local) {
                    C1DoubletonSet y = p.start;
                    solver_.advance(y, p.enc, local);
                    V = V ? hull(*V, y.V()) : y.V();
                });
                IMat Pn = IMat::identity(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) Pn(i, j) = Pn(i, j) - W[i] * nrm[j];
                DP_ambient = Pn * *V;
                s = c1_from(image, DP_ambient);
            } else {
                s = image;
            }
            break;
        }
    }

    const DoubletonSet& fin = base_of(s);
    result.ambient = fin;
    result.image = section_.to_chart(fin);
    result.return_time = fin.time - t_start;
    if constexpr (c1) result.DP = transpose(section_.basis()) * DP_ambient;
    return result;
}

template PoincareResult PoincareMap::run(DoubletonSet, int);
template PoincareResult PoincareMap::run(C1DoubletonSet, int);

}  // namespace vode
