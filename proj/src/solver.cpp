#include "vode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <type_traits>
#include <string>

namespace vode {

namespace {

// Σ c_k h^k by Horner.
template <class T>
T horner(const std::vector<T>& c, const Interval& h) {
    T acc = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) acc = h * acc + c[k];
    return acc;
}

// 10% inflation of each component, plus a sliver of the largest one so that
// components which are exactly zero can still absorb coupling.
IVec spread(const IVec& F) {
    const double m = norm_inf(F);
    IVec out(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) out[i] = widen(F[i], 0.1 * mag(F[i]) + 1e-3 * m);
    return out;
}

const IVec& hull_of(const BoxSet& s, IVec&) { return s.box; }
template <class Set>
const IVec& hull_of(const Set& s, IVec& scratch) {
    scratch = s.hull();
    return scratch;
}

IVec center_of(const BoxSet& s) { return s.center(); }
template <class Set>
IVec center_of(const Set& s) {
    return s.center();
}

Interval& time_of(BoxSet& s) { return s.time; }
Interval& time_of(DoubletonSet& s) { return s.time; }
Interval& time_of(TripletonSet& s) { return s.time; }
Interval& time_of(C1DoubletonSet& s) { return s.base.time; }

}  // namespace

void SolverConfig::validate() const {
    if (order < 2) throw DomainError("solver order must be at least 2");
    if (!(h_min > 0.0) || !(h_min < h_max)) throw DomainError("need 0 < h_min < h_max");
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
    if (max_steps < 1) throw DomainError("max_steps must be positive");
}

FlowEnclosure rough_enclosure(const VectorField& f, const Interval& t, const IVec& hullbox, double h,
                              const SolverConfig& cfg) {
    if (!(h > 0.0)) throw DomainError("rough_enclosure needs h > 0");
    IVec F = eval(f, t + Interval(0.0, h), hullbox);
    for (int attempt = 0; attempt < 30; ++attempt) {
        const Interval span(0.0, h);
        const Interval times = t + span;
        const IVec Fc = spread(F);
        const IVec Z = hullbox + span * Fc;
        const IVec Fz = eval(f, times, Z);
        if (subset(Fz, Fc)) return {Z, h, {}, {}};
        F = hull(F, Fz);
        // Three inflations per step size, then shorten the step.
        if (attempt % 3 == 2) {
            h *= 0.5;
            if (h < cfg.h_min)
                throw StepTooSmall("rough enclosure failed down to h = " + std::to_string(h));
            F = eval(f, t + Interval(0.0, h), hullbox);
        }
    }
    throw StepTooSmall("rough enclosure did not validate in 30 attempts");
}

std::optional<FlowEnclosure> high_order_enclosure(const VectorField& f, const Interval& t, const IVec& hullbox,
                                                  double h, int k) {
    if (!(h > 0.0) || k < 1) throw DomainError("high_order_enclosure needs h > 0 and k >= 1");
    const Interval span(0.0, h);
    TaylorJet J;
    try {
        J = ode_taylor(f, t, hullbox, k - 1);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    IVec Y0 = J.coeffs[0];
    for (int i = 1; i < k; ++i) Y0 = Y0 + pow_int(span, i) * J.coeffs[i];
    const Interval hk = pow_int(span, k);
    IVec Z = spread(Y0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        TaylorJet E;
        try {
            E = ode_taylor(f, t + span, Z, k);
        } catch (const DomainError&) {
            return std::nullopt;
        }
        if (!std::isfinite(max_diam(E.coeffs[k]))) return std::nullopt;
        const IVec Y = Y0 + hk * E.coeffs[k];
        if (subset(Y, Z)) return FlowEnclosure{Y, h, {}, {}};
        Z = spread(hull(Z, Y));
    }
    return std::nullopt;
}

IMat variational_rough_enclosure(const VectorField& f, const Interval& t, const IVec& Z, double h) {
    const std::size_t n = Z.size();
    const Interval span(0.0, h);
    const IMat J = jacobian(f, t + span, Z);
    const IMat I = IMat::identity(n);
    // Gronwall: ‖V(s) − I‖ ≤ e^{s‖J‖} − 1.
    const double beta = (exp(Interval(h) * Interval(norm_inf(J))) - Interval(1.0)).hi();
    IMat W(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) W(i, j) = I(i, j) + ball(beta);
    // Picard contraction on the linear equation tightens it.
    for (int k = 0; k < 4; ++k) {
        const IMat P = I + span * (J * W);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) W(i, j) = intersect(W(i, j), P(i, j)).value_or(W(i, j));
    }
    return W;
}

Solver::Solver(VectorField f, SolverConfig cfg) : f_(std::move(f)), cfg_(cfg) { cfg_.validate(); }

double Solver::suggest_step(const TaylorJet& jet) const {
    const int p = jet.order();
    const double norm = norm_inf(jet.coeffs[p]);
    double h = cfg_.h_max;
    if (norm > 0.0 && std::isfinite(norm)) h = std::pow(cfg_.tolerance / norm, 1.0 / p);
    if (!std::isfinite(norm)) h = cfg_.h_min;
    return std::clamp(h, cfg_.h_min, cfg_.h_max);
}

FlowEnclosure Solver::enclose(const Interval& t, const IVec& hull, double h) const {
    const int p = cfg_.order;
    // The high-order form admits much longer steps than the first-order
    // Picard inclusion; its steps are kept only while the Taylor remainder
    // stays within the tolerance.
    double trial = h;
    for (int attempt = 0; attempt < 8 && trial >= cfg_.h_min; ++attempt) {
        auto e = high_order_enclosure(f_, t, hull, trial, p);
        if (!e) {
            trial *= 0.5;
            continue;
        }
        IVec c = ode_taylor(f_, t + Interval(0.0, trial), e->Z, p + 1).coeffs[p + 1];
        const double r = (pow_int(Interval(trial), p + 1) * Interval(norm_inf(c))).hi();
        if (r <= cfg_.tolerance) {
            e->remainder = std::move(c);
            return std::move(*e);
        }
        trial *= std::clamp(0.9 * std::pow(cfg_.tolerance / r, 1.0 / (p + 1)), 0.1, 0.7);
    }
    return rough_enclosure(f_, t, hull, h, cfg_);
}

template <class Set>
void Solver::advance_impl(Set& s, const FlowEnclosure& enc, const Interval& h, bool c1) const {
    if (h.lo() < 0.0 || h.hi() > enc.h) throw DomainError("advance time outside the enclosure's range");
    const int p = cfg_.order;
    const std::size_t n = f_.dimension();
    Interval& t = time_of(s);
    IVec scratch;
    const IVec& hull = hull_of(s, scratch);
    const IVec center = center_of(s);
    const Interval tz = t + Interval(0.0, h.hi());

    const TaylorJet cj = enc.jet.coeffs.empty() ? ode_taylor(f_, t, center, p) : enc.jet;
    std::vector<IVec> cc(cj.coeffs.begin(), cj.coeffs.begin() + p + 1);
    const IVec center_image = horner(cc, h);

    const Interval hp = pow_int(h, p + 1);
    const IVec rem = hp * (enc.remainder.size() == n ? enc.remainder : ode_taylor(f_, tz, enc.Z, p + 1).coeffs[p + 1]);

    const VariationalJet vj = variational_taylor(f_, t, hull, IMat::identity(n), p);
    const IMat A = horner(vj.V, h);

    if constexpr (std::is_same_v<Set, C1DoubletonSet>) {
        IMat D = A;
        if (c1) {
            const IMat W = variational_rough_enclosure(f_, t, enc.Z, h.hi());
            D = A + hp * variational_taylor(f_, tz, enc.Z, W, p + 1).V[p + 1];
        }
        s.base = affine_advance(s.base, A, rem, center_image);
        advance_derivative(s, D);
    } else {
        (void)c1;
        s = affine_advance(s, A, rem, center_image);
    }
    t = t + h;
}

void Solver::advance(BoxSet& s, const FlowEnclosure& enc, const Interval& h) const { advance_impl(s, enc, h, false); }
void Solver::advance(DoubletonSet& s, const FlowEnclosure& enc, const Interval& h) const {
    advance_impl(s, enc, h, false);
}
void Solver::advance(TripletonSet& s, const FlowEnclosure& enc, const Interval& h) const {
    advance_impl(s, enc, h, false);
}
void Solver::advance(C1DoubletonSet& s, const FlowEnclosure& enc, const Interval& h) const {
    advance_impl(s, enc, h, true);
}

template <class Set>
FlowEnclosure Solver::step_impl(Set& s, double limit) {
    const Interval t = time_of(s);
    IVec scratch;
    const IVec& hull = hull_of(s, scratch);
    TaylorJet cj = ode_taylor(f_, t, center_of(s), cfg_.order);
    const double h = std::min(suggest_step(cj), limit);
    FlowEnclosure enc = enclose(t, hull, h);
    enc.jet = std::move(cj);
    advance(s, enc, Interval(enc.h));
    ++steps_;
    return enc;
}

FlowEnclosure Solver::step(BoxSet& s, double limit) { return step_impl(s, limit); }
FlowEnclosure Solver::step(DoubletonSet& s, double limit) { return step_impl(s, limit); }
FlowEnclosure Solver::step(TripletonSet& s, double limit) { return step_impl(s, limit); }
FlowEnclosure Solver::step(C1DoubletonSet& s, double limit) { return step_impl(s, limit); }

template <class Set>
Set Solver::integrate_impl(Set s, const Interval& T) {
    if (T.hi() < time_of(s).lo()) throw DomainError("integration target precedes the current time");
    for (long k = 0;; ++k) {
        if (k >= cfg_.max_steps) throw MaxStepsExceeded("max_steps reached before the target time");
        const Interval t = time_of(s);
        const Interval remaining = T - t;
        if (remaining.hi() <= 0.0) return s;

        IVec scratch;
        const IVec& hull = hull_of(s, scratch);
        TaylorJet cj = ode_taylor(f_, t, center_of(s), cfg_.order);
        const double h = suggest_step(cj);
        if (h < remaining.hi()) {
            FlowEnclosure enc = enclose(t, hull, h);
            enc.jet = std::move(cj);
            advance(s, enc, Interval(enc.h));
            ++steps_;
            continue;
        }
        // Final step: an interval step so the set lands on T exactly.
        FlowEnclosure enc = enclose(t, hull, remaining.hi());
        enc.jet = std::move(cj);
        if (enc.h < remaining.hi()) {
            advance(s, enc, Interval(enc.h));
            ++steps_;
            continue;
        }
        advance(s, enc, Interval(std::max(0.0, remaining.lo()), remaining.hi()));
        ++steps_;
        time_of(s) = T;
        return s;
    }
}

BoxSet Solver::integrate_to(BoxSet s, const Interval& T) { return integrate_impl(std::move(s), T); }
DoubletonSet Solver::integrate_to(DoubletonSet s, const Interval& T) { return integrate_impl(std::move(s), T); }
TripletonSet Solver::integrate_to(TripletonSet s, const Interval& T) { return integrate_impl(std::move(s), T); }
C1DoubletonSet Solver::integrate_to(C1DoubletonSet s, const Interval& T) { return integrate_impl(std::move(s), T); }

}  // namespace vode
