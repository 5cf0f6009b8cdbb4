#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "vode/sets.hpp"
#include "vode/vector_field.hpp"

namespace vode {

struct SolverConfig {
    int order = 20;
    double tolerance = 1e-10;  // per-step local error target
    double h_min = 1e-8;
    double h_max = 0.5;
    long max_steps = 1'000'000;

    /// Throws DomainError unless order >= 2 and 0 < h_min < h_max.
    void validate() const;
};

/// Rough enclosure of one step: every trajectory from the hull stays in Z on
/// [t, t+h]. `jet` holds the Taylor coefficients at the set's center when the
/// enclosure was produced by a solver step (empty otherwise).
struct FlowEnclosure {
    IVec Z;
    double h = 0.0;
    TaylorJet jet;
    IVec remainder;  // x_[p+1] over t+[0,h] × Z when already computed
};

/// Validated Picard inclusion hullbox + [0,h]·f(t+[0,h], Z) ⊆ Z. The trial step
/// is halved when validation keeps failing; throws StepTooSmall once it falls
/// below cfg.h_min.
FlowEnclosure rough_enclosure(const VectorField& f, const Interval& t, const IVec& hullbox, double h,
                              const SolverConfig& cfg = {});

/// High-order enclosure: with Y = Σ_{i<k} [0,h]^i x_[i](t, hullbox) + [0,h]^k x_[k](t+[0,h], Z),
/// Y ⊆ Z proves every trajectory from the hull stays in Y on [t, t+h].
/// Returns nullopt when the inclusion does not validate.
std::optional<FlowEnclosure> high_order_enclosure(const VectorField& f, const Interval& t, const IVec& hullbox,
                                                  double h, int k);

/// Enclosure of D_xφ(s, x) for s ∈ [0, h] and every x whose trajectory stays in Z.
IMat variational_rough_enclosure(const VectorField& f, const Interval& t, const IVec& Z, double h);

/// Taylor solver over a fixed field. One instance serves one integration at a
/// time; separate instances are independent.
class Solver {
public:
    explicit Solver(VectorField f, SolverConfig cfg = {});

    const VectorField& field() const { return f_; }
    const SolverConfig& config() const { return cfg_; }

    /// Step-size rule h = clamp((tol/‖x_[p]‖∞)^{1/p}, h_min, h_max) from the
    /// center jet.
    double suggest_step(const TaylorJet& center_jet) const;

    /// Enclosure for a set at time t: the high-order form, shortened until
    /// h^{p+1}·‖x_[p+1](Z)‖ ≤ tolerance, else the first-order Picard inclusion.
    FlowEnclosure enclose(const Interval& t, const IVec& hull, double h) const;

    /// Moves the set forward by a time h ⊆ [0, enc.h] (an interval step gives
    /// the union over all those times). `enc` must be valid for this set.
    void advance(BoxSet& s, const FlowEnclosure& enc, const Interval& h) const;
    void advance(DoubletonSet& s, const FlowEnclosure& enc, const Interval& h) const;
    void advance(TripletonSet& s, const FlowEnclosure& enc, const Interval& h) const;
    void advance(C1DoubletonSet& s, const FlowEnclosure& enc, const Interval& h) const;

    /// One controlled step of length at most `limit`; returns the enclosure used.
    FlowEnclosure step(BoxSet& s, double limit = std::numeric_limits<double>::infinity());
    FlowEnclosure step(DoubletonSet& s, double limit = std::numeric_limits<double>::infinity());
    FlowEnclosure step(TripletonSet& s, double limit = std::numeric_limits<double>::infinity());
    FlowEnclosure step(C1DoubletonSet& s, double limit = std::numeric_limits<double>::infinity());

    /// Integrates until the set's time equals T; the last step lands on T.
    /// Throws DomainError if T precedes the current time.
    BoxSet integrate_to(BoxSet s, const Interval& T);
    DoubletonSet integrate_to(DoubletonSet s, const Interval& T);
    TripletonSet integrate_to(TripletonSet s, const Interval& T);
    C1DoubletonSet integrate_to(C1DoubletonSet s, const Interval& T);

    /// Accepted steps since construction.
    std::size_t steps_taken() const { return steps_; }

private:
    template <class Set>
    FlowEnclosure step_impl(Set& s, double limit);
    template <class Set>
    Set integrate_impl(Set s, const Interval& T);
    template <class Set>
    void advance_impl(Set& s, const FlowEnclosure& enc, const Interval& h, bool c1) const;

    VectorField f_;
    SolverConfig cfg_;
    std::size_t steps_ = 0;
};

template <class Set>
Set integrate_to(const VectorField& f, Set s, double T, const SolverConfig& cfg = {}) {
    return Solver(f, cfg).integrate_to(std::move(s), Interval(T));
}

template <class Set>
Set integrate_to(const VectorField& f, Set s, const Interval& T, const SolverConfig& cfg = {}) {
    return Solver(f, cfg).integrate_to(std::move(s), T);
}

inline C1DoubletonSet integrate_c1(const VectorField& f, C1DoubletonSet s, double T, const SolverConfig& cfg = {}) {
    return Solver(f, cfg).integrate_to(std::move(s), Interval(T));
}

inline C1DoubletonSet integrate_c1(const VectorField& f, C1DoubletonSet s, const Interval& T,
                                   const SolverConfig& cfg = {}) {
    return Solver(f, cfg).integrate_to(std::move(s), T);
}

}  // namespace vode
