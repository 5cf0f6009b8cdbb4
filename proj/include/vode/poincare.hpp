#pragma once

#include <optional>
#include <vector>

#include "vode/sets.hpp"
#include "vode/solver.hpp"

namespace vode {

enum class CrossingDirection { positive, negative, both };

/// Hyperplane section S(x) = ⟨n, x⟩ − ⟨n, o⟩ with a fixed chart
/// y = Bᵀ(x − o) and embedding x = o + B·y.
class Section {
public:
    /// {x_i = c}; the chart drops coordinate i.
    static Section coordinate(std::size_t dimension, std::size_t index, double value,
                              CrossingDirection direction = CrossingDirection::both);
    /// {⟨n, x − o⟩ = 0}; the chart basis is an orthonormal complement of n.
    /// Throws DomainError when n vanishes.
    static Section affine(const DVec& normal, const DVec& offset, CrossingDirection direction = CrossingDirection::both);

    std::size_t dimension() const { return normal_.size(); }
    std::size_t chart_dimension() const { return basis_.cols(); }
    CrossingDirection direction() const { return direction_; }
    const IVec& normal() const { return normal_; }
    const DMat& basis() const { return basis_; }
    const IVec& origin() const { return origin_; }

    Interval value(const IVec& x) const;
    /// S over a doubleton, evaluated on its representation.
    Interval value(const DoubletonSet& s) const;

    IVec to_chart(const IVec& x) const;
    DoubletonSet to_chart(const DoubletonSet& s) const;
    /// Set on the section parametrized by a chart box.
    DoubletonSet embed(const IVec& chart_box, const Interval& time = Interval(0.0)) const;
    /// Same with V = B, so derivatives come out in chart coordinates.
    C1DoubletonSet embed_c1(const IVec& chart_box, const Interval& time = Interval(0.0)) const;

private:
    IVec normal_;
    IVec origin_;
    Interval level_;  // ⟨n, o⟩
    DMat basis_;
    std::optional<std::size_t> index_;
    CrossingDirection direction_ = CrossingDirection::both;
};

struct PoincareResult {
    DoubletonSet image;    // chart coordinates
    DoubletonSet ambient;  // same set in the ambient space
    Interval return_time;
    std::optional<IMat> DP;         // chart derivative of the n_iter-fold map
    std::vector<int> crossing_signs;  // sign of ⟨∇S, f⟩ at each counted crossing
};

/// Rigorous Poincaré map for one field and section. Crossings count only after
/// |S| exceeds 10·diam(S(start)) + 1e-6 for the whole set.
class PoincareMap {
public:
    PoincareMap(VectorField f, Section section, SolverConfig cfg = {}, double max_time = 1000.0);

    const Section& section() const { return section_; }
    const Solver& solver() const { return solver_; }

    /// Throws NoCrossing, TransversalityFailure, StepTooSmall.
    PoincareResult operator()(const DoubletonSet& start, int n_iter = 1);
    PoincareResult derivative(const C1DoubletonSet& start, int n_iter = 1);

private:
    template <class Set>
    PoincareResult run(Set s, int n_iter);

    Solver solver_;
    Section section_;
    double max_time_;
};

inline PoincareResult poincare_map(const VectorField& f, const Section& section, const DoubletonSet& start,
                                   int n_iter = 1, const SolverConfig& cfg = {}) {
    return PoincareMap(f, section, cfg)(start, n_iter);
}

inline PoincareResult poincare_derivative(const VectorField& f, const Section& section, const C1DoubletonSet& start,
                                          int n_iter = 1, const SolverConfig& cfg = {}) {
    return PoincareMap(f, section, cfg).derivative(start, n_iter);
}

}  // namespace vode
