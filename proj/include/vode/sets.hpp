#pragma once

#include <string>

#include "vode/interval.hpp"
#include "vode/linalg.hpp"

namespace vode {

/// Plain interval vector; re-wrapped into a box after every step.
struct BoxSet {
    IVec box;
    Interval time;

    IVec hull() const { return box; }
    IVec center() const;
};

/// {x + C·r0 + Q·q} with x point-like and Q near-orthogonal.
struct DoubletonSet {
    IVec x;
    IMat C;
    IVec r0;
    DMat Q;
    IMat Q_inv;  ///< rigorous enclosure of Q⁻¹
    IVec q;
    Interval time;

    IVec hull() const;
    const IVec& center() const { return x; }
    std::size_t dimension() const { return x.size(); }
};

/// {x + C·r0 + v : v ∈ B·r ∩ Q·q}.
struct TripletonSet {
    IVec x;
    IMat C;
    IVec r0;
    DMat B;
    IMat B_inv;
    IVec r;
    DMat Q;
    IMat Q_inv;
    IVec q;
    Interval time;

    IVec hull() const;
    const IVec& center() const { return x; }
    std::size_t dimension() const { return x.size(); }
};

/// Trajectory doubleton plus an enclosure of D_x φ kept as Vc + Qv·E, where
/// the columns of E share the near-orthogonal frame Qv.
struct C1DoubletonSet {
    DoubletonSet base;
    DMat Vc;
    DMat Qv;
    IMat Qv_inv;
    IMat E;

    IVec hull() const { return base.hull(); }
    const IVec& center() const { return base.x; }
    std::size_t dimension() const { return base.dimension(); }
    /// Enclosure of the derivative with respect to the initial condition.
    IMat V() const;
};

/// x0 + C·r0 with Q = I. A non-point x0 is split into its midpoint and a q part.
DoubletonSet from_affine(const IVec& x0, const IMat& C, const IVec& r0, const Interval& time = Interval(0.0));
DoubletonSet from_box(const IVec& box, const Interval& time = Interval(0.0));
TripletonSet tripleton_from_affine(const IVec& x0, const IMat& C, const IVec& r0, const Interval& time = Interval(0.0));
BoxSet box_set(const IVec& box, const Interval& time = Interval(0.0));

/// C1 set over a doubleton, with V = V0 (identity by default).
C1DoubletonSet c1_from(const DoubletonSet& base);
C1DoubletonSet c1_from(const DoubletonSet& base, const IMat& V0);

/// Image of the set under a step map Φ with Φ(center) ∈ center_image + remainder
/// and DΦ(hull) ⊆ A. Throws DimensionMismatch.
DoubletonSet affine_advance(const DoubletonSet& s, const IMat& A, const IVec& remainder, const IVec& center_image);
TripletonSet affine_advance(const TripletonSet& s, const IMat& A, const IVec& remainder, const IVec& center_image);
BoxSet affine_advance(const BoxSet& s, const IMat& A, const IVec& remainder, const IVec& center_image);

/// Advances the derivative part by V ← D·V for an enclosure D of the step derivative.
void advance_derivative(C1DoubletonSet& s, const IMat& D);

/// Exact linear change of coordinates at the level of the representation.
DoubletonSet linear_image(const IMat& A, const DoubletonSet& s);

/// The set shifted by an interval vector, absorbed into the Q frame.
DoubletonSet translate(const DoubletonSet& s, const IVec& shift);

/// Debug dump of every component.
std::string to_json(const DoubletonSet& s);
std::string to_json(const TripletonSet& s);
std::string to_json(const C1DoubletonSet& s);

}  // namespace vode
