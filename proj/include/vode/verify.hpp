#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vode/linalg.hpp"

namespace vode {

/// One inequality of a proof, stored with the interval it was checked on.
/// op is one of "<", ">", "<=", ">="; strict ops compare the far endpoint
/// strictly, so "<" passes iff bound.hi < threshold.
struct Check {
    std::string description;
    Interval bound;
    std::string op;
    double threshold = 0.0;
    bool pass = false;
};

/// Evaluates op on bound against threshold. Throws DomainError on an unknown op.
bool holds(const Interval& bound, const std::string& op, double threshold);

struct Certificate {
    std::string claim_id;
    std::vector<Check> checks;
    bool overall = true;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::string field_hash;

    /// Appends a check with pass computed from its bound; returns the pass flag.
    bool add(std::string description, const Interval& bound, std::string op, double threshold);
    /// Appends a check whose bound cannot be evaluated (e.g. an aborted piece).
    void add_failure(std::string description);
    /// Folds another certificate's checks into this one.
    void merge(const Certificate& other);

    /// Recomputes every pass flag from the recorded bounds; true iff they and
    /// `overall` all agree with what is stored.
    bool recheck() const;

    nlohmann::ordered_json to_json() const;
    /// JSON text with keys in schema order and doubles printed with 17 digits.
    std::string dump(int indent = 2) const;
    static Certificate from_json(const nlohmann::ordered_json& j);
};

/// 64-bit FNV-1a of a field description, as 16 hex digits.
std::string field_hash(const std::string& text);

/// JSON text of j with doubles printed as %.17g.
std::string dump17(const nlohmann::ordered_json& j, int indent = 2);

// ---- interval Newton ---------------------------------------------------------

struct NewtonProblem {
    std::function<IVec(const IVec&)> value;     // F at a point (as a thin box)
    std::function<IMat(const IVec&)> jacobian;  // DF over a box
};

struct NewtonVerdict {
    enum class Status { unique_zero, inconclusive, no_zero };
    Status status = Status::inconclusive;
    IVec N;        // operator value
    IVec X;        // search box
    IVec refined;  // N ∩ X when unique_zero
    int enlargements = 0;
};

/// One application N = x0 − [DF(X)]⁻¹ F(x0) with the containment rule:
/// unique_zero iff N ⊂ interior(X), no_zero iff N ∩ X = ∅. A singular
/// Jacobian enclosure gives inconclusive.
NewtonVerdict newton_step(const NewtonProblem& F, const IVec& x0, const IVec& X);

/// newton_step at mid(X); an inconclusive result retries with the radius
/// around x0 enlarged ×4, at most max_enlargements times.
NewtonVerdict interval_newton(const NewtonProblem& F, const IVec& x0, const IVec& X, int max_enlargements = 3);

/// Iterates the operator on the verified enclosure while it keeps shrinking.
/// The result is never wider than the input.
NewtonVerdict newton_refine(const NewtonProblem& F, NewtonVerdict v, int max_iter = 10);

// ---- proof checks ------------------------------------------------------------

/// g at both ends of Y must exclude 0 with opposite signs.
Certificate sign_change_existence(const std::string& claim_id, const std::function<Interval(double)>& g,
                                  const Interval& Y);

struct CoveringEdge {
    std::string description;
    IVec set;  // bisected along its widest coordinate
    std::string op;  // "<" or ">"
    double threshold;
};

/// Checks projection(piece) op threshold on every piece of an adaptive
/// bisection of each edge, refining failed pieces down to max_depth.
/// `projection` may record its pieces (e.g. for plotting).
Certificate covering_check(const std::string& claim_id, const std::vector<CoveringEdge>& edges,
                           const std::function<Interval(const IVec&)>& projection, int max_depth = 12);

/// M = DP2ᵀ·diag(λ, μ)·DP2 − diag(λ, μ) must be positive definite on every
/// piece (M₁₁ > 0 and det M > 0 with the off-diagonal entries hulled).
Certificate cone_condition(const std::string& claim_id, const std::vector<IMat>& DP2, double lambda, double mu);

/// Cone matrix of one piece, symmetric by construction.
IMat cone_matrix(const IMat& DP2, double lambda, double mu);

/// Real eigenvalue pair with |λ₁| > 1 > |λ₂|.
Certificate saddle_verdict(const std::string& claim_id, const IMat& DP);

}  // namespace vode
