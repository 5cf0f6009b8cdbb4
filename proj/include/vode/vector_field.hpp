#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vode/interval.hpp"
#include "vode/linalg.hpp"

namespace vode {

enum class NodeKind { Const, Param, Var, Time, Add, Sub, Mul, Div, Sqr, Sin, Cos, Exp, Sqrt, Neg };

/// One vertex of the expression DAG. Children always have smaller indices
/// than their parent, so index order is a topological order.
struct Node {
    NodeKind kind = NodeKind::Const;
    int a = -1;           ///< first operand
    int b = -1;           ///< second operand (binary kinds)
    int index = -1;       ///< Param / Var slot
    Interval value;       ///< Const enclosure
    std::string literal;  ///< Const source text, kept for rendering

    friend bool operator==(const Node&, const Node&) = default;
};

/// Normalized Taylor coefficients x_[k] = x^(k)(t0)/k!, k = 0..order.
struct TaylorJet {
    std::vector<IVec> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Jet of the solution together with the jet of V = D_x φ · V0.
struct VariationalJet {
    std::vector<IVec> x;
    std::vector<IMat> V;
    int order() const { return static_cast<int>(x.size()) - 1; }
};

/// Parsed vector field f(λ, t, x) over interval parameters λ.
///
/// Source syntax: "par:a,b;time:t;var:x,y;fun:expr1,expr2;". The par and time
/// sections are optional. Expressions support + - * / unary minus, integer
/// powers '^n' (n >= 0), sin cos exp sqrt, decimal literals and parentheses.
class VectorField {
public:
    /// Throws SyntaxError, UnknownIdentifier or ArityMismatch.
    static VectorField parse(std::string_view source);

    std::size_t dimension() const { return var_names_.size(); }
    std::size_t parameter_count() const { return par_names_.size(); }
    bool is_autonomous() const { return !time_name_.has_value(); }

    const std::vector<std::string>& variable_names() const { return var_names_; }
    const std::vector<std::string>& parameter_names() const { return par_names_; }
    const std::optional<std::string>& time_name() const { return time_name_; }

    void set_parameter(std::string_view name, const Interval& value);
    void set_parameter(std::size_t i, const Interval& value);
    const IVec& parameters() const { return params_; }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<int>& outputs() const { return outputs_; }

    /// Fully parenthesized source that parses back to the same DAG.
    std::string render() const;

    /// FNV-1a digest of the rendered source and the parameter values.
    std::uint64_t fingerprint() const;

    /// Same DAG, names and parameters.
    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    std::vector<Node> nodes_;
    std::vector<int> outputs_;
    std::vector<std::string> par_names_;
    std::vector<std::string> var_names_;
    std::optional<std::string> time_name_;
    IVec params_;

    friend class FieldBuilder;
};

inline VectorField parse_field(std::string_view source) { return VectorField::parse(source); }

/// Enclosure of f(λ, t, x) over all parameter selections.
IVec eval(const VectorField& f, const Interval& t, const IVec& x);
/// Floating-point evaluation at the parameter midpoints.
DVec eval(const VectorField& f, double t, const DVec& x);

/// Enclosure of D_x f.
IMat jacobian(const VectorField& f, const Interval& t, const IVec& x);
DMat jacobian(const VectorField& f, double t, const DVec& x);

/// Taylor coefficients of the solution through x0 at time t0, orders 0..p.
TaylorJet ode_taylor(const VectorField& f, const Interval& t0, const IVec& x0, int p);

/// Floating-point jet at the parameter midpoints.
std::vector<DVec> ode_taylor(const VectorField& f, double t0, const DVec& x0, int p);

/// Taylor coefficients of x and of V with V(t0) = V0, orders 0..p.
VariationalJet variational_taylor(const VectorField& f, const Interval& t0, const IVec& x0, const IMat& V0, int p);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace vode
