#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chainweight/resources.hpp"

namespace chainweight {

enum class VarKind { space, vdf, work };

namespace detail {
struct ExprNode;
}

/// An immutable weight-function expression tree over the resource variables
/// S1.., V1.., W1.., built from positive constants, +, *, pow (fixed
/// exponent >= 0), min and max. Every tree in this algebra maps strictly
/// positive points to strictly positive values and is monotonically
/// increasing.
///
/// Cheap to copy (shared immutable nodes); eval and all analyses are pure.
class WeightExpr {
public:
    /// Grammar:
    ///   expr   := term ('+' term)*
    ///   term   := factor ('*' factor)*
    ///   factor := NUMBER | VAR | 'min(' expr (',' expr)+ ')'
    ///           | 'max(' expr (',' expr)+ ')' | 'pow(' expr ',' NUMBER ')'
    ///           | '(' expr ')'
    ///   VAR    := [SVW][1-9][0-9]*
    /// Whitespace is insignificant. Literals must be positive (exponents
    /// may be 0). Throws ParseError with the offending position.
    static WeightExpr parse(std::string_view text);

    static WeightExpr variable(VarKind kind, std::size_t index);  // 0-based
    static WeightExpr constant(double value);
    static WeightExpr sum(std::vector<WeightExpr> terms);
    static WeightExpr product(std::vector<WeightExpr> factors);
    static WeightExpr power(WeightExpr base, double exponent);
    static WeightExpr minimum(std::vector<WeightExpr> args);
    static WeightExpr maximum(std::vector<WeightExpr> args);

    /// Escape hatch for functions outside the algebra (used by tests to
    /// exercise the sampling paths). Opaque nodes disable all structural
    /// certificates; only the sampling checks apply. `fn` must map positive
    /// points to positive values.
    static WeightExpr opaque(std::function<double(const ResourcePoint&)> fn,
                             Dims dims, std::string name);

    /// Gamma(point). Throws std::invalid_argument if the point's dimensions
    /// do not cover the expression's requirements.
    double eval(const ResourcePoint& point) const;

    /// Minimal (k1, k2, k3) a point must provide, from the highest variable
    /// index of each kind.
    Dims required_dims() const;

    /// False for constant expressions (no variable referenced); such
    /// expressions are vacuous as weight functions.
    bool references_variable() const;

    bool has_opaque_node() const;

    /// Degree d with Gamma(S, aV, aW) = a^d * Gamma(S, V, W) for all a > 0,
    /// when the tree structure determines one (sums/mins/maxes need equal
    /// child degrees; products add; pow multiplies). nullopt when mixed or
    /// opaque. Security in the continuous model needs d = 1.
    std::optional<double> timed_scaling_degree() const;

    /// Upper bound u with Gamma(aS, V, W) <= a^u * Gamma(S, V, W) for all
    /// a >= 1 (children: max for sum/min/max, sum for products, c*u for
    /// pow). u <= 1 certifies subhomogeneity in S. nullopt for opaque trees.
    std::optional<double> space_scaling_bound() const;

    /// Canonical DSL text (parseable back into an equivalent tree).
    std::string to_string() const;

private:
    explicit WeightExpr(std::shared_ptr<const detail::ExprNode> root)
        : root_(std::move(root)) {}
    std::shared_ptr<const detail::ExprNode> root_;
};

}  // namespace chainweight
