#pragma once

#include "asclt/models.hpp"
#include "asclt/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asclt {

enum class FunctionKind { Constant, Identity, Abs, Arctan, ClampedLinear, SoftIndicator };

/// The catalog of Lipschitz test functions f.
///
/// SoftIndicator(x0, delta) is 1 on (-inf, x0], 0 on [x0 + delta, inf) and
/// linear in between, so its Lipschitz constant is 1/delta.
class LipschitzFunction {
public:
    static LipschitzFunction constant(double c);
    static LipschitzFunction identity();
    static LipschitzFunction abs();
    static LipschitzFunction arctan();
    static LipschitzFunction clamped_linear(double lo, double hi);
    static LipschitzFunction soft_indicator(double x0, double delta);

    /// "constant:<c>", "identity", "abs", "arctan", "clamp:<lo>,<hi>",
    /// "soft-indicator:<x0>,<delta>".
    static LipschitzFunction parse(std::string_view spec);

    double operator()(double x) const;

    FunctionKind kind() const { return kind_; }
    double lipschitz_constant() const;
    bool bounded() const;
    bool odd() const;
    bool is_constant() const { return kind_ == FunctionKind::Constant; }

    /// Points where f is not differentiable (quadrature breakpoints).
    std::vector<double> kinks() const;
    std::string describe() const;

private:
    LipschitzFunction(FunctionKind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}

    FunctionKind kind_;
    double p0_;
    double p1_;
};

struct AuditGrid {
    double lo = -20.0;
    double hi = 20.0;
    double step = 1e-3;
};

/// Largest slope |f(x_{i+1}) - f(x_i)| / (x_{i+1} - x_i) over the grid;
/// passes when it does not exceed the declared constant by more than 1e-9
/// relative.
ConditionReport lipschitz_audit(const LipschitzFunction& f, const AuditGrid& grid = {});

enum class IntegralMethod { ClosedForm, Quadrature };

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    IntegralMethod method = IntegralMethod::Quadrature;
};

inline constexpr double kDefaultIntegralTolerance = 1e-8;

/// Closed form of the integral of f against H, when one is known.
std::optional<double> closed_form_integral(const LipschitzFunction& f, const LimitLaw& law);

/// Adaptive 61-point Gauss-Kronrod, split at the kinks of f, over the whole
/// real line (max refinement depth 15).
IntegralResult quadrature_integral(const LipschitzFunction& f, const LimitLaw& law,
                                   double tol = kDefaultIntegralTolerance);

/// Closed form when available (cross-checked against quadrature; a gap
/// beyond 2 tol raises ConsistencyError), quadrature otherwise.
IntegralResult integral_against(const LipschitzFunction& f, const LimitLaw& law,
                                double tol = kDefaultIntegralTolerance);

}  // namespace asclt
