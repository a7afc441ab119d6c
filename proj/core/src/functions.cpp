#include "asclt/functions.hpp"

#include "asclt/error.hpp"
#include "parse_util.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace asclt {

LipschitzFunction LipschitzFunction::constant(double c) {
    require(std::isfinite(c), "constant function value must be finite");
    return {FunctionKind::Constant, c, 0.0};
}
LipschitzFunction LipschitzFunction::identity() { return {FunctionKind::Identity, 0.0, 0.0}; }
LipschitzFunction LipschitzFunction::abs() { return {FunctionKind::Abs, 0.0, 0.0}; }
LipschitzFunction LipschitzFunction::arctan() { return {FunctionKind::Arctan, 0.0, 0.0}; }

LipschitzFunction LipschitzFunction::clamped_linear(double lo, double hi) {
    require(lo < hi, "clamp needs lo < hi");
    return {FunctionKind::ClampedLinear, lo, hi};
}

LipschitzFunction LipschitzFunction::soft_indicator(double x0, double delta) {
    require(delta > 0.0, "soft indicator needs delta > 0");
    return {FunctionKind::SoftIndicator, x0, delta};
}

LipschitzFunction LipschitzFunction::parse(std::string_view spec) {
    const auto [name, args] = detail::split_spec(spec);
    const auto two_args = [&, args = args](std::string_view what) {
        const auto parts = detail::split(args, ',');
        require(parts.size() == 2, std::string(what) + " needs two comma-separated parameters");
        return std::pair{detail::parse_double(parts[0], what), detail::parse_double(parts[1], what)};
    };
    if (name == "constant") return constant(args.empty() ? 1.0 : detail::parse_double(args, "constant"));
    if (name == "identity") return identity();
    if (name == "abs") return abs();
    if (name == "arctan") return arctan();
    if (name == "clamp") {
        const auto [lo, hi] = two_args("clamp");
        return clamped_linear(lo, hi);
    }
    if (name == "soft-indicator") {
        const auto [x0, delta] = two_args("soft-indicator");
        return soft_indicator(x0, delta);
    }
    throw UsageError("unknown function '" + std::string(spec) + "'");
}

double LipschitzFunction::operator()(double x) const {
    switch (kind_) {
        case FunctionKind::Constant: return p0_;
        case FunctionKind::Identity: return x;
        case FunctionKind::Abs: return std::abs(x);
        case FunctionKind::Arctan: return std::atan(x);
        case FunctionKind::ClampedLinear: return std::clamp(x, p0_, p1_);
        case FunctionKind::SoftIndicator:
            if (x <= p0_) return 1.0;
            if (x >= p0_ + p1_) return 0.0;
            return 1.0 - (x - p0_) / p1_;
    }
    return 0.0;
}

double LipschitzFunction::lipschitz_constant() const {
    switch (kind_) {
        case FunctionKind::Constant: return 0.0;
        case FunctionKind::SoftIndicator: return 1.0 / p1_;
        default: return 1.0;
    }
}

bool LipschitzFunction::bounded() const {
    return kind_ != FunctionKind::Identity && kind_ != FunctionKind::Abs;
}

bool LipschitzFunction::odd() const {
    return kind_ == FunctionKind::Identity || kind_ == FunctionKind::Arctan ||
           (kind_ == FunctionKind::Constant && p0_ == 0.0) ||
           (kind_ == FunctionKind::ClampedLinear && p0_ == -p1_);
}

std::vector<double> LipschitzFunction::kinks() const {
    switch (kind_) {
        case FunctionKind::Abs: return {0.0};
        case FunctionKind::ClampedLinear: return {p0_, p1_};
        case FunctionKind::SoftIndicator: return {p0_, p0_ + p1_};
        default: return {};
    }
}

std::string LipschitzFunction::describe() const {
    std::ostringstream out;
    switch (kind_) {
        case FunctionKind::Constant: out << "constant:" << p0_; break;
        case FunctionKind::Identity: out << "identity"; break;
        case FunctionKind::Abs: out << "abs"; break;
        case FunctionKind::Arctan: out << "arctan"; break;
        case FunctionKind::ClampedLinear: out << "clamp:" << p0_ << "," << p1_; break;
        case FunctionKind::SoftIndicator: out << "soft-indicator:" << p0_ << "," << p1_; break;
    }
    return out.str();
}

ConditionReport lipschitz_audit(const LipschitzFunction& f, const AuditGrid& grid) {
    require(grid.step > 0.0 && grid.lo + grid.step <= grid.hi, "lipschitz_audit: grid needs at least two points");
    ConditionReport report;
    report.condition = Condition::Lipschitz;
    report.threshold = f.lipschitz_constant() * (1.0 + 1e-9);

    const auto points = static_cast<std::int64_t>(std::floor((grid.hi - grid.lo) / grid.step)) + 1;
    double sup = 0.0;
    std::int64_t arg_sup = 0;
    double x_prev = grid.lo;
    double f_prev = f(x_prev);
    for (std::int64_t i = 1; i < points; ++i) {
        const double x = grid.lo + static_cast<double>(i) * grid.step;
        const double fx = f(x);
        const double slope = std::abs(fx - f_prev) / (x - x_prev);
        if (slope > sup) {
            sup = slope;
            arg_sup = i;
        }
        x_prev = x;
        f_prev = fx;
    }
    report.sup_statistic = sup;
    report.trace.emplace_back(arg_sup, sup);
    report.finalize();
    return report;
}

std::optional<double> closed_form_integral(const LipschitzFunction& f, const LimitLaw& law) {
    const auto cdf = [&](double x) { return law.cdf(x); };
    const auto pdf = [&](double x) { return law.pdf(x); };
    switch (f.kind()) {
        case FunctionKind::Constant: return f(0.0);
        case FunctionKind::Identity: return 0.0;
        case FunctionKind::Arctan: return 0.0;
        case FunctionKind::Abs: return std::sqrt(2.0 / std::numbers::pi);
        case FunctionKind::ClampedLinear: {
            const auto k = f.kinks();
            const double lo = k[0];
            const double hi = k[1];
            return lo * cdf(lo) + hi * (1.0 - cdf(hi)) + pdf(lo) - pdf(hi);
        }
        case FunctionKind::SoftIndicator: {
            const auto k = f.kinks();
            const double x0 = k[0];
            const double x1 = k[1];
            const double delta = x1 - x0;
            return cdf(x1) - (pdf(x0) - pdf(x1) - x0 * (cdf(x1) - cdf(x0))) / delta;
        }
    }
    return std::nullopt;
}

IntegralResult quadrature_integral(const LipschitzFunction& f, const LimitLaw& law, double tol) {
    require(tol > 0.0, "integral tolerance must be > 0");
    using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
    constexpr unsigned kMaxDepth = 15;
    const auto integrand = [&](double x) { return f(x) * law.pdf(x); };

    auto breaks = f.kinks();
    if (breaks.empty()) breaks.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());

    const double inf = std::numeric_limits<double>::infinity();
    double total = 0.0;
    double total_error = 0.0;
    const auto piece = [&](double a, double b) {
        double error = 0.0;
        total += Rule::integrate(integrand, a, b, kMaxDepth, tol * 1e-2, &error);
        total_error += error;
    };
    piece(-inf, breaks.front());
    for (std::size_t i = 1; i < breaks.size(); ++i) piece(breaks[i - 1], breaks[i]);
    piece(breaks.back(), inf);
    return {total, total_error, IntegralMethod::Quadrature};
}

IntegralResult integral_against(const LipschitzFunction& f, const LimitLaw& law, double tol) {
    require(tol > 0.0, "integral tolerance must be > 0");
    const IntegralResult numeric = quadrature_integral(f, law, tol);
    const auto exact = closed_form_integral(f, law);
    if (!exact) return numeric;
    if (!(std::abs(*exact - numeric.value) <= 2.0 * tol)) {
        std::ostringstream msg;
        msg << "closed form " << *exact << " and quadrature " << numeric.value << " disagree for "
            << f.describe();
        throw ConsistencyError(msg.str());
    }
    return {*exact, std::abs(*exact - numeric.value), IntegralMethod::ClosedForm};
}

}  // namespace asclt
