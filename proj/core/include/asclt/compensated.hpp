#pragma once

#include <cmath>

namespace asclt {

/// Neumaier (improved Kahan) summation. All long sums in the library go
/// through this type so that 10^6-term weight sums keep ~1e-15 relative error.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

    constexpr void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    constexpr CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    constexpr void merge(const CompensatedSum& other) {
        add(other.sum_);
        add(other.compensation_);
    }

    [[nodiscard]] constexpr double value() const { return sum_ + compensation_; }
    [[nodiscard]] constexpr double hi() const { return sum_; }
    [[nodiscard]] constexpr double lo() const { return compensation_; }

    friend constexpr bool operator==(const CompensatedSum&, const CompensatedSum&) = default;

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace asclt
