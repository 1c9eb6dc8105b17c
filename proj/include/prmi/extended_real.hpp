#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace prmi {

// A real number or +infinity. Divergences and projective distances are +inf
// when the supports of their arguments are incompatible.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    /// Maps +inf to infinity(); other values are kept as finite reals.
    static ExtendedReal from_double(double v) {
        return v == std::numeric_limits<double>::infinity() ? infinity() : ExtendedReal(v);
    }

    constexpr bool is_finite() const noexcept { return !infinite_; }
    constexpr bool is_infinite() const noexcept { return infinite_; }

    /// Finite value; +inf as a double when infinite.
    constexpr double value() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                       const ExtendedReal& b) {
        if (a.infinite_ || b.infinite_) {
            return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
        }
        return a.value_ <=> b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& r) {
        if (r.infinite_) return os << "inf";
        return os << r.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// D_alpha(rho||sigma), finite or +inf.
using DivergenceValue = ExtendedReal;
/// Hilbert projective distance, finite nonnegative or +inf.
using ProjectiveDistance = ExtendedReal;

}  // namespace prmi
