#pragma once

#include <cmath>

namespace sisio {

// Forward-mode dual number: value plus one directional derivative.
struct Dual {
    double value = 0.0;
    double deriv = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v) : value(v) {} // NOLINT(google-explicit-constructor)
    constexpr Dual(double v, double d) : value(v), deriv(d) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
inline Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
inline Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
inline Dual operator*(Dual a, Dual b) { return {a.value * b.value, a.value * b.deriv + b.value * a.deriv}; }
inline Dual operator/(Dual a, Dual b) {
    return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

inline Dual sin(Dual a) { return {std::sin(a.value), std::cos(a.value) * a.deriv}; }
inline Dual cos(Dual a) { return {std::cos(a.value), -std::sin(a.value) * a.deriv}; }
inline Dual tan(Dual a) {
    const double c = std::cos(a.value);
    return {std::tan(a.value), a.deriv / (c * c)};
}
inline Dual exp(Dual a) {
    const double e = std::exp(a.value);
    return {e, e * a.deriv};
}
inline Dual tanh(Dual a) {
    const double t = std::tanh(a.value);
    return {t, (1.0 - t * t) * a.deriv};
}

// At the kink the derivative is one-sided: |du| is the derivative of |u|
// along the seed direction.
inline Dual abs(Dual a) {
    if (a.value > 0.0) return {a.value, a.deriv};
    if (a.value < 0.0) return {-a.value, -a.deriv};
    return {0.0, std::fabs(a.deriv)};
}

inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.value);
    if (a.deriv == 0.0) return {s, 0.0};
    return {s, a.deriv / (2.0 * s)};
}

inline Dual sign(Dual a) {
    const double s = a.value > 0.0 ? 1.0 : (a.value < 0.0 ? -1.0 : 0.0);
    return {s, 0.0};
}

inline Dual pow(Dual a, Dual b) {
    const double p = std::pow(a.value, b.value);
    double d = 0.0;
    if (a.deriv != 0.0) {
        d += b.value * std::pow(a.value, b.value - 1.0) * a.deriv;
    }
    if (b.deriv != 0.0) {
        d += p * std::log(a.value) * b.deriv;
    }
    return {p, d};
}

} // namespace sisio
