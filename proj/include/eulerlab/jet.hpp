#pragma once

#include <cmath>
#include <string>

#include "eulerlab/errors.hpp"

namespace eulerlab {

// First-order jet in the three coordinates (x, y, t): a value bundled with
// its partial derivatives, propagated through arithmetic by the chain rule.
// Composing solution formulas on jets yields exact analytic partials at the
// cost of one evaluation.
struct Jet1 {
    double v = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dt = 0.0;
};

constexpr Jet1 jet_const(double v) { return {v, 0.0, 0.0, 0.0}; }
constexpr Jet1 seed_x(double x) { return {x, 1.0, 0.0, 0.0}; }
constexpr Jet1 seed_y(double y) { return {y, 0.0, 1.0, 0.0}; }
constexpr Jet1 seed_t(double t) { return {t, 0.0, 0.0, 1.0}; }

constexpr double value_of(double x) { return x; }
constexpr double value_of(const Jet1& a) { return a.v; }

constexpr Jet1 operator-(const Jet1& a) { return {-a.v, -a.dx, -a.dy, -a.dt}; }

constexpr Jet1 operator+(const Jet1& a, const Jet1& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dt + b.dt};
}
constexpr Jet1 operator+(const Jet1& a, double b) { return {a.v + b, a.dx, a.dy, a.dt}; }
constexpr Jet1 operator+(double a, const Jet1& b) { return b + a; }

constexpr Jet1 operator-(const Jet1& a, const Jet1& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dt - b.dt};
}
constexpr Jet1 operator-(const Jet1& a, double b) { return {a.v - b, a.dx, a.dy, a.dt}; }
constexpr Jet1 operator-(double a, const Jet1& b) { return {a - b.v, -b.dx, -b.dy, -b.dt}; }

constexpr Jet1 operator*(const Jet1& a, const Jet1& b) {
    return {a.v * b.v,
            a.dx * b.v + a.v * b.dx,
            a.dy * b.v + a.v * b.dy,
            a.dt * b.v + a.v * b.dt};
}
constexpr Jet1 operator*(const Jet1& a, double b) { return {a.v * b, a.dx * b, a.dy * b, a.dt * b}; }
constexpr Jet1 operator*(double a, const Jet1& b) { return b * a; }

inline Jet1 operator/(const Jet1& a, const Jet1& b) {
    if (b.v == 0.0)
        throw DomainError("jet division by zero value");
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv, (a.dt - q * b.dt) * inv};
}
inline Jet1 operator/(const Jet1& a, double b) {
    if (b == 0.0)
        throw DomainError("jet division by zero value");
    return {a.v / b, a.dx / b, a.dy / b, a.dt / b};
}
inline Jet1 operator/(double a, const Jet1& b) { return jet_const(a) / b; }

inline Jet1 exp(const Jet1& a) {
    const double e = std::exp(a.v);
    return {e, e * a.dx, e * a.dy, e * a.dt};
}

inline Jet1 log(const Jet1& a) {
    if (!(a.v > 0.0))
        throw DomainError("jet log of non-positive value " + std::to_string(a.v));
    const double inv = 1.0 / a.v;
    return {std::log(a.v), inv * a.dx, inv * a.dy, inv * a.dt};
}

inline Jet1 sqrt(const Jet1& a) {
    if (!(a.v > 0.0))
        throw DomainError("jet sqrt of non-positive value " + std::to_string(a.v));
    const double r = std::sqrt(a.v);
    const double s = 0.5 / r;
    return {r, s * a.dx, s * a.dy, s * a.dt};
}

// Real power; the base must be strictly positive so that both the value and
// the derivative factor p*v^(p-1) are defined.
inline Jet1 pow(const Jet1& a, double p) {
    if (!(a.v > 0.0))
        throw DomainError("jet pow with non-positive base " + std::to_string(a.v));
    const double w = std::pow(a.v, p);
    const double s = p * std::pow(a.v, p - 1.0);
    return {w, s * a.dx, s * a.dy, s * a.dt};
}

// Integer power, valid for any base (nonzero when n < 1 so the derivative
// exponent stays defined).
inline double ipow(double v, long n) {
    if (n < 0) {
        if (v == 0.0)
            throw DomainError("ipow of zero with negative exponent");
        return 1.0 / ipow(v, -n);
    }
    double r = 1.0;
    double b = v;
    for (long k = n; k > 0; k >>= 1) {
        if (k & 1)
            r *= b;
        b *= b;
    }
    return r;
}

inline Jet1 ipow(const Jet1& a, long n) {
    if (n < 1 && a.v == 0.0)
        throw DomainError("jet ipow of zero with exponent below one");
    const double w = ipow(a.v, n);
    const double s = static_cast<double>(n) * ipow(a.v, n - 1);
    return {w, s * a.dx, s * a.dy, s * a.dt};
}

} // namespace eulerlab
