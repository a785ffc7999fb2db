#pragma once

#include <cmath>
#include <stdexcept>

namespace eulerlab {

enum class Axis { X, Y, T };

// Central-difference stencil. h == 0 selects the default step
// 1e-4 * max(1, |coordinate|), which balances truncation against roundoff
// for doubles.
struct StencilSpec {
    double h = 0.0;
    int order = 4;
};

// Independent derivative oracle for the jet arithmetic: order-2 or order-4
// central differences of a scalar field of (x, y, t).
template <class F>
double fd_partial(F&& field, double x, double y, double t, Axis axis, StencilSpec spec = {}) {
    const double c = axis == Axis::X ? x : axis == Axis::Y ? y : t;
    const double h = spec.h > 0.0 ? spec.h : 1e-4 * std::max(1.0, std::abs(c));

    auto at = [&](double s) {
        switch (axis) {
        case Axis::X: return field(x + s, y, t);
        case Axis::Y: return field(x, y + s, t);
        default:      return field(x, y, t + s);
        }
    };

    switch (spec.order) {
    case 2:
        return (at(h) - at(-h)) / (2.0 * h);
    case 4:
        return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
    default:
        throw std::invalid_argument("fd_partial: stencil order must be 2 or 4");
    }
}

} // namespace eulerlab
