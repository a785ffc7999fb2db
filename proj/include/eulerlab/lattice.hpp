#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace eulerlab {

// Regular sampling lattice: inclusive x/y bounds with nx, ny points per axis
// and one or more time levels. Point traversal order is t-major, then y,
// then x (x fastest).
struct SampleLattice {
    double x_min = 0.0, x_max = 1.0;
    int nx = 2;
    double y_min = 0.0, y_max = 1.0;
    int ny = 2;
    std::vector<double> ts{1.0};

    void validate() const {
        if (nx < 2 || ny < 2)
            throw std::invalid_argument("lattice needs at least 2 points per axis");
        if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
              std::isfinite(y_max)) ||
            !(x_max > x_min) || !(y_max > y_min))
            throw std::invalid_argument("lattice bounds must be finite and increasing");
        if (ts.empty())
            throw std::invalid_argument("lattice needs at least one time level");
        for (double t : ts)
            if (!std::isfinite(t))
                throw std::invalid_argument("lattice time levels must be finite");
    }

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    std::size_t points() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * ts.size();
    }

    // Visit every lattice point in the canonical order.
    template <class F>
    void for_each(F&& fn) const {
        for (double t : ts)
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    fn(x(i), y(j), t);
    }
};

} // namespace eulerlab
