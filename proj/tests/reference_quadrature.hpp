#pragma once

// Test-only reference integrator, kept deliberately different from the
// production quadrature: composite Simpson with uniform subdivision, doubled
// until two refinements agree. Slow and simple on purpose.

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace testref {

template <class F>
double simpson(F&& f, double a, double b, std::size_t intervals) {
    const double h = (b - a) / static_cast<double>(intervals);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i) {
        const double x = a + h * static_cast<double>(i);
        sum += (i % 2 ? 4.0 : 2.0) * f(x);
    }
    return sum * h / 3.0;
}

template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 std::size_t start = 1024, std::size_t max_intervals = (1u << 26)) {
    double previous = simpson(f, a, b, start);
    for (std::size_t n = 2 * start; n <= max_intervals; n *= 2) {
        const double current = simpson(f, a, b, n);
        if (std::fabs(current - previous) <= rel_tol * std::fabs(current)) return current;
        previous = current;
    }
    throw std::runtime_error("testref::integrate did not converge");
}

}  // namespace testref
