#pragma once

// Independent numerical oracles used by the test suites. Everything here
// is deliberately implemented without touching the library's own code
// paths for the quantity being checked.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace oracles {

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double m, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, lm, m, fa, flm, fm);
    const double right = simpson(f, m, rm, b, fm, frm, fb);
    if (depth <= 0) throw std::runtime_error("adaptive_simpson: max depth reached");
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, m, b, fa, fm, fb), tol, depth);
}

// Central finite differences of a scalar function of a planar point.
template <typename F>
std::pair<double, double> central_gradient(F&& f, double x, double y, double h = 1e-6) {
    const double gx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
    const double gy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
    return {gx, gy};
}

// Second intersection of the line through the unit-circle point e^{i a}
// and an interior point z with the unit circle, solved as a quadratic in
// the chord parameter. Independent of the log/conjugation route.
inline double chord_second_intersection(std::complex<double> z, double a) {
    const std::complex<double> p = std::polar(1.0, a);
    const std::complex<double> d = z - p; // direction from boundary through z
    // |p + t d|^2 = 1  ->  t (|d|^2 t + 2 Re(conj(p) d)) = 0
    const double t = -2.0 * (std::conj(p) * d).real() / std::norm(d);
    const std::complex<double> q = p + t * d;
    return std::atan2(q.imag(), q.real());
}

} // namespace oracles
