#include "hmplan/divergence.hpp"

#include "hmplan/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_convex(const ConvexGenerator& g) {
    if (std::abs(g.f(1.0)) > 1e-14)
        throw std::invalid_argument("generator '" + g.name + "': f(1) != 0");
    // Sampled strict convexity: f(y) < chord(x, z) at y, with a margin
    // scaled to the magnitude of the values involved.
    Rng rng(0x5eedc0417ull);
    for (int i = 0; i < 1000; ++i) {
        const double a = std::exp(rng.uniform(std::log(1e-6), std::log(1e6)));
        const double b = std::exp(rng.uniform(std::log(1e-6), std::log(1e6)));
        const double c = std::exp(rng.uniform(std::log(1e-6), std::log(1e6)));
        double x = std::min({a, b, c}), z = std::max({a, b, c});
        double y = a + b + c - x - z;
        if (!(x < y && y < z)) continue;
        const double t = (y - x) / (z - x);
        const double chord = (1.0 - t) * g.f(x) + t * g.f(z);
        const double scale = std::max({1.0, std::abs(g.f(x)), std::abs(g.f(z))});
        if (!(g.f(y) <= chord + 1e-12 * scale))
            throw std::invalid_argument("generator '" + g.name + "': convexity violated near x=" +
                                        std::to_string(y));
    }
}

} // namespace

ConvexGenerator make_generator(GeneratorKind kind) {
    ConvexGenerator g;
    switch (kind) {
    case GeneratorKind::kl:
        g.name = "kl";
        g.f = [](double x) { return -std::log(x); };
        g.fprime = [](double x) { return -1.0 / x; };
        g.f0 = kInf;
        g.fstar0 = 0.0; // lim -log(x)/x
        break;
    case GeneratorKind::hellinger:
        g.name = "hellinger";
        g.f = [](double x) { return 2.0 * (1.0 - std::sqrt(x)); };
        g.fprime = [](double x) { return -1.0 / std::sqrt(x); };
        g.f0 = 2.0;
        g.fstar0 = 0.0;
        break;
    case GeneratorKind::tv_smoothed: {
        // |1-x| is non-differentiable at 1; gradient formulas need f'.
        constexpr double eps = 1e-8;
        g.name = "tv_smoothed";
        g.f = [](double x) {
            const double u = 1.0 - x;
            return std::sqrt(u * u + eps * eps) - eps;
        };
        g.fprime = [](double x) {
            const double u = 1.0 - x;
            return -u / std::sqrt(u * u + eps * eps);
        };
        g.f0 = std::sqrt(1.0 + eps * eps) - eps;
        g.fstar0 = 1.0; // lim (sqrt((1-x)^2+eps^2)-eps)/x
        break;
    }
    }
    return g;
}

ConvexGenerator make_custom_generator(ConvexGenerator g) {
    if (!g.f || !g.fprime) throw std::invalid_argument("custom generator: f and f' required");
    check_convex(g);
    return g;
}

ConvexGenerator dual(const ConvexGenerator& g) {
    ConvexGenerator d;
    d.name = g.name + "*";
    d.f = [f = g.f](double x) { return x * f(1.0 / x); };
    d.fprime = [f = g.f, fp = g.fprime](double x) { return f(1.0 / x) - fp(1.0 / x) / x; };
    d.f0 = g.fstar0;
    d.fstar0 = g.f0;
    return d;
}

double reduced_divergence(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const ConvexGenerator& g) {
    if (x.size() != y.size()) throw std::invalid_argument("reduced_divergence: length mismatch");
    double d = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0) || !(y[j] > 0.0))
            throw std::invalid_argument("reduced_divergence: nonpositive entry");
        d += x[j] * g.f(y[j] / x[j]);
    }
    return d < 0.0 ? 0.0 : d;
}

double reduced_divergence_limits(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                 const ConvexGenerator& g) {
    if (x.size() != y.size()) throw std::invalid_argument("reduced_divergence: length mismatch");
    double d = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x[j] < 0.0 || y[j] < 0.0)
            throw std::invalid_argument("reduced_divergence: negative entry");
        if (x[j] == 0.0) {
            if (y[j] > 0.0) d += y[j] * g.fstar0;
        } else if (y[j] == 0.0) {
            d += x[j] * g.f0;
        } else {
            d += x[j] * g.f(y[j] / x[j]);
        }
        if (std::isinf(d)) return kInf;
    }
    return d < 0.0 ? 0.0 : d;
}

double euclidean_sq(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) throw std::invalid_argument("euclidean_sq: length mismatch");
    return (x - y).squaredNorm();
}

} // namespace hmplan
