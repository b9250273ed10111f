#include "hmplan/disk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmplan::disk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// wrap into (-pi, pi]
double wrap_angle(double a) {
    a = std::remainder(a, kTwoPi); // [-pi, pi]
    if (a <= -kPi) a += kTwoPi;
    return a;
}

// cyclic difference b - a mapped into (0, 2pi]
double cyclic_diff(double a, double b) {
    double d = b - a;
    d -= kTwoPi * std::floor(d / kTwoPi);
    if (d <= 0.0) d += kTwoPi;
    return d;
}

} // namespace

DiskPoint::DiskPoint(Complex zz) : z(zz) {
    if (!(std::abs(z) < 1.0 - 1e-9))
        throw std::invalid_argument("DiskPoint: |z| must be < 1 - 1e-9");
}

CirclePartition::CirclePartition(std::vector<double> ts) : thetas(std::move(ts)) {
    if (thetas.size() < 2) throw std::invalid_argument("CirclePartition: n >= 2 required");
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        if (!(thetas[j] > -kPi) || !(thetas[j] <= kPi))
            throw std::invalid_argument("CirclePartition: angles must lie in (-pi, pi]");
        if (j > 0 && !(thetas[j] > thetas[j - 1]))
            throw std::invalid_argument("CirclePartition: angles must be strictly increasing");
    }
}

double CirclePartition::arc_length(int j) const {
    const int m = n();
    return cyclic_diff(thetas[j], thetas[(j + 1) % m]);
}

CirclePartition uniform_circle_partition(int n, double theta0) {
    std::vector<double> ts(n);
    for (int j = 0; j < n; ++j) ts[j] = wrap_angle(theta0 + kTwoPi * j / n);
    std::sort(ts.begin(), ts.end());
    return CirclePartition(std::move(ts));
}

double poisson_kernel(const DiskPoint& z, double theta) {
    const Complex b = std::polar(1.0, theta);
    return (1.0 - std::norm(z.z)) / (kTwoPi * std::norm(z.z - b));
}

double antipode(const DiskPoint& z, double theta) {
    const Complex v = std::polar(1.0, theta) - z.z;
    const Complex w_plus_z = -(v / std::conj(v)) * std::polar(1.0, -theta);
    double psi = std::arg(w_plus_z);
    if (psi <= -kPi) psi += kTwoPi;
    return psi;
}

double harmonic_measure(const DiskPoint& z, const CirclePartition& p, int j) {
    const int m = p.n();
    const double psi_a = antipode(z, p.theta(j));
    const double psi_b = antipode(z, p.theta((j + 1) % m));
    return cyclic_diff(psi_a, psi_b) / kTwoPi;
}

Eigen::VectorXd harmonic_measures(const DiskPoint& z, const CirclePartition& p) {
    const int m = p.n();
    Eigen::VectorXd phi(m);
    std::vector<double> psi(m);
    for (int j = 0; j < m; ++j) psi[j] = antipode(z, p.theta(j));
    for (int j = 0; j < m; ++j) phi[j] = cyclic_diff(psi[j], psi[(j + 1) % m]) / kTwoPi;
    return phi;
}

Eigen::Vector2d grad_harmonic_measure(const DiskPoint& z, const CirclePartition& p, int j) {
    const int m = p.n();
    const double psi_a = antipode(z, p.theta(j));
    const double psi_b = antipode(z, p.theta((j + 1) % m));
    const Complex g =
        Complex(0.0, 1.0) / (kPi * (1.0 - std::norm(z.z))) *
        (std::polar(1.0, psi_b) - std::polar(1.0, psi_a));
    return {g.real(), g.imag()};
}

double divergence_to_origin(const DiskPoint& z, const CirclePartition& p,
                            const ConvexGenerator& g) {
    double d = 0.0;
    for (int j = 0; j < p.n(); ++j) {
        const double phi0 = p.arc_length(j) / kTwoPi;
        d += phi0 * g.f(harmonic_measure(z, p, j) / phi0);
    }
    return d < 0.0 ? 0.0 : d;
}

Eigen::Vector2d grad_divergence(const DiskPoint& z, const CirclePartition& p,
                                const ConvexGenerator& g) {
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    for (int j = 0; j < p.n(); ++j) {
        const double phi0 = p.arc_length(j) / kTwoPi;
        const double ratio = harmonic_measure(z, p, j) / phi0;
        grad += g.fprime(ratio) * grad_harmonic_measure(z, p, j);
    }
    return grad;
}

Complex mobius_map(const DiskPoint& a, Complex z) {
    return (z - a.z) / (1.0 - std::conj(a.z) * z);
}

} // namespace hmplan::disk
