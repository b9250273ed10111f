#pragma once

#include "hmplan/divergence.hpp"

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace hmplan::disk {

using Complex = std::complex<double>;

/// A point strictly inside the unit disk. The Poisson kernel and the
/// harmonic-measure gradient blow up at the boundary, so construction
/// enforces |z| < 1 - 1e-9; callers wanting boundary behavior must take
/// limits themselves.
struct DiskPoint {
    explicit DiskPoint(Complex z);
    DiskPoint(double x, double y) : DiskPoint(Complex(x, y)) {}
    Complex z;
};

/// A partition of the unit circle into n >= 2 arcs by strictly increasing
/// angles -pi < theta_1 < ... < theta_n <= pi, closed cyclically with
/// theta_{n+1} = theta_1 + 2*pi. Arc j (0-based) runs from thetas[j] to
/// thetas[j+1 mod n].
struct CirclePartition {
    explicit CirclePartition(std::vector<double> thetas);

    int n() const { return static_cast<int>(thetas.size()); }
    double theta(int j) const { return thetas[j]; }
    // positive arc length of arc j
    double arc_length(int j) const;

    std::vector<double> thetas;
};

/// Uniform partition with n arcs, first breakpoint at theta0.
CirclePartition uniform_circle_partition(int n, double theta0 = 0.0);

/// Poisson kernel of the unit disk, (1/2pi) (1-|z|^2)/|z - e^{i theta}|^2.
double poisson_kernel(const DiskPoint& z, double theta);

/// Antipode of theta relative to z: the angle psi in (-pi, pi] such that
/// e^{i psi} is the second intersection of the chord through e^{i theta}
/// and z with the unit circle.
double antipode(const DiskPoint& z, double theta);

/// Harmonic measure of z relative to arc j: (psi_{j+1} - psi_j)/(2 pi)
/// with the antipode difference taken cyclically into (0, 2 pi).
double harmonic_measure(const DiskPoint& z, const CirclePartition& p, int j);

/// All n harmonic measures of z as a coordinate row.
Eigen::VectorXd harmonic_measures(const DiskPoint& z, const CirclePartition& p);

/// Gradient (by z) of the harmonic measure of arc j, as the vector
/// identified with i/(pi (1-|z|^2)) (e^{i psi_{j+1}} - e^{i psi_j}).
Eigen::Vector2d grad_harmonic_measure(const DiskPoint& z, const CirclePartition& p, int j);

/// Reduced f-divergence distance from z to the target fixed at the
/// origin: sum_j phi_j(0) f(phi_j(z)/phi_j(0)).
double divergence_to_origin(const DiskPoint& z, const CirclePartition& p,
                            const ConvexGenerator& g);

/// Gradient (by z) of divergence_to_origin:
/// sum_j f'(phi_j(z)/phi_j(0)) grad phi_j(z). General targets are reached
/// by Moebius transport of the partition.
Eigen::Vector2d grad_divergence(const DiskPoint& z, const CirclePartition& p,
                                const ConvexGenerator& g);

/// Disk automorphism z -> (z - a)/(1 - conj(a) z); maps the closed disk
/// onto itself, the boundary to the boundary, and a to 0. Test instrument
/// for conformal invariance.
Complex mobius_map(const DiskPoint& a, Complex z);

} // namespace hmplan::disk
