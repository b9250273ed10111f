#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>

namespace hmplan {

/// A strictly convex generator f with f(1) = 0, its derivative, and the
/// two limit values f(0+) and f*(0+) = lim_{x->inf} f(x)/x. Limits may be
/// +infinity. Generators drive the reduced divergence between coordinate
/// rows.
struct ConvexGenerator {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    double f0 = 0.0;     // f(0+)
    double fstar0 = 0.0; // f*(0+)
};

enum class GeneratorKind { kl, hellinger, tv_smoothed };

/// Built-in generators: kl (f = -log x), hellinger (f = 2(1-sqrt x)),
/// tv_smoothed (|1-x| smoothed near 1 so f' exists everywhere).
ConvexGenerator make_generator(GeneratorKind kind);

/// Validates and returns a user-supplied generator. Throws if f(1) != 0
/// (within 1e-14) or sampled convexity fails.
ConvexGenerator make_custom_generator(ConvexGenerator g);

/// Dual generator f*(x) = x f(1/x). Swaps the divergence arguments.
ConvexGenerator dual(const ConvexGenerator& g);

/// Reduced f-divergence d_f(x, y) = sum_j x_j f(y_j / x_j) for strictly
/// positive rows of equal length. Throws on length mismatch or a
/// nonpositive entry.
double reduced_divergence(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const ConvexGenerator& g);

/// As reduced_divergence, but zero entries are admitted via the standard
/// f-divergence limit conventions: a term with x_j = 0 contributes
/// y_j * f*(0), a term with y_j = 0 contributes x_j * f(0), and a term
/// with both zero contributes nothing. May return +infinity when the
/// relevant limit is infinite. Coordinate rows of boundary vertices
/// (indicator-like, containing exact zeros) go through here.
double reduced_divergence_limits(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                 const ConvexGenerator& g);

/// Naive squared-difference distance sum_j (x_j - y_j)^2, the negative
/// control: it has no gradient guarantee and may trap descent.
double euclidean_sq(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

} // namespace hmplan
