#ifndef MOLLER_QUADRATURE_HPP
#define MOLLER_QUADRATURE_HPP

#include <Eigen/Core>
#include <functional>

namespace moller {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule, by Newton iteration
/// on the Legendre polynomial. Exact for polynomials of degree 2n-1.
const GaussRule& gauss_legendre(int n);

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double gauss_integrate(const GaussRule& rule, double a, double b, F&& f) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return hw * acc;
}

/// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b].
/// Bisection until |K15 - G7| meets max(abs_tol, rel_tol*|I|) on each piece.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol = 0.0, int max_depth = 48);

/// Cumulative integrals of f at the given sorted breakpoints: result[i] holds
/// the integral from breakpoints[0] to breakpoints[i]. Each panel is done
/// with the adaptive rule above.
Eigen::VectorXd cumulative_integral(const std::function<double(double)>& f,
                                    const Eigen::VectorXd& breakpoints,
                                    double abs_tol_per_panel);

} // namespace moller

#endif
