#include "moller/modes.hpp"
#include "moller/quadrature.hpp"

#include <cmath>

namespace moller {

namespace {

using Complex = std::complex<double>;

// Partial-panel product-integration weights on the reference panel [-1, 1]:
// PW(g, g') = integral of the g'-th Lagrange basis polynomial from -1 to the
// g-th node. Full-panel weights are the ordinary Gauss weights.
Eigen::MatrixXd partial_weights(const GaussRule& rule) {
    const int q = static_cast<int>(rule.nodes.size());
    const GaussRule& fine = gauss_legendre(32);
    Eigen::MatrixXd pw(q, q);
    auto lagrange = [&rule, q](int gp, double x) {
        double v = 1.0;
        for (int j = 0; j < q; ++j) {
            if (j == gp) continue;
            v *= (x - rule.nodes[j]) / (rule.nodes[gp] - rule.nodes[j]);
        }
        return v;
    };
    for (int g = 0; g < q; ++g)
        for (int gp = 0; gp < q; ++gp)
            pw(g, gp) = gauss_integrate(fine, -1.0, rule.nodes[g],
                                        [&](double x) { return lagrange(gp, x); });
    return pw;
}

} // namespace

ModeSolution dyson_solve(const FrequencyProfile& freq, const Eigen::VectorXd& report,
                         int order, int gauss_points_per_panel) {
    if (order < 0) throw precondition_error("dyson_solve: order must be non-negative");
    ModeSolution aux = wkb_mode(freq, report);
    if (order == 0) {
        aux.meta.method = "dyson-0";
        return aux;
    }

    const int q = gauss_points_per_panel;
    const GaussRule& rule = gauss_legendre(q);
    const Eigen::MatrixXd pw = partial_weights(rule);
    const Eigen::Index panels = report.size() - 1;
    const Eigen::Index n_nodes = panels * q;

    // Geometry and frequency data at the integration nodes.
    Eigen::VectorXd tau(n_nodes), wfull(n_nodes), om_n(n_nodes), delta_n(n_nodes);
    Eigen::VectorXd phase_r = cumulative_integral(
        [&freq](double t) { return freq.omega(t); }, report, 1e-13);
    Eigen::VectorXd phase_n(n_nodes);
    for (Eigen::Index p = 0; p < panels; ++p) {
        const double a = report[p], b = report[p + 1];
        const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (int g = 0; g < q; ++g) {
            const Eigen::Index idx = p * q + g;
            tau[idx] = mid + hw * rule.nodes[g];
            wfull[idx] = hw * rule.weights[g];
            om_n[idx] = freq.omega(tau[idx]);
            delta_n[idx] = delta_potential(freq, tau[idx]);
            phase_n[idx] = phase_r[p] +
                           integrate_adaptive([&freq](double t) { return freq.omega(t); },
                                              a, tau[idx], 1e-13, 1e-12);
        }
    }

    const double anchor = freq.omega1() * report[0];
    Eigen::VectorXcd Ta_n(n_nodes);
    for (Eigen::Index i = 0; i < n_nodes; ++i)
        Ta_n[i] = std::exp(Complex(0.0, -(anchor + phase_n[i]))) / std::sqrt(2.0 * om_n[i]);

    // Picard iteration at the integration nodes: T_l = Ta + K(delta T_{l-1}).
    Eigen::VectorXcd T_prev = Ta_n;
    Eigen::VectorXcd T_cur(n_nodes);
    for (int l = 1; l <= order; ++l) {
        Eigen::VectorXcd h = delta_n.array() * T_prev.array();
        for (Eigen::Index p = 0; p < panels; ++p) {
            const double hw = 0.5 * (report[p + 1] - report[p]);
            // contribution of complete panels below p, accumulated once per panel
            for (int g = 0; g < q; ++g) {
                const Eigen::Index x = p * q + g;
                Complex acc(0.0, 0.0);
                for (Eigen::Index j = 0; j < p * q; ++j)
                    acc += wfull[j] * std::sin(phase_n[x] - phase_n[j]) /
                           std::sqrt(om_n[x] * om_n[j]) * h[j];
                for (int gp = 0; gp < q; ++gp) {
                    const Eigen::Index j = p * q + gp;
                    acc += hw * pw(g, gp) * std::sin(phase_n[x] - phase_n[j]) /
                           std::sqrt(om_n[x] * om_n[j]) * h[j];
                }
                T_cur[x] = Ta_n[x] + acc;
            }
        }
        T_prev = T_cur;
    }

    // Evaluate the final iterate and its derivative on the report grid.
    ModeSolution sol;
    sol.freq = freq;
    sol.t_grid = report;
    sol.T.resize(report.size());
    sol.T_dot.resize(report.size());
    sol.meta.method = "dyson-" + std::to_string(order);
    sol.meta.phase_anchor = report[0];

    const Eigen::VectorXcd h = delta_n.array() * T_prev.array();
    for (Eigen::Index r = 0; r < report.size(); ++r) {
        const double om = freq.omega(report[r]);
        const double omdot = freq.omega_sq_dot(report[r]) / (2.0 * om);
        const Complex Ta =
            std::exp(Complex(0.0, -(anchor + phase_r[r]))) / std::sqrt(2.0 * om);
        const Complex Tadot = (Complex(0.0, -om) - omdot / (2.0 * om)) * Ta;
        Complex acc(0.0, 0.0), acc_dot(0.0, 0.0);
        for (Eigen::Index j = 0; j < r * q; ++j) {
            const double dphi = phase_r[r] - phase_n[j];
            const double root = std::sqrt(om * om_n[j]);
            acc += wfull[j] * std::sin(dphi) / root * h[j];
            acc_dot += wfull[j] *
                       (std::cos(dphi) * om / root -
                        std::sin(dphi) * omdot / (2.0 * om * root)) *
                       h[j];
        }
        sol.T[r] = Ta + acc;
        sol.T_dot[r] = Tadot + acc_dot;
    }
    return sol;
}

} // namespace moller
