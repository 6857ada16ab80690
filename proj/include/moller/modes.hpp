#ifndef MOLLER_MODES_HPP
#define MOLLER_MODES_HPP

#include "moller/cutoff.hpp"
#include "moller/errors.hpp"

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

namespace moller {

/// Time-dependent squared frequency of one temporal mode:
/// omega^2(t) = lambda_k^2 + m1^2 + (m2^2 - m1^2) chi(t).
struct FrequencyProfile {
    double lambda_k;
    double m1_sq;
    double m2_sq;
    CutoffProfile cutoff;

    double omega_sq(double t) const {
        const double dm = m2_sq - m1_sq;
        if (dm == 0.0) return lambda_k * lambda_k + m1_sq;
        return lambda_k * lambda_k + m1_sq + dm * cutoff.value(t);
    }
    double omega(double t) const { return std::sqrt(omega_sq(t)); }
    double omega_sq_dot(double t) const { return (m2_sq - m1_sq) * cutoff.density(t); }
    double omega_sq_ddot(double t) const { return (m2_sq - m1_sq) * cutoff.density_dot(t); }

    double omega1() const { return std::sqrt(lambda_k * lambda_k + m1_sq); }
    double omega2() const { return std::sqrt(lambda_k * lambda_k + m2_sq); }
};

struct SolveOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double wronskian_tol = 1e-8;
};

struct SolverMeta {
    std::string method;
    double rtol = 0.0;
    double atol = 0.0;
    long steps_accepted = 0;
    long steps_rejected = 0;
    double max_wronskian_drift = 0.0;
    double phase_anchor = 0.0; ///< t0 used as the WKB phase reference
};

/// Complex temporal mode with derivative samples on a report grid.
struct ModeSolution {
    FrequencyProfile freq;
    Eigen::VectorXd t_grid;
    Eigen::VectorXcd T;
    Eigen::VectorXcd T_dot;
    SolverMeta meta;

    /// Index of the grid point closest to t.
    Eigen::Index index_of(double t) const;
    /// W(t) = conj(T_dot) T - conj(T) T_dot at a grid index; i for exact data.
    std::complex<double> wronskian(Eigen::Index i) const {
        return std::conj(T_dot[i]) * T[i] - std::conj(T[i]) * T_dot[i];
    }
};

Eigen::VectorXd uniform_grid(double a, double b, int count);

/// Integrate the mode ODE from exact plane-wave data at t_init (which must
/// precede the scaled ramp) and sample on the report grid. Throws
/// integration_error if the Wronskian drifts beyond tolerance.
ModeSolution solve_mode(const FrequencyProfile& freq, const Eigen::VectorXd& report_times,
                        const SolveOptions& opts = {});

/// Auxiliary adiabatic mode (2 omega)^{-1/2} exp(-i phase) with the phase
/// integral accumulated by adaptive quadrature and anchored to the plane wave
/// at the first report time.
ModeSolution wkb_mode(const FrequencyProfile& freq, const Eigen::VectorXd& report_times);

/// delta = omega_ddot/(2 omega) - (3/4)(omega_dot/omega)^2 from analytic
/// cutoff derivatives.
double delta_potential(const FrequencyProfile& freq, double t);

/// Pointwise Dyson remainder bound (2 sqrt(omega))^{-1} (exp(int |delta|/omega) - 1),
/// accumulated from report_times[0].
Eigen::VectorXd wkb_error_bound(const FrequencyProfile& freq,
                                const Eigen::VectorXd& report_times);

/// Order-L partial sum of the Dyson series around the auxiliary mode, all
/// time integrals by composite Gauss quadrature on the report-grid panels.
ModeSolution dyson_solve(const FrequencyProfile& freq, const Eigen::VectorXd& report_times,
                         int order, int gauss_points_per_panel = 6);

/// int |delta|/omega over [a, b]; the smallness parameter of the Dyson regime.
double dyson_smallness(const FrequencyProfile& freq, double a, double b);

struct BogoliubovPair {
    std::complex<double> alpha;
    std::complex<double> beta;
    double normalization_defect() const {
        return std::norm(alpha) - std::norm(beta) - 1.0;
    }
};

/// Match the solution onto target-mass plane waves at the grid point nearest
/// to t_late; requires chi == 1 there.
BogoliubovPair bogoliubov(const ModeSolution& sol, double t_late);

/// E(t) = |T_dot|^2 + omega^2 |T|^2 at a grid index.
double mode_energy(const ModeSolution& sol, Eigen::Index i);

/// Map fn over inputs with a deterministic output ordering; worker count from
/// the MOLLER_THREADS environment variable, else the hardware concurrency.
int worker_count();

template <class In, class F>
auto parallel_mode_map(const std::vector<In>& inputs, F&& fn)
    -> std::vector<decltype(fn(inputs[0]))>;

} // namespace moller

#include "moller/parallel_impl.hpp"

#endif
