#include "moller/modes.hpp"
#include "moller/dopri5.hpp"
#include "moller/quadrature.hpp"

#include <cmath>
#include <cstdlib>

namespace moller {

namespace {

using Complex = std::complex<double>;

void check_mode_domain(const FrequencyProfile& freq) {
    if (freq.lambda_k < 0.0)
        throw precondition_error("mode: lambda_k must be non-negative");
    if (freq.m1_sq < 0.0 || freq.m2_sq < 0.0)
        throw precondition_error("mode: squared masses must be non-negative");
    if (freq.lambda_k == 0.0 && freq.m1_sq == 0.0)
        throw precondition_error(
            "zero-frequency initial mode: lambda_k = 0 with m1 = 0 has no "
            "positive-frequency splitting");
    const double wsq_min =
        freq.lambda_k * freq.lambda_k + std::min(freq.m1_sq, freq.m2_sq);
    if (!(wsq_min > 0.0))
        throw precondition_error("mode: omega^2 must stay positive on the window");
}

void check_report_grid(const FrequencyProfile& freq, const Eigen::VectorXd& report) {
    if (report.size() < 2)
        throw precondition_error("mode: report grid needs at least two points");
    for (Eigen::Index i = 1; i < report.size(); ++i)
        if (!(report[i] > report[i - 1]))
            throw precondition_error("mode: report grid must be strictly increasing");
    if (freq.m1_sq != freq.m2_sq && !(report[0] <= freq.cutoff.ramp_start()))
        throw precondition_error("mode: integration must start before the scaled ramp");
}

} // namespace

Eigen::Index ModeSolution::index_of(double t) const {
    Eigen::Index best = 0;
    double dist = std::abs(t_grid[0] - t);
    for (Eigen::Index i = 1; i < t_grid.size(); ++i) {
        const double d = std::abs(t_grid[i] - t);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

Eigen::VectorXd uniform_grid(double a, double b, int count) {
    if (count < 2 || !(a < b)) throw precondition_error("uniform_grid: bad arguments");
    Eigen::VectorXd g(count);
    for (int i = 0; i < count; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / (count - 1);
    g[count - 1] = b;
    return g;
}

ModeSolution solve_mode(const FrequencyProfile& freq, const Eigen::VectorXd& report,
                        const SolveOptions& opts) {
    check_mode_domain(freq);
    check_report_grid(freq, report);
    const double t_init = report[0];
    const double t_final = report[report.size() - 1];

    const double w1 = freq.omega1();
    const Complex T0 = std::exp(Complex(0.0, -w1 * t_init)) / std::sqrt(2.0 * w1);
    const Complex Td0 = Complex(0.0, -w1) * T0;

    using Solver = Dopri5<4>;
    Solver::Vec y0;
    y0 << T0.real(), T0.imag(), Td0.real(), Td0.imag();

    ModeSolution sol;
    sol.freq = freq;
    sol.t_grid = report;
    sol.T.resize(report.size());
    sol.T_dot.resize(report.size());

    auto rhs = [&freq](double t, const Solver::Vec& y) {
        const double wsq = freq.omega_sq(t);
        Solver::Vec dy;
        dy << y[2], y[3], -wsq * y[0], -wsq * y[1];
        return dy;
    };
    Solver::Options sopt;
    sopt.rtol = opts.rtol;
    sopt.atol = opts.atol;
    const auto stats = Solver::integrate(
        rhs, t_init, t_final, y0, std::span<const double>(report.data(), report.size()),
        sopt, [&sol](std::size_t i, double, const Solver::Vec& y) {
            sol.T[static_cast<Eigen::Index>(i)] = Complex(y[0], y[1]);
            sol.T_dot[static_cast<Eigen::Index>(i)] = Complex(y[2], y[3]);
        });

    sol.meta.method = "dopri5(4)";
    sol.meta.rtol = opts.rtol;
    sol.meta.atol = opts.atol;
    sol.meta.steps_accepted = stats.accepted;
    sol.meta.steps_rejected = stats.rejected;
    sol.meta.phase_anchor = t_init;

    double drift = 0.0;
    for (Eigen::Index i = 0; i < report.size(); ++i)
        drift = std::max(drift, std::abs(sol.wronskian(i) - Complex(0.0, 1.0)));
    sol.meta.max_wronskian_drift = drift;
    if (drift > opts.wronskian_tol)
        throw integration_error("solve_mode: Wronskian drift " + std::to_string(drift) +
                                " exceeds tolerance");
    return sol;
}

ModeSolution wkb_mode(const FrequencyProfile& freq, const Eigen::VectorXd& report) {
    check_mode_domain(freq);
    check_report_grid(freq, report);
    const double t_init = report[0];

    const Eigen::VectorXd phase = cumulative_integral(
        [&freq](double t) { return freq.omega(t); }, report, 1e-13);

    ModeSolution sol;
    sol.freq = freq;
    sol.t_grid = report;
    sol.T.resize(report.size());
    sol.T_dot.resize(report.size());
    const double anchor = freq.omega1() * t_init;
    for (Eigen::Index i = 0; i < report.size(); ++i) {
        const double w = freq.omega(report[i]);
        const double wdot = freq.omega_sq_dot(report[i]) / (2.0 * w);
        const Complex Ta =
            std::exp(Complex(0.0, -(anchor + phase[i]))) / std::sqrt(2.0 * w);
        sol.T[i] = Ta;
        sol.T_dot[i] = (Complex(0.0, -w) - wdot / (2.0 * w)) * Ta;
    }
    sol.meta.method = "wkb";
    sol.meta.phase_anchor = t_init;
    return sol;
}

double delta_potential(const FrequencyProfile& freq, double t) {
    const double W = freq.omega_sq(t);
    if (!(W > 0.0)) throw precondition_error("delta_potential: omega^2 must be positive");
    const double Wd = freq.omega_sq_dot(t);
    const double Wdd = freq.omega_sq_ddot(t);
    return Wdd / (4.0 * W) - 5.0 * Wd * Wd / (16.0 * W * W);
}

Eigen::VectorXd wkb_error_bound(const FrequencyProfile& freq,
                                const Eigen::VectorXd& report) {
    check_mode_domain(freq);
    const Eigen::VectorXd cum = cumulative_integral(
        [&freq](double t) { return std::abs(delta_potential(freq, t)) / freq.omega(t); },
        report, 1e-13);
    Eigen::VectorXd bound(report.size());
    for (Eigen::Index i = 0; i < report.size(); ++i)
        bound[i] = std::expm1(cum[i]) / (2.0 * std::sqrt(freq.omega(report[i])));
    return bound;
}

double dyson_smallness(const FrequencyProfile& freq, double a, double b) {
    return integrate_adaptive(
        [&freq](double t) { return std::abs(delta_potential(freq, t)) / freq.omega(t); },
        a, b, 1e-12, 1e-10);
}

BogoliubovPair bogoliubov(const ModeSolution& sol, double t_late) {
    const Eigen::Index i = sol.index_of(t_late);
    const double t = sol.t_grid[i];
    const bool deformed = sol.freq.m1_sq != sol.freq.m2_sq;
    if (deformed && sol.freq.cutoff.value(t) != 1.0)
        throw precondition_error("bogoliubov: extraction time must lie after the ramp");
    const double w2 = sol.freq.omega2();
    const Complex T = sol.T[i];
    const Complex Td = sol.T_dot[i];
    const Complex a = 0.5 * (T + Complex(0.0, 1.0) * Td / w2);
    const Complex b = 0.5 * (T - Complex(0.0, 1.0) * Td / w2);
    BogoliubovPair out;
    out.alpha = a * std::sqrt(2.0 * w2) * std::exp(Complex(0.0, w2 * t));
    out.beta = b * std::sqrt(2.0 * w2) * std::exp(Complex(0.0, -w2 * t));
    return out;
}

double mode_energy(const ModeSolution& sol, Eigen::Index i) {
    const double wsq = sol.freq.omega_sq(sol.t_grid[i]);
    return std::norm(sol.T_dot[i]) + wsq * std::norm(sol.T[i]);
}

int worker_count() {
    if (const char* env = std::getenv("MOLLER_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace moller
