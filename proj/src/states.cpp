#include "moller/states.hpp"
#include "moller/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace moller {

namespace {

using Complex = std::complex<double>;

struct QuadGrid {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

QuadGrid smearing_grid(const TestFunctionSpec& u, const TestFunctionSpec& v,
                       const AssemblyOptions& opts) {
    const double lo = std::min(u.temporal.lo(), v.temporal.lo()) - opts.support_pad;
    const double hi = std::max(u.temporal.hi(), v.temporal.hi()) + opts.support_pad;
    const GaussRule& rule = gauss_legendre(opts.gauss_order);
    const int panels = opts.time_panels;
    QuadGrid grid;
    grid.nodes.resize(panels * opts.gauss_order);
    grid.weights.resize(panels * opts.gauss_order);
    for (int p = 0; p < panels; ++p) {
        const double a = lo + (hi - lo) * p / panels;
        const double b = lo + (hi - lo) * (p + 1) / panels;
        for (int g = 0; g < opts.gauss_order; ++g) {
            grid.nodes[p * opts.gauss_order + g] =
                0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[g];
            grid.weights[p * opts.gauss_order + g] = 0.5 * (b - a) * rule.weights[g];
        }
    }
    return grid;
}

Complex bump_transform(const BumpProfile& h, double k) {
    const double re = integrate_adaptive(
        [&h, k](double x) { return h.value(x) * std::cos(k * x); }, h.lo(), h.hi(),
        1e-14, 1e-12);
    const double im = integrate_adaptive(
        [&h, k](double x) { return -h.value(x) * std::sin(k * x); }, h.lo(), h.hi(),
        1e-14, 1e-12);
    return {re, im};
}

/// Spatial transform of w at +lambda for every channel.
Eigen::VectorXcd spatial_transforms(const SpectralMeasure& measure,
                                    const TestFunctionSpec& w) {
    if (w.spatial_table) {
        if (w.spatial_table->size() != static_cast<Eigen::Index>(measure.channels().size()))
            throw precondition_error("spatial transform table size does not match measure");
        return *w.spatial_table;
    }
    if (measure.kind() == MeasureKind::radial3d || measure.kind() == MeasureKind::custom)
        throw precondition_error(
            "this measure kind needs explicit spatial transforms for state assembly");
    const auto& chans = measure.channels();
    Eigen::VectorXcd out(chans.size());
    for (std::size_t c = 0; c < chans.size(); ++c)
        out[c] = bump_transform(w.spatial, chans[c].lambda);
    return out;
}

/// Sum over the +/-k degeneracy of hat(u)(k) conj(hat(v)(k)); real test
/// functions have hat(w)(-k) = conj(hat(w)(k)).
Complex degeneracy_sum(const SpectralChannel& ch, Complex hu, Complex hv) {
    const Complex direct = hu * std::conj(hv);
    if (ch.multiplicity == 2) return direct + std::conj(direct);
    return direct;
}

/// Temporal mode samples (one row per channel) on the quadrature nodes.
std::vector<Eigen::VectorXcd> mode_samples(const PotentialProfile& pot,
                                           const SpectralMeasure& measure,
                                           const QuadGrid& grid,
                                           const AssemblyOptions& opts) {
    const auto& chans = measure.channels();
    const bool deformed = pot.cutoff.has_value() && pot.base_mass_sq != pot.target_mass_sq;
    if (!deformed) {
        std::vector<Eigen::VectorXcd> rows(chans.size());
        for (std::size_t c = 0; c < chans.size(); ++c) {
            const double w = std::sqrt(chans[c].lambda * chans[c].lambda + pot.target_mass_sq);
            if (!(w > 0.0)) throw precondition_error("zero mode present");
            Eigen::VectorXcd T(grid.nodes.size());
            for (Eigen::Index i = 0; i < grid.nodes.size(); ++i)
                T[i] = std::exp(Complex(0.0, -w * grid.nodes[i])) / std::sqrt(2.0 * w);
            rows[c] = T;
        }
        return rows;
    }

    const CutoffProfile& chi = *pot.cutoff;
    // Report grid = integration start followed by the quadrature nodes.
    Eigen::VectorXd report(grid.nodes.size() + 1);
    report[0] = chi.ramp_start() - opts.t_margin;
    report.tail(grid.nodes.size()) = grid.nodes;
    if (!(report[0] < grid.nodes[0]))
        throw precondition_error("smearing support must lie after the scaled ramp start");

    std::vector<std::size_t> idx(chans.size());
    for (std::size_t c = 0; c < chans.size(); ++c) idx[c] = c;
    return parallel_mode_map(idx, [&](std::size_t c) {
        FrequencyProfile freq{chans[c].lambda, pot.base_mass_sq, pot.target_mass_sq, chi};
        const ModeSolution sol = solve_mode(freq, report, opts.mode_opts);
        return Eigen::VectorXcd(sol.T.tail(grid.nodes.size()));
    });
}

StateEvaluation assemble(const PotentialProfile& pot, const SpectralMeasure& measure,
                         const TestFunctionSpec& u, const TestFunctionSpec& v,
                         const AssemblyOptions& opts) {
    const QuadGrid grid = smearing_grid(u, v, opts);
    const auto& chans = measure.channels();
    const Eigen::VectorXcd hu = spatial_transforms(measure, u);
    const Eigen::VectorXcd hv = spatial_transforms(measure, v);
    const auto T_rows = mode_samples(pot, measure, grid, opts);

    Eigen::VectorXd gu(grid.nodes.size()), gv(grid.nodes.size());
    for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
        gu[i] = u.temporal.value(grid.nodes[i]);
        gv[i] = v.temporal.value(grid.nodes[i]);
    }

    StateEvaluation out;
    out.components.reserve(chans.size());
    for (std::size_t c = 0; c < chans.size(); ++c) {
        Complex theta_u(0.0, 0.0), theta_v(0.0, 0.0);
        for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
            const Complex tc = std::conj(T_rows[c][i]) * grid.weights[i];
            theta_u += tc * gu[i];
            theta_v += tc * gv[i];
        }
        const Complex contrib = chans[c].weight * theta_u * std::conj(theta_v) *
                                degeneracy_sum(chans[c], hu[c], hv[c]);
        out.components.push_back({chans[c].lambda, contrib});
        out.value += contrib;
    }

    if (out.components.size() >= 2) {
        const double last = std::abs(out.components.back().contribution);
        const double prev = std::abs(out.components[out.components.size() - 2].contribution);
        if (prev > 0.0) {
            const double r = std::min(last / prev, 0.95);
            out.truncation_estimate = last * r / (1.0 - r);
        } else {
            out.truncation_estimate = last;
        }
    }
    return out;
}

void check_supports_in_flat_region(const PotentialProfile& pot, const TestFunctionSpec& u,
                                   const TestFunctionSpec& v) {
    if (!pot.cutoff) return;
    const double lo = std::min(u.temporal.lo(), v.temporal.lo());
    if (pot.cutoff->value(lo) != 1.0)
        throw precondition_error(
            "test-function support overlaps the ramp; deformed smearing needs chi == 1");
}

} // namespace

StateEvaluation vacuum_two_point(double mass_sq, const SpectralMeasure& measure,
                                 const TestFunctionSpec& u, const TestFunctionSpec& v,
                                 const AssemblyOptions& opts) {
    if (mass_sq < 0.0) throw precondition_error("vacuum_two_point: mass^2 must be >= 0");
    if (mass_sq == 0.0 && measure.has_zero_mode())
        throw precondition_error("zero mode present");
    return assemble(PotentialProfile::constant(mass_sq), measure, u, v, opts);
}

StateEvaluation deformed_two_point(const PotentialProfile& pot,
                                   const SpectralMeasure& measure,
                                   const TestFunctionSpec& u, const TestFunctionSpec& v,
                                   const AssemblyOptions& opts) {
    if (!pot.cutoff)
        throw precondition_error("deformed_two_point: potential carries no cutoff");
    if (pot.base_mass_sq == 0.0 && measure.has_zero_mode())
        throw precondition_error("zero mode present");
    check_supports_in_flat_region(pot, u, v);
    return assemble(pot, measure, u, v, opts);
}

double mode_commutator_form(const PotentialProfile& pot, const SpectralMeasure& measure,
                            const TestFunctionSpec& u, const TestFunctionSpec& v,
                            const AssemblyOptions& opts) {
    const QuadGrid grid = smearing_grid(u, v, opts);
    const auto& chans = measure.channels();
    const Eigen::VectorXcd hu = spatial_transforms(measure, u);
    const Eigen::VectorXcd hv = spatial_transforms(measure, v);
    const auto T_rows = mode_samples(pot, measure, grid, opts);

    Eigen::VectorXd gu(grid.nodes.size()), gv(grid.nodes.size());
    for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
        gu[i] = u.temporal.value(grid.nodes[i]) * grid.weights[i];
        gv[i] = v.temporal.value(grid.nodes[i]) * grid.weights[i];
    }

    double sigma = 0.0;
    for (std::size_t c = 0; c < chans.size(); ++c) {
        // double smearing of the commutator kernel -2 Im[T(t) conj(T(t'))]
        Complex a(0.0, 0.0), b(0.0, 0.0);
        for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
            a += gu[i] * std::conj(T_rows[c][i]);
            b += gv[i] * T_rows[c][i];
        }
        const double kernel = 2.0 * std::imag(a * b);
        const double spatial = (chans[c].multiplicity == 2 ? 2.0 : 1.0) *
                               std::real(std::conj(hu[c]) * hv[c]);
        sigma += chans[c].weight * spatial * kernel;
    }
    return sigma;
}

SweepResult adiabatic_sweep(const std::vector<int>& n_list, double m1_sq, double m2_sq,
                            const CutoffProfile& chi, const SpectralMeasure& measure,
                            const TestFunctionSpec& u, const TestFunctionSpec& v,
                            const SweepOptions& opts) {
    if (n_list.empty()) throw precondition_error("adiabatic_sweep: empty n list");
    SweepResult result;
    result.target = vacuum_two_point(m2_sq, measure, u, v, opts.assembly).value;

    for (const int n : n_list) {
        if (n < 1) throw precondition_error("adiabatic_sweep: scales must be >= 1");
        const PotentialProfile pot{m1_sq, m2_sq, chi.scaled(static_cast<double>(n))};
        const StateEvaluation eval = deformed_two_point(pot, measure, u, v, opts.assembly);

        SweepRow row{};
        row.n = n;
        row.value = eval.value;
        row.abs_diff = std::abs(eval.value - result.target);

        const double sigma = mode_commutator_form(pot, measure, u, v, opts.assembly);
        const double ccr_lhs = std::imag(eval.value);
        row.ccr_residual = std::abs(ccr_lhs - 0.5 * sigma) /
                           std::max(std::abs(0.5 * sigma), 1e-30);
        row.positivity = deformed_two_point(pot, measure, u, u, opts.assembly).value.real();

        if (opts.translate_proxy) {
            TestFunctionSpec ut = u, vt = v;
            ut.temporal.center += opts.translate_tau;
            vt.temporal.center += opts.translate_tau;
            const StateEvaluation shifted = deformed_two_point(pot, measure, ut, vt, opts.assembly);
            row.translate_diff = std::abs(shifted.value - eval.value);
        }
        result.rows.push_back(row);
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& row : result.rows) {
        if (row.abs_diff <= 1e-15) continue;
        const double x = std::log(static_cast<double>(row.n));
        const double y = std::log(row.abs_diff);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++count;
    }
    if (count >= 2)
        result.fitted_order = -(count * sxy - sx * sy) / (count * sxx - sx * sx);
    return result;
}

ProxyResult hadamard_proxy(const PotentialProfile& pot, const SpectralMeasure& measure,
                           const ProxyOptions& opts) {
    if (!pot.cutoff) throw precondition_error("hadamard_proxy: potential carries no cutoff");
    const CutoffProfile& chi = *pot.cutoff;
    const double t_init = chi.ramp_start() - opts.t_margin;
    const double t_late = 0.5 * (chi.ramp_end() + opts.t_final);
    const Eigen::VectorXd report = uniform_grid(t_init, opts.t_final, opts.report_points);

    std::vector<double> lambdas;
    for (const auto& ch : measure.channels())
        if (!(ch.lambda == 0.0 && pot.base_mass_sq == 0.0)) lambdas.push_back(ch.lambda);

    const auto betas = parallel_mode_map(lambdas, [&](double lambda) {
        FrequencyProfile freq{lambda, pot.base_mass_sq, pot.target_mass_sq, chi};
        const ModeSolution sol = solve_mode(freq, report, opts.mode_opts);
        return std::abs(bogoliubov(sol, t_late).beta);
    });

    ProxyResult result;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        result.rows.push_back({lambdas[i], betas[i]});

    // fit on the upper half of the grid, ignoring values at the noise floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = result.rows.size() / 2; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        if (row.lambda <= 0.0 || row.abs_beta < opts.beta_floor) continue;
        const double x = std::log(row.lambda);
        const double y = std::log(row.abs_beta);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++count;
    }
    if (count < 2) {
        result.all_below_floor = true;
        result.fitted_p = std::numeric_limits<double>::infinity();
        result.pass = true;
        return result;
    }
    result.fitted_p = -(count * sxy - sx * sy) / (count * sxx - sx * sx);
    result.pass = result.fitted_p >= opts.required_exponent;
    return result;
}

} // namespace moller
