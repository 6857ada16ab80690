#ifndef MOLLER_STATES_HPP
#define MOLLER_STATES_HPP

#include "moller/lattice.hpp"
#include "moller/measure.hpp"
#include "moller/modes.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace moller {

/// Smooth compactly supported bump amplitude exp(-1/(1-u^2)), u = (x-c)/w;
/// support is exactly [center - width, center + width].
struct BumpProfile {
    double center;
    double width;
    double value(double x) const {
        const double u = (x - center) / width;
        const double s = 1.0 - u * u;
        if (s <= 0.0) return 0.0;
        return std::exp(-1.0 / s);
    }
    double lo() const { return center - width; }
    double hi() const { return center + width; }
};

/// Separable real test function g(t) h(x) built from two bumps.
struct TestFunctionSpec {
    BumpProfile temporal;
    BumpProfile spatial;
    /// Optional user-supplied spatial transforms, one per measure channel
    /// (value at +k; the -k value of a real function is its conjugate).
    std::optional<Eigen::VectorXcd> spatial_table;
};

struct AssemblyOptions {
    int time_panels = 48;       ///< quadrature panels across the smearing support
    int gauss_order = 8;        ///< Gauss-Legendre order per panel
    double support_pad = 1e-3;  ///< padding added around the exact support
    double t_margin = 1.0;      ///< mode start time before the scaled ramp
    SolveOptions mode_opts{};
};

struct ModeContribution {
    double lambda;
    std::complex<double> contribution;
};

struct StateEvaluation {
    std::complex<double> value{0.0, 0.0};
    std::vector<ModeContribution> components;
    double truncation_estimate = 0.0;
};

/// Ground-state two-point function of mass m (squared), smeared with u and v.
StateEvaluation vacuum_two_point(double mass_sq, const SpectralMeasure& measure,
                                 const TestFunctionSpec& u, const TestFunctionSpec& v,
                                 const AssemblyOptions& opts = {});

/// Deformed two-point function with modes driven through the cutoff of `pot`.
/// Test-function supports must lie where chi == 1.
StateEvaluation deformed_two_point(const PotentialProfile& pot,
                                   const SpectralMeasure& measure,
                                   const TestFunctionSpec& u, const TestFunctionSpec& v,
                                   const AssemblyOptions& opts = {});

/// Mode-summed symplectic form (smeared commutator): equals the lattice
/// sigma_V in the continuum limit and pins the CCR check
/// omega2(u,v) - omega2(v,u) = i sigma(u,v).
double mode_commutator_form(const PotentialProfile& pot, const SpectralMeasure& measure,
                            const TestFunctionSpec& u, const TestFunctionSpec& v,
                            const AssemblyOptions& opts = {});

struct SweepRow {
    int n;
    std::complex<double> value;
    double abs_diff;       ///< |value - target|
    double ccr_residual;   ///< relative CCR defect at this n
    double positivity;     ///< omega2_n(u, u), real part (should be >= 0)
    double translate_diff; ///< |omega2_n(u_tau, v_tau) - omega2_n(u, v)|, if enabled
};

struct SweepResult {
    std::complex<double> target;
    std::vector<SweepRow> rows;
    double fitted_order = 0.0; ///< decay order p in |diff| ~ n^-p
};

struct SweepOptions {
    AssemblyOptions assembly{};
    bool translate_proxy = false;
    double translate_tau = 0.5;
};

/// Deformed values against the target-mass vacuum over the scale list n_list.
SweepResult adiabatic_sweep(const std::vector<int>& n_list, double m1_sq, double m2_sq,
                            const CutoffProfile& chi, const SpectralMeasure& measure,
                            const TestFunctionSpec& u, const TestFunctionSpec& v,
                            const SweepOptions& opts = {});

struct ProxyRow {
    double lambda;
    double abs_beta;
};

struct ProxyResult {
    std::vector<ProxyRow> rows;
    double fitted_p = 0.0; ///< decay exponent in |beta_k| ~ lambda_k^-p
    bool pass = false;     ///< p >= 3, or every beta below the noise floor
    bool all_below_floor = false;
};

struct ProxyOptions {
    double t_final = 2.0;
    int report_points = 801;
    double beta_floor = 1e-12;
    double required_exponent = 3.0;
    double t_margin = 1.0;
    SolveOptions mode_opts{};
};

/// Mode-contamination decay proxy: |beta_k| across the measure's eigenvalue
/// grid with the exponent fitted on the upper half.
ProxyResult hadamard_proxy(const PotentialProfile& pot, const SpectralMeasure& measure,
                           const ProxyOptions& opts = {});

} // namespace moller

#endif
