#ifndef MOLLER_SCENARIO_HPP
#define MOLLER_SCENARIO_HPP

#include "moller/cutoff.hpp"
#include "moller/lattice.hpp"
#include "moller/measure.hpp"
#include "moller/states.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace moller {

/// Everything a run needs, parsed from the flat-section key-value format
/// documented in docs/formats.md.
struct Scenario {
    std::string name;
    std::uint64_t seed = 1;

    // [lattice]
    int lattice_n_t = 64;
    int lattice_n_x = 64;
    double lattice_dt = 0.1;
    double lattice_dx = 0.2;
    std::string lattice_topology = "circle";
    double lattice_t_min = -3.2;

    // [cutoff]
    std::string cutoff_kind = "compact-bump";
    double cutoff_t_on = -2.0;
    double cutoff_t_off = -1.0;
    double cutoff_scale = 1.0;

    // [masses] (masses, not squared)
    double mass_m1 = 1.0;
    double mass_m2 = 2.0;

    // [band]
    double band_t_a = 0.0;
    double band_t_b = 1.0;

    // [measure]
    std::string measure_kind = "circle";
    double measure_L = 2.0 * M_PI;
    int measure_j_max = 32;
    bool measure_include_zero_mode = true;
    double measure_k_min = 0.0;
    double measure_k_max = 8.0;
    int measure_panels = 32;
    int measure_order = 8;

    // [modes]
    std::vector<double> mode_lambda_values; ///< empty: derived from the measure
    std::vector<int> mode_n_list = {1, 2, 4, 8, 16};
    double mode_t_final = 2.0;
    int mode_report_points = 801;
    double mode_rtol = 1e-10;
    double mode_atol = 1e-12;
    double mode_t_margin = 1.0;
    int dyson_order = 3;

    // [sweep]
    std::vector<int> sweep_n_list = {1, 2, 4, 8, 16};
    double sweep_translate_tau = 0.5;

    // [test_functions]
    double u_t_center = 0.8, u_t_width = 0.6;
    double u_x_center = 3.0, u_x_width = 1.2;
    double v_t_center = 0.9, v_t_width = 0.5;
    double v_x_center = 3.3, v_x_width = 1.0;

    // [identities]
    int identity_samples = 100;
    int causality_samples = 20;
    int reconstruction_samples = 20;
    int symplectic_samples = 50;

    // [spectral]
    std::vector<double> spectral_eps_list = {0.1, 0.05, 0.025, 0.0125};
    double spectral_threshold = 1e-3;

    // [tolerances]
    double tol_identity = 1e-9;
    double tol_reconstruction = 1e-9;
    double tol_symplectic = 1e-8;
    double tol_wronskian = 1e-8;
    double tol_wkb_slack = 1e-9;
    double tol_energy_slack = 1e-8;
    double tol_ccr = 1e-8;
    double tol_positivity = 1e-12;
    double tol_dyson = 1e-6;

    // [output]
    std::string output_dir = "out";

    // Derived builders (validated).
    double m1_sq() const { return mass_m1 * mass_m1; }
    double m2_sq() const { return mass_m2 * mass_m2; }
    CausalLattice lattice() const;
    CutoffProfile cutoff() const;   ///< base ramp at the configured scale
    PotentialProfile potential() const;
    BandSpec band() const;
    SpectralMeasure measure() const;
    TestFunctionSpec test_u() const;
    TestFunctionSpec test_v() const;
    std::vector<double> lambda_grid() const; ///< explicit list or measure eigenvalues
};

/// Parse and validate; throws parse_error on malformed lines and config_error
/// listing every violated invariant with its field path.
Scenario parse_config(const std::filesystem::path& path);
Scenario parse_config_text(const std::string& text);

/// Canonical round-trippable rendering of a scenario.
std::string serialize(const Scenario& s);

/// All cross-field violations (empty when valid).
std::vector<std::string> validate(const Scenario& s);

bool operator==(const Scenario& a, const Scenario& b);

} // namespace moller

#endif
