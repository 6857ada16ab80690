#include "moller/scenario.hpp"
#include "moller/moller_ops.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace moller {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct FieldBinder {
    std::map<std::string, std::function<void(const std::string&)>> setters;
    std::vector<std::string>* errors = nullptr;

    void bind_double(const std::string& key, double* slot) {
        setters[key] = [this, key, slot](const std::string& v) {
            try {
                *slot = std::stod(v);
            } catch (...) {
                errors->push_back(key + ": not a number: '" + v + "'");
            }
        };
    }
    void bind_int(const std::string& key, int* slot) {
        setters[key] = [this, key, slot](const std::string& v) {
            try {
                *slot = std::stoi(v);
            } catch (...) {
                errors->push_back(key + ": not an integer: '" + v + "'");
            }
        };
    }
    void bind_u64(const std::string& key, std::uint64_t* slot) {
        setters[key] = [this, key, slot](const std::string& v) {
            try {
                *slot = std::stoull(v);
            } catch (...) {
                errors->push_back(key + ": not an unsigned integer: '" + v + "'");
            }
        };
    }
    void bind_bool(const std::string& key, bool* slot) {
        setters[key] = [this, key, slot](const std::string& v) {
            if (v == "true" || v == "1")
                *slot = true;
            else if (v == "false" || v == "0")
                *slot = false;
            else
                errors->push_back(key + ": expected true/false: '" + v + "'");
        };
    }
    void bind_string(const std::string& key, std::string* slot) {
        setters[key] = [slot](const std::string& v) { *slot = v; };
    }
    void bind_double_list(const std::string& key, std::vector<double>* slot) {
        setters[key] = [this, key, slot](const std::string& v) {
            slot->clear();
            for (const auto& item : split_list(v)) {
                try {
                    slot->push_back(std::stod(item));
                } catch (...) {
                    errors->push_back(key + ": not a number: '" + item + "'");
                }
            }
        };
    }
    void bind_int_list(const std::string& key, std::vector<int>* slot) {
        setters[key] = [this, key, slot](const std::string& v) {
            slot->clear();
            for (const auto& item : split_list(v)) {
                try {
                    slot->push_back(std::stoi(item));
                } catch (...) {
                    errors->push_back(key + ": not an integer: '" + item + "'");
                }
            }
        };
    }
};

FieldBinder make_binder(Scenario& s, std::vector<std::string>& errors) {
    FieldBinder b;
    b.errors = &errors;
    b.bind_string("name", &s.name);
    b.bind_u64("seed", &s.seed);

    b.bind_int("lattice.n_t", &s.lattice_n_t);
    b.bind_int("lattice.n_x", &s.lattice_n_x);
    b.bind_double("lattice.dt", &s.lattice_dt);
    b.bind_double("lattice.dx", &s.lattice_dx);
    b.bind_string("lattice.topology", &s.lattice_topology);
    b.bind_double("lattice.t_min", &s.lattice_t_min);

    b.bind_string("cutoff.kind", &s.cutoff_kind);
    b.bind_double("cutoff.t_on", &s.cutoff_t_on);
    b.bind_double("cutoff.t_off", &s.cutoff_t_off);
    b.bind_double("cutoff.scale", &s.cutoff_scale);

    b.bind_double("masses.m1", &s.mass_m1);
    b.bind_double("masses.m2", &s.mass_m2);

    b.bind_double("band.t_a", &s.band_t_a);
    b.bind_double("band.t_b", &s.band_t_b);

    b.bind_string("measure.kind", &s.measure_kind);
    b.bind_double("measure.L", &s.measure_L);
    b.bind_int("measure.j_max", &s.measure_j_max);
    b.bind_bool("measure.include_zero_mode", &s.measure_include_zero_mode);
    b.bind_double("measure.k_min", &s.measure_k_min);
    b.bind_double("measure.k_max", &s.measure_k_max);
    b.bind_int("measure.panels", &s.measure_panels);
    b.bind_int("measure.order", &s.measure_order);

    b.bind_double_list("modes.lambda_values", &s.mode_lambda_values);
    b.bind_int_list("modes.n_list", &s.mode_n_list);
    b.bind_double("modes.t_final", &s.mode_t_final);
    b.bind_int("modes.report_points", &s.mode_report_points);
    b.bind_double("modes.rtol", &s.mode_rtol);
    b.bind_double("modes.atol", &s.mode_atol);
    b.bind_double("modes.t_margin", &s.mode_t_margin);
    b.bind_int("modes.dyson_order", &s.dyson_order);

    b.bind_int_list("sweep.n_list", &s.sweep_n_list);
    b.bind_double("sweep.translate_tau", &s.sweep_translate_tau);

    b.bind_double("test_functions.u_t_center", &s.u_t_center);
    b.bind_double("test_functions.u_t_width", &s.u_t_width);
    b.bind_double("test_functions.u_x_center", &s.u_x_center);
    b.bind_double("test_functions.u_x_width", &s.u_x_width);
    b.bind_double("test_functions.v_t_center", &s.v_t_center);
    b.bind_double("test_functions.v_t_width", &s.v_t_width);
    b.bind_double("test_functions.v_x_center", &s.v_x_center);
    b.bind_double("test_functions.v_x_width", &s.v_x_width);

    b.bind_int("identities.samples", &s.identity_samples);
    b.bind_int("identities.causality_samples", &s.causality_samples);
    b.bind_int("identities.reconstruction_samples", &s.reconstruction_samples);
    b.bind_int("identities.symplectic_samples", &s.symplectic_samples);

    b.bind_double_list("spectral.eps_list", &s.spectral_eps_list);
    b.bind_double("spectral.threshold", &s.spectral_threshold);

    b.bind_double("tolerances.identity", &s.tol_identity);
    b.bind_double("tolerances.reconstruction", &s.tol_reconstruction);
    b.bind_double("tolerances.symplectic", &s.tol_symplectic);
    b.bind_double("tolerances.wronskian", &s.tol_wronskian);
    b.bind_double("tolerances.wkb_slack", &s.tol_wkb_slack);
    b.bind_double("tolerances.energy_slack", &s.tol_energy_slack);
    b.bind_double("tolerances.ccr", &s.tol_ccr);
    b.bind_double("tolerances.positivity", &s.tol_positivity);
    b.bind_double("tolerances.dyson", &s.tol_dyson);

    b.bind_string("output.dir", &s.output_dir);
    return b;
}

} // namespace

CausalLattice Scenario::lattice() const {
    return CausalLattice(lattice_n_t, lattice_n_x, lattice_dt, lattice_dx,
                         topology_from_string(lattice_topology), lattice_t_min);
}

CutoffProfile Scenario::cutoff() const {
    return make_cutoff({cutoff_t_on, cutoff_t_off}, cutoff_kind_from_string(cutoff_kind))
        .scaled(cutoff_scale);
}

PotentialProfile Scenario::potential() const {
    return {m1_sq(), m2_sq(), cutoff()};
}

BandSpec Scenario::band() const { return BandSpec(band_t_a, band_t_b); }

SpectralMeasure Scenario::measure() const {
    switch (measure_kind_from_string(measure_kind)) {
        case MeasureKind::circle:
            return SpectralMeasure::circle(measure_L, measure_j_max,
                                           measure_include_zero_mode);
        case MeasureKind::line:
            return SpectralMeasure::line(measure_k_max, measure_panels, measure_order,
                                         measure_k_min);
        case MeasureKind::radial3d:
            return SpectralMeasure::radial3d(measure_k_max, measure_panels, measure_order);
        case MeasureKind::custom:
            throw config_error("custom measures are not expressible in config files");
    }
    throw config_error("unreachable measure kind");
}

TestFunctionSpec Scenario::test_u() const {
    return {{u_t_center, u_t_width}, {u_x_center, u_x_width}, std::nullopt};
}

TestFunctionSpec Scenario::test_v() const {
    return {{v_t_center, v_t_width}, {v_x_center, v_x_width}, std::nullopt};
}

std::vector<double> Scenario::lambda_grid() const {
    if (!mode_lambda_values.empty()) return mode_lambda_values;
    std::vector<double> out;
    for (const auto& ch : measure().channels()) out.push_back(ch.lambda);
    return out;
}

Scenario parse_config_text(const std::string& text) {
    Scenario s;
    std::vector<std::string> errors;
    std::vector<std::string> seen;
    FieldBinder binder = make_binder(s, errors);

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw parse_error("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw parse_error("empty section name", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error("empty key", line_no);
        const std::string path = section.empty() ? key : section + "." + key;
        auto it = binder.setters.find(path);
        if (it == binder.setters.end()) {
            errors.push_back(path + ": unknown key");
            continue;
        }
        it->second(value);
        seen.push_back(path);
    }

    for (const char* required : {"name", "masses.m1", "masses.m2", "cutoff.t_on",
                                 "cutoff.t_off", "lattice.n_t", "lattice.n_x",
                                 "lattice.dt", "lattice.dx"}) {
        if (std::find(seen.begin(), seen.end(), required) == seen.end())
            errors.push_back(std::string(required) + ": required key is missing");
    }

    const std::vector<std::string> invariant_errors = validate(s);
    errors.insert(errors.end(), invariant_errors.begin(), invariant_errors.end());
    if (!errors.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw config_error(msg);
    }
    return s;
}

Scenario parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> errors;
    auto check = [&errors](bool ok, const std::string& msg) {
        if (!ok) errors.push_back(msg);
    };

    check(!s.name.empty(), "name: must not be empty");

    // Local structural invariants; constructor checks are reused.
    try {
        (void)s.lattice();
    } catch (const std::exception& e) {
        errors.push_back(std::string("lattice: ") + e.what());
    }
    try {
        (void)s.cutoff();
    } catch (const std::exception& e) {
        errors.push_back(std::string("cutoff: ") + e.what());
    }
    check(s.mass_m1 >= 0.0, "masses.m1: must be non-negative");
    check(s.mass_m2 >= 0.0, "masses.m2: must be non-negative");
    check(s.band_t_a < s.band_t_b, "band.t_a: must be below band.t_b");
    try {
        (void)s.measure();
    } catch (const std::exception& e) {
        errors.push_back(std::string("measure: ") + e.what());
    }

    check(s.mode_report_points >= 2, "modes.report_points: need at least 2");
    check(s.mode_rtol > 0 && s.mode_atol > 0, "modes.rtol/atol: must be positive");
    check(s.mode_t_margin > 0, "modes.t_margin: must be positive");
    check(s.dyson_order >= 0, "modes.dyson_order: must be non-negative");
    for (int n : s.mode_n_list)
        check(n >= 1, "modes.n_list: scales must be >= 1");
    for (int n : s.sweep_n_list)
        check(n >= 1, "sweep.n_list: scales must be >= 1");
    check(!s.mode_n_list.empty(), "modes.n_list: must not be empty");
    check(!s.sweep_n_list.empty(), "sweep.n_list: must not be empty");

    check(s.u_t_width > 0 && s.v_t_width > 0 && s.u_x_width > 0 && s.v_x_width > 0,
          "test_functions: widths must be positive");

    check(s.identity_samples >= 1, "identities.samples: must be >= 1");
    check(s.spectral_threshold > 0, "spectral.threshold: must be positive");
    for (std::size_t i = 1; i < s.spectral_eps_list.size(); ++i)
        check(s.spectral_eps_list[i] < s.spectral_eps_list[i - 1],
              "spectral.eps_list: must be strictly decreasing");
    for (double eps : s.spectral_eps_list)
        check(eps > 0, "spectral.eps_list: entries must be positive");

    for (auto [tol, key] : {std::pair{s.tol_identity, "tolerances.identity"},
                            {s.tol_reconstruction, "tolerances.reconstruction"},
                            {s.tol_symplectic, "tolerances.symplectic"},
                            {s.tol_wronskian, "tolerances.wronskian"},
                            {s.tol_wkb_slack, "tolerances.wkb_slack"},
                            {s.tol_energy_slack, "tolerances.energy_slack"},
                            {s.tol_ccr, "tolerances.ccr"},
                            {s.tol_positivity, "tolerances.positivity"},
                            {s.tol_dyson, "tolerances.dyson"}})
        check(tol > 0, std::string(key) + ": must be positive");

    if (!errors.empty()) return errors; // cross-field checks need valid parts

    // Cross-field placement. The lattice-facing suites use the base-scaled
    // cutoff; mode windows are built around each scaled ramp separately.
    const CausalLattice lat = s.lattice();
    const CutoffProfile chi = s.cutoff();
    try {
        require_ramp_in_window(s.potential(), lat);
    } catch (const std::exception& e) {
        errors.push_back(std::string("cutoff: ") + e.what());
    }
    try {
        require_band_placement(s.band(), lat, &chi);
    } catch (const std::exception& e) {
        errors.push_back(std::string("band: ") + e.what());
    }

    // Smearing supports must sit in the chi == 1 region for every sweep scale
    // and inside the mode window.
    const double support_lo =
        std::min(s.u_t_center - s.u_t_width, s.v_t_center - s.v_t_width);
    const double support_hi =
        std::max(s.u_t_center + s.u_t_width, s.v_t_center + s.v_t_width);
    for (int n : s.sweep_n_list) {
        if (!(chi.scaled(n).value(support_lo) == 1.0)) {
            errors.push_back("test_functions: temporal support must lie in the flat "
                             "region of every sweep scale");
            break;
        }
    }
    check(support_hi <= s.mode_t_final,
          "test_functions: temporal support must end before modes.t_final");
    if (s.measure_kind == "circle") {
        const double L = s.measure_L;
        check(s.u_x_center - s.u_x_width >= 0 && s.u_x_center + s.u_x_width <= L &&
                  s.v_x_center - s.v_x_width >= 0 && s.v_x_center + s.v_x_width <= L,
              "test_functions: spatial supports must fit inside the circle");
    }
    if (s.mass_m1 == 0.0 && s.measure_kind == "circle" && s.measure_include_zero_mode)
        errors.push_back("measure.include_zero_mode: massless start with a zero mode "
                         "has no ground state");
    return errors;
}

std::string serialize(const Scenario& s) {
    std::ostringstream out;
    out.precision(17);
    auto list_int = [](const std::vector<int>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i)
            r += (i ? ", " : "") + std::to_string(v[i]);
        return r;
    };
    auto list_double = [](const std::vector<double>& v) {
        std::ostringstream r;
        r.precision(17);
        for (std::size_t i = 0; i < v.size(); ++i) r << (i ? ", " : "") << v[i];
        return r.str();
    };

    out << "name = " << s.name << "\n";
    out << "seed = " << s.seed << "\n\n";
    out << "[lattice]\n";
    out << "n_t = " << s.lattice_n_t << "\n";
    out << "n_x = " << s.lattice_n_x << "\n";
    out << "dt = " << s.lattice_dt << "\n";
    out << "dx = " << s.lattice_dx << "\n";
    out << "topology = " << s.lattice_topology << "\n";
    out << "t_min = " << s.lattice_t_min << "\n\n";
    out << "[cutoff]\n";
    out << "kind = " << s.cutoff_kind << "\n";
    out << "t_on = " << s.cutoff_t_on << "\n";
    out << "t_off = " << s.cutoff_t_off << "\n";
    out << "scale = " << s.cutoff_scale << "\n\n";
    out << "[masses]\n";
    out << "m1 = " << s.mass_m1 << "\n";
    out << "m2 = " << s.mass_m2 << "\n\n";
    out << "[band]\n";
    out << "t_a = " << s.band_t_a << "\n";
    out << "t_b = " << s.band_t_b << "\n\n";
    out << "[measure]\n";
    out << "kind = " << s.measure_kind << "\n";
    out << "L = " << s.measure_L << "\n";
    out << "j_max = " << s.measure_j_max << "\n";
    out << "include_zero_mode = " << (s.measure_include_zero_mode ? "true" : "false") << "\n";
    out << "k_min = " << s.measure_k_min << "\n";
    out << "k_max = " << s.measure_k_max << "\n";
    out << "panels = " << s.measure_panels << "\n";
    out << "order = " << s.measure_order << "\n\n";
    out << "[modes]\n";
    if (!s.mode_lambda_values.empty())
        out << "lambda_values = " << list_double(s.mode_lambda_values) << "\n";
    out << "n_list = " << list_int(s.mode_n_list) << "\n";
    out << "t_final = " << s.mode_t_final << "\n";
    out << "report_points = " << s.mode_report_points << "\n";
    out << "rtol = " << s.mode_rtol << "\n";
    out << "atol = " << s.mode_atol << "\n";
    out << "t_margin = " << s.mode_t_margin << "\n";
    out << "dyson_order = " << s.dyson_order << "\n\n";
    out << "[sweep]\n";
    out << "n_list = " << list_int(s.sweep_n_list) << "\n";
    out << "translate_tau = " << s.sweep_translate_tau << "\n\n";
    out << "[test_functions]\n";
    out << "u_t_center = " << s.u_t_center << "\n";
    out << "u_t_width = " << s.u_t_width << "\n";
    out << "u_x_center = " << s.u_x_center << "\n";
    out << "u_x_width = " << s.u_x_width << "\n";
    out << "v_t_center = " << s.v_t_center << "\n";
    out << "v_t_width = " << s.v_t_width << "\n";
    out << "v_x_center = " << s.v_x_center << "\n";
    out << "v_x_width = " << s.v_x_width << "\n\n";
    out << "[identities]\n";
    out << "samples = " << s.identity_samples << "\n";
    out << "causality_samples = " << s.causality_samples << "\n";
    out << "reconstruction_samples = " << s.reconstruction_samples << "\n";
    out << "symplectic_samples = " << s.symplectic_samples << "\n\n";
    out << "[spectral]\n";
    out << "eps_list = " << list_double(s.spectral_eps_list) << "\n";
    out << "threshold = " << s.spectral_threshold << "\n\n";
    out << "[tolerances]\n";
    out << "identity = " << s.tol_identity << "\n";
    out << "reconstruction = " << s.tol_reconstruction << "\n";
    out << "symplectic = " << s.tol_symplectic << "\n";
    out << "wronskian = " << s.tol_wronskian << "\n";
    out << "wkb_slack = " << s.tol_wkb_slack << "\n";
    out << "energy_slack = " << s.tol_energy_slack << "\n";
    out << "ccr = " << s.tol_ccr << "\n";
    out << "positivity = " << s.tol_positivity << "\n";
    out << "dyson = " << s.tol_dyson << "\n\n";
    out << "[output]\n";
    out << "dir = " << s.output_dir << "\n";
    return out.str();
}

bool operator==(const Scenario& a, const Scenario& b) {
    return serialize(a) == serialize(b);
}

} // namespace moller
