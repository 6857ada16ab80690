#include "moller/moller_ops.hpp"

#include <cmath>

namespace moller {

LatticeField vplus_multiply(const PotentialProfile& pot, const LatticeField& phi) {
    const CausalLattice& lat = phi.lattice;
    LatticeField out(lat);
    for (int i = 0; i < lat.n_t; ++i) {
        const double factor = -(pot.effective(lat.time(i)) - pot.base_mass_sq);
        if (factor != 0.0) out.values.row(i) = factor * phi.values.row(i);
    }
    return out;
}

void require_ramp_in_window(const PotentialProfile& pot, const CausalLattice& lat) {
    if (!pot.cutoff) return;
    const double start = pot.cutoff->ramp_start();
    const double end = pot.cutoff->ramp_end();
    if (!(lat.time(1) <= start))
        throw config_error("scaled ramp must start after the second time slice");
    if (!(end <= lat.t_max() - lat.dt))
        throw config_error("scaled ramp must end inside the lattice window");
}

LatticeField moller_apply(const PotentialProfile& pot, const LatticeField& phi) {
    require_ramp_in_window(pot, phi.lattice);
    LatticeField out = phi;
    out.values -= retarded_solve(pot, vplus_multiply(pot, phi)).values;
    return out;
}

LatticeField moller_inverse_apply(const PotentialProfile& pot, const LatticeField& phi) {
    require_ramp_in_window(pot, phi.lattice);
    LatticeField out = phi;
    out.values += retarded_solve(pot.free_part(), vplus_multiply(pot, phi)).values;
    return out;
}

LatticeField dual_moller_apply(const PotentialProfile& pot, const LatticeField& f) {
    require_ramp_in_window(pot, f.lattice);
    LatticeField out = f;
    out.values -= vplus_multiply(pot, advanced_solve(pot, f)).values;
    return out;
}

LatticeField dual_moller_inverse_apply(const PotentialProfile& pot, const LatticeField& f) {
    require_ramp_in_window(pot, f.lattice);
    LatticeField out = f;
    out.values += vplus_multiply(pot, advanced_solve(pot.free_part(), f)).values;
    return out;
}

std::pair<int, int> band_slice_range(const BandSpec& band, const CausalLattice& lat) {
    int first = lat.n_t, last = -1;
    for (int i = 1; i < lat.n_t - 1; ++i) {
        // Stencil at slice i sees eta on slices i-1..i+1; it is non-constant
        // there iff that neighbourhood overlaps the open band.
        if (lat.time(i + 1) > band.t_a() && lat.time(i - 1) < band.t_b()) {
            first = std::min(first, i);
            last = std::max(last, i);
        }
    }
    if (last < 0) throw config_error("band does not overlap the lattice window");
    return {first, last};
}

void require_band_placement(const BandSpec& band, const CausalLattice& lat,
                            const CutoffProfile* chi) {
    const auto [first, last] = band_slice_range(band, lat);
    if (first < 2 || last > lat.n_t - 3)
        throw config_error("band must keep a two-slice margin from the window boundary");
    if (chi != nullptr) {
        for (int i = first - 1; i <= last + 1; ++i) {
            if (chi->value(lat.time(i)) != 1.0)
                throw config_error("band must lie inside the chi == 1 region");
        }
    }
}

LatticeField time_slice(const PotentialProfile& pot, const BandSpec& band,
                        const LatticeField& phi, double solution_tol) {
    const CausalLattice& lat = phi.lattice;
    require_band_placement(band, lat, pot.cutoff ? &*pot.cutoff : nullptr);

    const Eigen::VectorXd v = effective_potential(pot, lat);
    const LatticeField residual = apply_p(pot, phi);
    const double stencil_scale =
        4.0 / (lat.dt * lat.dt) + 4.0 / (lat.dx * lat.dx) + v.cwiseAbs().maxCoeff();
    const double threshold = solution_tol * std::max(phi.max_abs() * stencil_scale, 1e-300);
    if (residual.max_abs() > threshold)
        throw precondition_error("time_slice: field is not a solution of P_V within tolerance");

    Eigen::VectorXd eta(lat.n_t);
    for (int i = 0; i < lat.n_t; ++i) eta[i] = band.eta(lat.time(i));

    const auto [first, last] = band_slice_range(band, lat);
    const double inv_dt2 = 1.0 / (lat.dt * lat.dt);
    LatticeField out(lat);
    for (int i = first; i <= last; ++i) {
        const Eigen::ArrayXd mid = eta[i] * phi.values.row(i).transpose();
        out.values.row(i) =
            -(eta[i + 1] * phi.values.row(i + 1) - 2.0 * eta[i] * phi.values.row(i) +
              eta[i - 1] * phi.values.row(i - 1)) * inv_dt2 +
            spatial_laplacian_row(mid, lat).transpose() - v[i] * eta[i] * phi.values.row(i);
    }
    return out;
}

double symplectic_form(const PotentialProfile& pot, const LatticeField& f,
                       const LatticeField& g) {
    require_same_lattice(f, g);
    return pairing(f, causal_propagator(pot, g));
}

LatticeField composite_dual_moller(const PotentialProfile& pot, const BandSpec& band,
                                   const LatticeField& f) {
    const CausalLattice& lat = f.lattice;
    require_band_placement(band, lat, pot.cutoff ? &*pot.cutoff : nullptr);
    require_ramp_in_window(pot, lat);

    const PotentialProfile full = pot.full_part();
    const LatticeField psi = causal_propagator(full, f);
    // Dual time slice with the sign convention folding the leading minus of
    // the composite against TS* = -TS on solutions. Inside the chi == 1 halo
    // P_{V+} and the constant target operator coincide.
    const LatticeField alpha = time_slice(full, band, psi);
    return dual_moller_apply(pot, alpha);
}

namespace {
double rel_residual(const LatticeField& a, const LatticeField& b) {
    const double scale = std::max(b.max_abs(), 1e-300);
    return (a.values - b.values).abs().maxCoeff() / scale;
}
} // namespace

GreenIdentityReport compose_green_identity_check(const PotentialProfile& pot,
                                                 const LatticeField& f) {
    const PotentialProfile free = pot.free_part();
    GreenIdentityReport report{};

    const LatticeField lhs1 = moller_apply(pot, retarded_solve(free, f));
    const LatticeField rhs1 = retarded_solve(pot, f);
    report.residual_moller_retarded = rel_residual(lhs1, rhs1);

    const LatticeField lhs2 =
        moller_apply(pot, causal_propagator(free, dual_moller_apply(pot, f)));
    const LatticeField rhs2 = causal_propagator(pot, f);
    report.residual_full_composite = rel_residual(lhs2, rhs2);
    return report;
}

} // namespace moller
