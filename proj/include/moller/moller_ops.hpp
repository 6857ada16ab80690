#ifndef MOLLER_MOLLER_OPS_HPP
#define MOLLER_MOLLER_OPS_HPP

#include "moller/green.hpp"

namespace moller {

/// Multiplication by the operator difference P_deformed - P_free, i.e. by
/// -(V_eff(t) - m1^2) slice by slice. This is the "V+" appearing in all
/// Moller-operator formulas.
LatticeField vplus_multiply(const PotentialProfile& pot, const LatticeField& phi);

/// Throws config_error unless the scaled ramp lies inside the lattice window
/// with chi == 0 on the first two slices.
void require_ramp_in_window(const PotentialProfile& pot, const CausalLattice& lat);

/// Extended Moller operator R = I - G+_{V+} V+.
LatticeField moller_apply(const PotentialProfile& pot, const LatticeField& phi);

/// Inverse R^{-1} = I + G+ V+ with the free retarded operator.
LatticeField moller_inverse_apply(const PotentialProfile& pot, const LatticeField& phi);

/// Formal dual R~* = I - V+ G-_{V+}; f must vanish on the last two slices.
LatticeField dual_moller_apply(const PotentialProfile& pot, const LatticeField& f);

/// Dual inverse I + V+ G- with the free advanced operator.
LatticeField dual_moller_inverse_apply(const PotentialProfile& pot, const LatticeField& f);

/// Time-slice operator TS(phi) = P_V(eta phi) for a solution phi. The output
/// carries exact zeros outside the band: where eta is locally constant the
/// stencil reduces to eta * P_V(phi), which vanishes on solutions.
LatticeField time_slice(const PotentialProfile& pot, const BandSpec& band,
                        const LatticeField& phi, double solution_tol = 1e-8);

/// sigma_V(f, f') = (f, G_V f').
double symplectic_form(const PotentialProfile& pot, const LatticeField& f,
                       const LatticeField& g);

/// Full composite dual map sending observables of the deformed theory to the
/// free one: apply G_V of the constant target potential, the dual time slice
/// on the band, then the dual Moller operator. The band must sit where
/// chi == 1 and f must be compactly supported inside it.
LatticeField composite_dual_moller(const PotentialProfile& pot, const BandSpec& band,
                                   const LatticeField& f);

struct GreenIdentityReport {
    double residual_moller_retarded; ///< R o G+ vs G+_{V+}, relative max norm
    double residual_full_composite;  ///< R o G o R~* vs G_{V+}, relative max norm
};

/// Residuals of the two Green-operator identities evaluated on f.
GreenIdentityReport compose_green_identity_check(const PotentialProfile& pot,
                                                 const LatticeField& f);

/// Interior slice range [first, last] on which the band's eta is not locally
/// constant; time_slice output is supported there.
std::pair<int, int> band_slice_range(const BandSpec& band, const CausalLattice& lat);

/// Throws config_error unless the band halo lies strictly inside the window
/// (two-slice margins) and, when a cutoff is given, inside its chi == 1 region.
void require_band_placement(const BandSpec& band, const CausalLattice& lat,
                            const CutoffProfile* chi);

} // namespace moller

#endif
