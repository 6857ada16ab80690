#ifndef MOLLER_GREEN_HPP
#define MOLLER_GREEN_HPP

#include "moller/lattice.hpp"

namespace moller {

/// Second difference in x with the lattice's boundary rule (periodic wrap or
/// Dirichlet zero), divided by dx^2.
Eigen::ArrayXd spatial_laplacian_row(const Eigen::ArrayXd& row, const CausalLattice& lat);

/// Discrete P_V phi = -d2_t phi + d2_x phi - V_eff(t) phi on interior time
/// slices (3-point centered stencils). Boundary time slices are zero.
LatticeField apply_p(const PotentialProfile& pot, const LatticeField& phi);

/// Retarded Green operator: the unique phi with zero data on the first two
/// slices and P_V phi = f on interior slices, by explicit forward recursion.
/// Requires f to vanish on the first two slices.
LatticeField retarded_solve(const PotentialProfile& pot, const LatticeField& f);

/// Advanced Green operator: zero data on the last two slices, backward
/// recursion. Requires f to vanish on the last two slices.
LatticeField advanced_solve(const PotentialProfile& pot, const LatticeField& f);

/// G_V f = retarded - advanced; f must vanish on the first and last two slices.
LatticeField causal_propagator(const PotentialProfile& pot, const LatticeField& f);

} // namespace moller

#endif
