#include "moller/green.hpp"

namespace moller {

namespace {

bool row_is_zero(const LatticeField& f, int i) {
    return (f.values.row(i) == 0.0).all();
}

} // namespace

Eigen::ArrayXd spatial_laplacian_row(const Eigen::ArrayXd& row, const CausalLattice& lat) {
    const int n = lat.n_x;
    const double inv = 1.0 / (lat.dx * lat.dx);
    Eigen::ArrayXd out(n);
    for (int j = 0; j < n; ++j) {
        double left, right;
        if (lat.topology == Topology::circle) {
            left = row[(j + n - 1) % n];
            right = row[(j + 1) % n];
        } else {
            left = j > 0 ? row[j - 1] : 0.0;
            right = j < n - 1 ? row[j + 1] : 0.0;
        }
        out[j] = (left + right - 2.0 * row[j]) * inv;
    }
    return out;
}

LatticeField apply_p(const PotentialProfile& pot, const LatticeField& phi) {
    const CausalLattice& lat = phi.lattice;
    const Eigen::VectorXd v = effective_potential(pot, lat);
    const double inv_dt2 = 1.0 / (lat.dt * lat.dt);
    LatticeField out(lat);
    for (int i = 1; i < lat.n_t - 1; ++i) {
        const Eigen::ArrayXd row = phi.values.row(i);
        out.values.row(i) =
            -(phi.values.row(i + 1) - 2.0 * phi.values.row(i) + phi.values.row(i - 1)) * inv_dt2 +
            spatial_laplacian_row(row, lat).transpose() - v[i] * phi.values.row(i);
    }
    return out;
}

LatticeField retarded_solve(const PotentialProfile& pot, const LatticeField& f) {
    const CausalLattice& lat = f.lattice;
    if (!row_is_zero(f, 0) || !row_is_zero(f, 1))
        throw precondition_error("retarded_solve: source must vanish on the first two slices");
    const Eigen::VectorXd v = effective_potential(pot, lat);
    const double dt2 = lat.dt * lat.dt;
    LatticeField phi(lat);
    for (int i = 1; i < lat.n_t - 1; ++i) {
        const Eigen::ArrayXd row = phi.values.row(i);
        phi.values.row(i + 1) = 2.0 * phi.values.row(i) - phi.values.row(i - 1) +
                                dt2 * (spatial_laplacian_row(row, lat).transpose() -
                                       v[i] * phi.values.row(i) - f.values.row(i));
    }
    return phi;
}

LatticeField advanced_solve(const PotentialProfile& pot, const LatticeField& f) {
    const CausalLattice& lat = f.lattice;
    if (!row_is_zero(f, lat.n_t - 1) || !row_is_zero(f, lat.n_t - 2))
        throw precondition_error("advanced_solve: source must vanish on the last two slices");
    const Eigen::VectorXd v = effective_potential(pot, lat);
    const double dt2 = lat.dt * lat.dt;
    LatticeField phi(lat);
    for (int i = lat.n_t - 2; i >= 1; --i) {
        const Eigen::ArrayXd row = phi.values.row(i);
        phi.values.row(i - 1) = 2.0 * phi.values.row(i) - phi.values.row(i + 1) +
                                dt2 * (spatial_laplacian_row(row, lat).transpose() -
                                       v[i] * phi.values.row(i) - f.values.row(i));
    }
    return phi;
}

LatticeField causal_propagator(const PotentialProfile& pot, const LatticeField& f) {
    LatticeField out = retarded_solve(pot, f);
    out.values -= advanced_solve(pot, f).values;
    return out;
}

} // namespace moller
