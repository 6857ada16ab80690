#include "moller/lattice.hpp"
#include "moller/quadrature.hpp"

#include <cmath>

namespace moller {

namespace {
double band_bump_raw(double x) {
    const double u = 2.0 * x - 1.0;
    const double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}
} // namespace

std::string to_string(Topology t) {
    return t == Topology::circle ? "circle" : "line-dirichlet";
}

Topology topology_from_string(const std::string& name) {
    if (name == "circle") return Topology::circle;
    if (name == "line-dirichlet") return Topology::line_dirichlet;
    throw precondition_error("unknown topology: " + name);
}

CausalLattice::CausalLattice(int nt, int nx, double dt_, double dx_, Topology topo, double tmin)
    : n_t(nt), n_x(nx), dt(dt_), dx(dx_), topology(topo), t_min(tmin) {
    if (n_t < 3 || n_x < 3)
        throw precondition_error("lattice requires n_t >= 3 and n_x >= 3");
    if (!(dt > 0.0) || !(dx > 0.0))
        throw precondition_error("lattice requires positive dt and dx");
    if (dt / dx > 1.0)
        throw precondition_error("CFL bound violated: dt/dx must not exceed 1");
}

void require_same_lattice(const LatticeField& a, const LatticeField& b) {
    if (!(a.lattice == b.lattice))
        throw precondition_error("lattice mismatch between fields");
}

Eigen::VectorXd effective_potential(const PotentialProfile& pot, const CausalLattice& lat) {
    Eigen::VectorXd v(lat.n_t);
    for (int i = 0; i < lat.n_t; ++i) v[i] = pot.effective(lat.time(i));
    return v;
}

BandSpec::BandSpec(double t_a, double t_b, CutoffKind kind)
    : t_a_(t_a), t_b_(t_b), kind_(kind) {
    if (!(t_a < t_b))
        throw precondition_error("band requires t_a < t_b");
    if (kind_ == CutoffKind::compact_bump)
        bump_norm_ = integrate_adaptive(band_bump_raw, 0.0, 1.0, 1e-16, 1e-14);
}

double BandSpec::eta(double t) const {
    const double x = (t - t_a_) / (t_b_ - t_a_);
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (kind_ == CutoffKind::smoothstep_poly)
        return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
    if (x <= 0.5)
        return integrate_adaptive(band_bump_raw, 0.0, x, 1e-16, 1e-13) / bump_norm_;
    return 1.0 - integrate_adaptive(band_bump_raw, x, 1.0, 1e-16, 1e-13) / bump_norm_;
}

double pairing(const LatticeField& f, const LatticeField& g) {
    require_same_lattice(f, g);
    return (f.values * g.values).sum() * f.lattice.dt * f.lattice.dx;
}

} // namespace moller
