#ifndef MOLLER_LATTICE_HPP
#define MOLLER_LATTICE_HPP

#include "moller/cutoff.hpp"
#include "moller/errors.hpp"

#include <Eigen/Core>
#include <optional>
#include <string>

namespace moller {

enum class Topology { circle, line_dirichlet };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& name);

/// Finite 1+1D spacetime grid: n_t uniform time slices starting at t_min,
/// n_x spatial points with periodic or Dirichlet boundary.
struct CausalLattice {
    int n_t;
    int n_x;
    double dt;
    double dx;
    Topology topology;
    double t_min;

    CausalLattice(int nt, int nx, double dt_, double dx_, Topology topo, double tmin);

    double time(int i) const { return t_min + i * dt; }
    double t_max() const { return t_min + (n_t - 1) * dt; }
    double space_extent() const { return n_x * dx; }

    bool operator==(const CausalLattice& o) const {
        return n_t == o.n_t && n_x == o.n_x && dt == o.dt && dx == o.dx &&
               topology == o.topology && t_min == o.t_min;
    }
};

/// Real scalar field sampled on a CausalLattice; values(i, j) at (t_i, x_j).
struct LatticeField {
    CausalLattice lattice;
    Eigen::ArrayXXd values;

    explicit LatticeField(const CausalLattice& lat)
        : lattice(lat), values(Eigen::ArrayXXd::Zero(lat.n_t, lat.n_x)) {}
    LatticeField(const CausalLattice& lat, Eigen::ArrayXXd vals)
        : lattice(lat), values(std::move(vals)) {
        if (values.rows() != lat.n_t || values.cols() != lat.n_x)
            throw precondition_error("LatticeField shape does not match lattice");
    }

    double max_abs() const { return values.abs().maxCoeff(); }
};

void require_same_lattice(const LatticeField& a, const LatticeField& b);

/// Time-dependent mass-squared profile: V_eff(t) = m1^2 + (m2^2 - m1^2) chi(t)
/// when a cutoff is present, the constant m2^2 otherwise.
struct PotentialProfile {
    double base_mass_sq;
    double target_mass_sq;
    std::optional<CutoffProfile> cutoff;

    static PotentialProfile constant(double mass_sq) {
        return {mass_sq, mass_sq, std::nullopt};
    }
    /// The undeformed operator sharing this profile's base mass.
    PotentialProfile free_part() const { return constant(base_mass_sq); }
    /// The constant-potential operator this profile switches on to.
    PotentialProfile full_part() const { return constant(target_mass_sq); }

    double effective(double t) const {
        if (!cutoff) return target_mass_sq;
        return base_mass_sq + (target_mass_sq - base_mass_sq) * cutoff->value(t);
    }
};

/// V_eff sampled on the lattice time slices.
Eigen::VectorXd effective_potential(const PotentialProfile& pot, const CausalLattice& lat);

/// Time band [t_a, t_b] standing in for a Cauchy neighbourhood, carrying a
/// partition-of-unity function eta(t): exact 0 below t_a, exact 1 above t_b.
class BandSpec {
  public:
    BandSpec(double t_a, double t_b, CutoffKind kind = CutoffKind::compact_bump);

    double t_a() const { return t_a_; }
    double t_b() const { return t_b_; }
    double eta(double t) const;

  private:
    double t_a_;
    double t_b_;
    CutoffKind kind_;
    double bump_norm_ = 0.0;
};

/// Discrete spacetime pairing: sum of f*g over all sites times dt*dx.
double pairing(const LatticeField& f, const LatticeField& g);

} // namespace moller

#endif
