#ifndef MOLLER_CUTOFF_HPP
#define MOLLER_CUTOFF_HPP

#include <string>

namespace moller {

/// Ramp interval of a switching function: chi rises from 0 to 1 across
/// [t_on, t_off]. The ramp must end at or before t = 0 so chi(0) = 1.
struct TimeInterval {
    double t_on;
    double t_off;
};

enum class CutoffKind {
    compact_bump,    ///< density proportional to exp(-1/(1-u^2)) on the ramp
    smoothstep_poly  ///< quintic smoothstep, density 30 x^2 (1-x)^2
};

std::string to_string(CutoffKind kind);
CutoffKind cutoff_kind_from_string(const std::string& name);

/// Smooth monotone switching function chi(t) = integral of a density f
/// supported on the (scaled) ramp, with chi = 0 left of it and chi = 1 right
/// of it, both exactly. Immutable; evaluation is lazy from the parameters,
/// so each consumer samples at its own resolution.
class CutoffProfile {
  public:
    CutoffProfile(TimeInterval ramp, CutoffKind kind);

    /// chi(t) in [0, 1]; exact 0/1 on and beyond the scaled ramp endpoints.
    double value(double t) const;
    /// dchi/dt, supported on the open scaled ramp.
    double density(double t) const;
    /// d2chi/dt2, analytic (no numerical differentiation).
    double density_dot(double t) const;

    /// chi_lambda with chi_lambda(t) = chi(t/lambda).
    CutoffProfile scaled(double lambda) const;
    /// chi^- = 1 - chi^+; value() then satisfies chi^+ + chi^- == 1 bitwise.
    CutoffProfile complement() const;

    const TimeInterval& ramp() const { return ramp_; }
    CutoffKind kind() const { return kind_; }
    double scale() const { return scale_; }
    bool is_complement() const { return complemented_; }

    /// Scaled ramp endpoints: chi == 0 for t <= ramp_start(), 1 for t >= ramp_end().
    double ramp_start() const { return scale_ * ramp_.t_on; }
    double ramp_end() const { return scale_ * ramp_.t_off; }

  private:
    TimeInterval ramp_;
    CutoffKind kind_;
    double scale_ = 1.0;
    bool complemented_ = false;
    double bump_norm_ = 0.0; // integral of the unnormalized bump density over [0,1]

    double base_value(double x) const;   // on the unit ramp coordinate
    double base_density(double x) const; // d/dx
    double base_density_dot(double x) const;
};

// Spec-facing free functions.
CutoffProfile make_cutoff(TimeInterval ramp, CutoffKind kind = CutoffKind::compact_bump);
CutoffProfile scale_cutoff(const CutoffProfile& chi, double lambda);
CutoffProfile complement(const CutoffProfile& chi);
inline double eval_cutoff(const CutoffProfile& chi, double t) { return chi.value(t); }
inline double eval_density(const CutoffProfile& chi, double t) { return chi.density(t); }

} // namespace moller

#endif
