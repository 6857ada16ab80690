#include "moller/cutoff.hpp"
#include "moller/errors.hpp"
#include "moller/quadrature.hpp"

#include <cmath>

namespace moller {

namespace {

// Unnormalized bump density on the unit ramp coordinate x in (0,1).
double bump_raw(double x) {
    const double u = 2.0 * x - 1.0;
    const double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}

double bump_raw_dx(double x) {
    const double u = 2.0 * x - 1.0;
    const double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    // d/dx exp(-1/s) = exp(-1/s) * (-2u/s^2) * du/dx, du/dx = 2
    return bump_raw(x) * (-4.0 * u / (s * s));
}

} // namespace

std::string to_string(CutoffKind kind) {
    switch (kind) {
        case CutoffKind::compact_bump: return "compact-bump";
        case CutoffKind::smoothstep_poly: return "smoothstep-poly";
    }
    return "?";
}

CutoffKind cutoff_kind_from_string(const std::string& name) {
    if (name == "compact-bump") return CutoffKind::compact_bump;
    if (name == "smoothstep-poly") return CutoffKind::smoothstep_poly;
    throw precondition_error("unknown cutoff kind: " + name);
}

CutoffProfile::CutoffProfile(TimeInterval ramp, CutoffKind kind)
    : ramp_(ramp), kind_(kind) {
    if (!(ramp.t_on < ramp.t_off))
        throw precondition_error("cutoff ramp requires t_on < t_off");
    if (!(ramp.t_off <= 0.0))
        throw precondition_error("cutoff ramp requires t_off <= 0 so that chi(0) = 1");
    if (kind_ == CutoffKind::compact_bump)
        bump_norm_ = integrate_adaptive(bump_raw, 0.0, 1.0, 1e-16, 1e-14);
}

double CutoffProfile::base_value(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (kind_ == CutoffKind::smoothstep_poly)
        return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
    // Integrate from the nearer endpoint; keeps both tails exact.
    if (x <= 0.5)
        return integrate_adaptive(bump_raw, 0.0, x, 1e-16, 1e-13) / bump_norm_;
    return 1.0 - integrate_adaptive(bump_raw, x, 1.0, 1e-16, 1e-13) / bump_norm_;
}

double CutoffProfile::base_density(double x) const {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    if (kind_ == CutoffKind::smoothstep_poly) {
        const double y = x * (1.0 - x);
        return 30.0 * y * y;
    }
    return bump_raw(x) / bump_norm_;
}

double CutoffProfile::base_density_dot(double x) const {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    if (kind_ == CutoffKind::smoothstep_poly)
        return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    return bump_raw_dx(x) / bump_norm_;
}

double CutoffProfile::value(double t) const {
    const double w = ramp_.t_off - ramp_.t_on;
    const double x = (t / scale_ - ramp_.t_on) / w;
    const double v = base_value(x);
    return complemented_ ? 1.0 - v : v;
}

double CutoffProfile::density(double t) const {
    const double w = ramp_.t_off - ramp_.t_on;
    const double x = (t / scale_ - ramp_.t_on) / w;
    const double d = base_density(x) / (w * scale_);
    return complemented_ ? -d : d;
}

double CutoffProfile::density_dot(double t) const {
    const double w = ramp_.t_off - ramp_.t_on;
    const double x = (t / scale_ - ramp_.t_on) / w;
    const double d = base_density_dot(x) / (w * w * scale_ * scale_);
    return complemented_ ? -d : d;
}

CutoffProfile CutoffProfile::scaled(double lambda) const {
    if (!(lambda > 0.0))
        throw precondition_error("scale_cutoff requires lambda > 0");
    CutoffProfile out = *this;
    out.scale_ = scale_ * lambda;
    return out;
}

CutoffProfile CutoffProfile::complement() const {
    CutoffProfile out = *this;
    out.complemented_ = !complemented_;
    return out;
}

CutoffProfile make_cutoff(TimeInterval ramp, CutoffKind kind) {
    return CutoffProfile(ramp, kind);
}

CutoffProfile scale_cutoff(const CutoffProfile& chi, double lambda) {
    return chi.scaled(lambda);
}

CutoffProfile complement(const CutoffProfile& chi) {
    return chi.complement();
}

} // namespace moller
