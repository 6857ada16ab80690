#ifndef MOLLER_MEASURE_HPP
#define MOLLER_MEASURE_HPP

#include "moller/errors.hpp"

#include <string>
#include <vector>

namespace moller {

enum class MeasureKind { circle, line, radial3d, custom };

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& name);

/// One eigenvalue channel of the spatial operator: lambda >= 0 with an
/// integration weight; multiplicity 2 folds the +/-k degeneracy on the circle.
struct SpectralChannel {
    double lambda;
    double weight;
    int multiplicity;
};

/// Discretized spectral measure d(mu): eigenvalue parametrization plus
/// integration weights; continuum kinds are truncated at k_max and sampled on
/// Gauss-Legendre panels.
class SpectralMeasure {
  public:
    static SpectralMeasure circle(double circumference, int j_max, bool include_zero_mode);
    static SpectralMeasure line(double k_max, int panels, int order, double k_min = 0.0);
    static SpectralMeasure radial3d(double k_max, int panels, int order);
    static SpectralMeasure custom(std::vector<std::pair<double, double>> lambda_weight);

    MeasureKind kind() const { return kind_; }
    const std::vector<SpectralChannel>& channels() const { return channels_; }
    bool has_zero_mode() const;
    double circumference() const { return circumference_; }

    /// I(eps) = integral of 1/lambda over 0 < lambda < eps. Continuum kinds
    /// integrate the density with the lower cutoff refined proportionally to
    /// eps, so integrable endpoints converge and divergences stay visible.
    double small_lambda_integral(double eps) const;

  private:
    MeasureKind kind_ = MeasureKind::custom;
    std::vector<SpectralChannel> channels_;
    double circumference_ = 0.0;
};

struct SpectralConditionReport {
    bool pass = false;
    std::string reason;
    std::vector<std::pair<double, double>> values; ///< (eps, I(eps))
    double fitted_slope = 0.0;                     ///< d log I / d log eps
};

/// Evaluate I(eps) over a positive decreasing eps list; PASS when the fitted
/// log-log slope is positive and the last value is below the threshold.
/// A zero eigenvalue in the measure fails immediately.
SpectralConditionReport check_spectral_condition(const SpectralMeasure& measure,
                                                 const std::vector<double>& eps_list,
                                                 double threshold = 1e-3);

} // namespace moller

#endif
