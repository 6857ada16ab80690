#include "moller/measure.hpp"
#include "moller/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace moller {

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::circle: return "circle";
        case MeasureKind::line: return "line";
        case MeasureKind::radial3d: return "radial3d";
        case MeasureKind::custom: return "custom";
    }
    return "?";
}

MeasureKind measure_kind_from_string(const std::string& name) {
    if (name == "circle") return MeasureKind::circle;
    if (name == "line") return MeasureKind::line;
    if (name == "radial3d") return MeasureKind::radial3d;
    if (name == "custom") return MeasureKind::custom;
    throw precondition_error("unknown measure kind: " + name);
}

SpectralMeasure SpectralMeasure::circle(double circumference, int j_max,
                                        bool include_zero_mode) {
    if (!(circumference > 0.0)) throw precondition_error("circle measure: L must be positive");
    if (j_max < 0) throw precondition_error("circle measure: j_max must be non-negative");
    SpectralMeasure m;
    m.kind_ = MeasureKind::circle;
    m.circumference_ = circumference;
    const double two_pi = 2.0 * M_PI;
    for (int j = include_zero_mode ? 0 : 1; j <= j_max; ++j)
        m.channels_.push_back({two_pi * j / circumference, 1.0 / circumference,
                               j == 0 ? 1 : 2});
    return m;
}

SpectralMeasure SpectralMeasure::line(double k_max, int panels, int order, double k_min) {
    if (!(k_max > k_min) || k_min < 0.0)
        throw precondition_error("line measure: need 0 <= k_min < k_max");
    if (panels < 1 || order < 1)
        throw precondition_error("line measure: panels and order must be positive");
    SpectralMeasure m;
    m.kind_ = MeasureKind::line;
    const GaussRule& rule = gauss_legendre(order);
    for (int p = 0; p < panels; ++p) {
        const double a = k_min + (k_max - k_min) * p / panels;
        const double b = k_min + (k_max - k_min) * (p + 1) / panels;
        for (int g = 0; g < order; ++g) {
            const double k = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[g];
            const double w = 0.5 * (b - a) * rule.weights[g] / (2.0 * M_PI);
            m.channels_.push_back({k, w, 1});
        }
    }
    return m;
}

SpectralMeasure SpectralMeasure::radial3d(double k_max, int panels, int order) {
    if (!(k_max > 0.0)) throw precondition_error("radial3d measure: k_max must be positive");
    if (panels < 1 || order < 1)
        throw precondition_error("radial3d measure: panels and order must be positive");
    SpectralMeasure m;
    m.kind_ = MeasureKind::radial3d;
    const GaussRule& rule = gauss_legendre(order);
    for (int p = 0; p < panels; ++p) {
        const double a = k_max * p / panels;
        const double b = k_max * (p + 1) / panels;
        for (int g = 0; g < order; ++g) {
            const double k = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[g];
            const double w = 0.5 * (b - a) * rule.weights[g] * k * k / (2.0 * M_PI * M_PI);
            m.channels_.push_back({k, w, 1});
        }
    }
    return m;
}

SpectralMeasure SpectralMeasure::custom(std::vector<std::pair<double, double>> lambda_weight) {
    SpectralMeasure m;
    m.kind_ = MeasureKind::custom;
    std::sort(lambda_weight.begin(), lambda_weight.end());
    for (const auto& [lambda, weight] : lambda_weight) {
        if (lambda < 0.0) throw precondition_error("custom measure: lambda must be >= 0");
        if (!(weight > 0.0)) throw precondition_error("custom measure: weights must be positive");
        m.channels_.push_back({lambda, weight, 1});
    }
    return m;
}

bool SpectralMeasure::has_zero_mode() const {
    for (const auto& ch : channels_)
        if (ch.lambda == 0.0) return true;
    return false;
}

double SpectralMeasure::small_lambda_integral(double eps) const {
    if (!(eps > 0.0)) throw precondition_error("small_lambda_integral: eps must be positive");
    switch (kind_) {
        case MeasureKind::circle:
        case MeasureKind::custom: {
            double acc = 0.0;
            for (const auto& ch : channels_)
                if (ch.lambda > 0.0 && ch.lambda < eps)
                    acc += ch.multiplicity * ch.weight / ch.lambda;
            return acc;
        }
        case MeasureKind::line: {
            const double floor = eps * 1e-6;
            return integrate_adaptive([](double k) { return 1.0 / (2.0 * M_PI * k); },
                                      floor, eps, 1e-14, 1e-12);
        }
        case MeasureKind::radial3d:
            return integrate_adaptive([](double k) { return k / (2.0 * M_PI * M_PI); },
                                      0.0, eps, 1e-14, 1e-12);
    }
    return 0.0;
}

SpectralConditionReport check_spectral_condition(const SpectralMeasure& measure,
                                                 const std::vector<double>& eps_list,
                                                 double threshold) {
    if (eps_list.empty())
        throw precondition_error("check_spectral_condition: eps list must not be empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0))
            throw precondition_error("check_spectral_condition: eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw precondition_error("check_spectral_condition: eps list must be decreasing");
    }

    SpectralConditionReport report;
    if (measure.has_zero_mode()) {
        report.pass = false;
        report.reason = "zero eigenvalue";
        for (const double eps : eps_list) report.values.emplace_back(eps, 0.0);
        return report;
    }

    for (const double eps : eps_list)
        report.values.emplace_back(eps, measure.small_lambda_integral(eps));

    // log-log slope over the strictly positive samples
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [eps, val] : report.values) {
        if (val <= 0.0) continue;
        const double x = std::log(eps), y = std::log(val);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double last = report.values.back().second;
    if (n < 2) {
        // integral vanished identically below the smallest eigenvalue
        report.fitted_slope = std::numeric_limits<double>::infinity();
        report.pass = last <= threshold;
        report.reason = report.pass ? "integral vanishes" : "non-vanishing limit";
        return report;
    }
    report.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.pass = report.fitted_slope > 0.0 && last < threshold;
    report.reason = report.pass ? "vanishing small-eigenvalue integral"
                                : "non-vanishing fitted limit";
    return report;
}

} // namespace moller
