#include "moller/quadrature.hpp"
#include "moller/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace moller {

namespace {

// Kronrod 15 abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the shared nodes.
constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GK15Result {
    double kronrod;
    double err;
};

template <class F>
GK15Result gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double fc = f(mid);
    double k = kKronrodW[7] * fc;
    double g = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = hw * kKronrodX[i];
        const double s = f(mid - x) + f(mid + x);
        k += kKronrodW[i] * s;
        if (i % 2 == 1) g += kGaussW[i / 2] * s;
    }
    k *= hw;
    g *= hw;
    return {k, std::abs(k - g)};
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, double rel_tol, int depth, int max_depth) {
    const GK15Result r = gk15(f, a, b);
    if (r.err <= std::max(abs_tol, rel_tol * std::abs(r.kronrod)) || depth >= max_depth)
        return r.kronrod;
    const double mid = 0.5 * (a + b);
    return adaptive_rec(f, a, mid, 0.5 * abs_tol, rel_tol, depth + 1, max_depth) +
           adaptive_rec(f, mid, b, 0.5 * abs_tol, rel_tol, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    return adaptive_rec(f, a, b, abs_tol, rel_tol, 0, max_depth);
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw precondition_error("gauss_legendre: order must be positive");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    (void)inserted;
    return pos->second;
}

Eigen::VectorXd cumulative_integral(const std::function<double(double)>& f,
                                    const Eigen::VectorXd& breakpoints,
                                    double abs_tol_per_panel) {
    const Eigen::Index m = breakpoints.size();
    Eigen::VectorXd out(m);
    if (m == 0) return out;
    out[0] = 0.0;
    for (Eigen::Index i = 1; i < m; ++i) {
        if (breakpoints[i] < breakpoints[i - 1])
            throw precondition_error("cumulative_integral: breakpoints must be non-decreasing");
        out[i] = out[i - 1] +
                 integrate_adaptive(f, breakpoints[i - 1], breakpoints[i], abs_tol_per_panel);
    }
    return out;
}

} // namespace moller
