#ifndef MOLLER_DOPRI5_HPP
#define MOLLER_DOPRI5_HPP

#include "moller/errors.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <span>

namespace moller {

/// Adaptive embedded Dormand-Prince 5(4) pair with the classic fourth-order
/// dense-output interpolant. State is a fixed-size Eigen vector; the RHS is
/// any callable f(t, y) -> state. Report points are served from the dense
/// interpolant of whichever accepted step covers them.
template <int N>
class Dopri5 {
  public:
    using Vec = Eigen::Matrix<double, N, 1>;

    struct Options {
        double rtol = 1e-10;
        double atol = 1e-12;
        long max_steps = 100'000'000;
    };

    struct Stats {
        long accepted = 0;
        long rejected = 0;
    };

    /// Integrate from t0 to t1 (t0 < t1), emitting out(index, t, y) for every
    /// report time; report must be sorted ascending within [t0, t1].
    template <class RHS, class Out>
    static Stats integrate(RHS&& f, double t0, double t1, Vec y,
                           std::span<const double> report, const Options& opt, Out&& out) {
        if (!(t0 < t1)) throw precondition_error("dopri5: requires t0 < t1");
        Stats stats;
        std::size_t next_report = 0;
        while (next_report < report.size() && report[next_report] <= t0) {
            out(next_report, t0, y);
            ++next_report;
        }

        double t = t0;
        Vec k1 = f(t, y);
        double h = initial_step(f, t, y, k1, opt);

        while (t < t1) {
            if (stats.accepted + stats.rejected > opt.max_steps)
                throw integration_error("dopri5: step limit exceeded");
            h = std::min(h, t1 - t);

            const Vec k2 = f(t + c2 * h, Vec(y + h * (a21 * k1)));
            const Vec k3 = f(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
            const Vec k4 = f(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
            const Vec k5 =
                f(t + c5 * h, Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
            const Vec k6 = f(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                                                 a65 * k5)));
            const Vec y1 =
                y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
            const Vec k7 = f(t + h, y1);

            const Vec err_vec =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double err = 0.0;
            for (int i = 0; i < N; ++i) {
                const double sc =
                    opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
                const double q = err_vec[i] / sc;
                err += q * q;
            }
            err = std::sqrt(err / N);

            if (err <= 1.0) {
                ++stats.accepted;
                // dense-output coefficients for this step
                const Vec dy = y1 - y;
                const Vec r1 = y;
                const Vec r2 = dy;
                const Vec r3 = h * k1 - dy;
                const Vec r4 = dy - h * k7 - r3;
                const Vec r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                const double t_new = t + h;
                while (next_report < report.size() && report[next_report] <= t_new) {
                    const double theta = (report[next_report] - t) / h;
                    const Vec yr =
                        r1 + theta * (r2 + (1.0 - theta) * (r3 + theta * (r4 + (1.0 - theta) * r5)));
                    out(next_report, report[next_report], yr);
                    ++next_report;
                }
                t = t_new;
                y = y1;
                k1 = k7; // FSAL
            } else {
                ++stats.rejected;
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-20), -0.2), 0.2, 10.0);
            h *= fac;
            if (!(h > 0.0) || t + h == t)
                throw integration_error("dopri5: step size underflow");
        }
        while (next_report < report.size()) { // guard against roundoff at t1
            out(next_report, t1, y);
            ++next_report;
        }
        return stats;
    }

  private:
    template <class RHS>
    static double initial_step(RHS&& f, double t, const Vec& y, const Vec& k1,
                               const Options& opt) {
        double dnf = 0.0, dny = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            dnf += (k1[i] / sc) * (k1[i] / sc);
            dny += (y[i] / sc) * (y[i] / sc);
        }
        double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
        const Vec y2 = y + h0 * k1;
        const Vec k2 = f(t + h0, y2);
        double der2 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            der2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
        }
        der2 = std::sqrt(der2) / h0;
        const double der12 = std::max(std::sqrt(dnf), der2);
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                         : std::pow(0.01 / der12, 0.2);
        return std::max(std::min(100.0 * h0, h1), 1e-12);
    }

    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0,
                            d7 = 69997945.0 / 29380423.0;
};

} // namespace moller

#endif
