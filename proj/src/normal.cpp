#include "birnbaum/normal.hpp"

#include "birnbaum/errors.hpp"

#include <cmath>

namespace birnbaum {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
} // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) fail(Errc::bad_alpha, "quantile argument must be in (0,1)");

    // Beasley-Springer-Moro style seed, then Newton on the exact cdf.
    double q = p - 0.5;
    double x;
    if (std::fabs(q) <= 0.425) {
        double r = 0.180625 - q * q;
        x = q * (2.5066282 + r * (9.0580202 + r * 17.6501));
        x /= 1.0 + r * (3.5784047 + r * (10.2167 + r * 4.318));
    } else {
        double r = q < 0 ? p : 1.0 - p;
        double t = std::sqrt(-2.0 * std::log(r));
        x = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                    (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
        if (q < 0) x = -x;
    }
    for (int i = 0; i < 8; ++i) {
        double err = normal_cdf(x) - p;
        double step = err / normal_pdf(x);
        x -= step;
        if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

} // namespace birnbaum
