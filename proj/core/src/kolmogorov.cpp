#include "qloss/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qloss {

namespace {

constexpr double kGoldenTol = 1e-10;
constexpr int kScanPoints = 2048;

double gap(const Distribution& a, const Distribution& b, double x) {
    return std::abs(a.cdf(x) - b.cdf(x));
}

// Golden-section maximization of |A - B| on [lo, hi]; the seed interval comes
// from a scan-grid local maximum, so the gap is unimodal there in practice.
double refine_max(const Distribution& a, const Distribution& b, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = gap(a, b, x1), f2 = gap(a, b, x2);
    while (hi - lo > kGoldenTol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = gap(a, b, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = gap(a, b, x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

KolmogorovDistance kolmogorov_distance(const Distribution& a, const Distribution& b) {
    double best = 0.0;

    // Jump points are checked exactly, from both sides. For a pair where at
    // least one CDF is piecewise constant this is already the full answer:
    // between jumps the gap is monotone, so the sup sits at a jump.
    std::vector<double> jumps;
    for (const auto& [x, m] : a.atoms()) jumps.push_back(x);
    for (const auto& [x, m] : b.atoms()) jumps.push_back(x);
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
    for (double x : jumps) {
        best = std::max(best, std::abs(a.cdf(x) - b.cdf(x)));
        best = std::max(best, std::abs(a.cdf_left(x) - b.cdf_left(x)));
    }

    if (a.has_continuous_part() && b.has_continuous_part()) {
        const double hi = std::max(a.upper_range(1e-12), b.upper_range(1e-12));
        const double step = hi / kScanPoints;
        double prev2 = gap(a, b, 0.0), prev1 = gap(a, b, step);
        best = std::max(best, std::max(prev2, prev1));
        for (int i = 2; i <= kScanPoints; ++i) {
            const double cur = gap(a, b, i * step);
            best = std::max(best, cur);
            if (prev1 >= prev2 && prev1 >= cur)  // interior scan-grid maximum
                best = std::max(best, refine_max(a, b, (i - 2) * step, i * step));
            prev2 = prev1;
            prev1 = cur;
        }
    }

    return {std::min(best, 1.0)};
}

double kolmogorov_limit_cdf(double z) {
    if (z <= 0.0) return 0.0;
    // Alternating series over symmetric j; terms pair up as 2(-1)^j e^{-2j^2z^2}.
    double sum = 1.0;
    double sign = -1.0;
    for (int j = 1;; ++j) {
        const double term = 2.0 * std::exp(-2.0 * j * j * z * z);
        if (term < 1e-16) break;
        sum += sign * term;
        sign = -sign;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace qloss
