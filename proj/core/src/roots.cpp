#include "qloss/roots.hpp"

#include <cmath>
#include <sstream>

#include "qloss/errors.hpp"

namespace qloss {

namespace {

constexpr double kBracketWidth = 1e-14;
constexpr double kResidualTol = 1e-12;
constexpr double kNearCritical = 1e-6;
constexpr int kNewtonSteps = 3;

struct Psi {
    const std::function<double(double)>& lst;
    const std::function<double(double)>& lst_deriv;
    double mu;
    int batch;

    double operator()(double z) const {
        return lst(mu - mu * std::pow(z, batch)) - z;
    }
    double prime(double z) const {
        const double s = mu - mu * std::pow(z, batch);
        return lst_deriv(s) * (-batch * mu * std::pow(z, batch - 1)) - 1.0;
    }
};

// Bisection on a bracket with psi(lo) > 0 > psi(hi), then a few safeguarded
// Newton steps. Convexity of psi guarantees a single sign change here.
RootReport solve_bracketed(const Psi& psi, double lo, double hi) {
    RootReport report;
    int iters = 0;
    while (hi - lo > kBracketWidth) {
        const double mid = 0.5 * (lo + hi);
        if (psi(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < kNewtonSteps; ++i) {
        const double dp = psi.prime(z);
        if (dp == 0.0) break;
        const double step = psi(z) / dp;
        const double next = z - step;
        if (next <= lo || next >= hi) break;  // keep the certified bracket
        z = next;
        ++iters;
    }
    report.root = z;
    report.residual = std::abs(psi(z));
    report.iterations = iters;
    report.bracket_lo = lo;
    report.bracket_hi = hi;
    if (report.residual >= kResidualTol) {
        std::ostringstream os;
        os << "root polish failed to reach residual tolerance: residual "
           << report.residual;
        throw NumericError(os.str());
    }
    return report;
}

}  // namespace

RootReport least_root(const std::function<double(double)>& lst,
                      const std::function<double(double)>& lst_deriv, double mean,
                      double mu, int batch) {
    if (!(mu > 0.0)) throw ConfigError("least_root: mu must be positive");
    if (batch < 1) throw ConfigError("least_root: batch must be a positive integer");
    if (!(mean > 0.0)) throw ConfigError("least_root: mean must be positive");

    const double margin = mu * mean * batch - 1.0;
    if (margin <= 0.0) {
        std::ostringstream os;
        os << "stability violated: mu * mean * C = " << mu * mean * batch
           << " must exceed 1";
        throw ModelError(os.str());
    }

    const Psi psi{lst, lst_deriv, mu, batch};

    // z = 1 is always a fixed point; walk the upper end down until the sign
    // flips, which certifies an interior root strictly below 1.
    double gap = 1e-9;
    double hi = 1.0 - gap;
    while (psi(hi) >= 0.0) {
        gap *= 2.0;
        if (gap > 0.5)
            throw ModelError(
                "stability violated: no interior root below 1 at 1e-9 spacing");
        hi = 1.0 - gap;
    }

    RootReport report = solve_bracketed(psi, 0.0, hi);
    if (margin < kNearCritical) {
        std::ostringstream os;
        os << "near-critical: mu * mean * C - 1 = " << margin
           << "; root conditioning degrades as its reciprocal";
        report.warnings.push_back(os.str());
    }
    return report;
}

RootReport takacs_root(const Distribution& d, double mu, int batch) {
    const std::function<double(double)> f = [&d](double s) { return d.lst(s); };
    const std::function<double(double)> fp = [&d](double s) {
        return d.lst_derivative(s);
    };
    return least_root(f, fp, d.mean(), mu, batch);
}

RootReport ell_root(double g1, double mu, int batch, double p_k, EllSign sign) {
    if (!(g1 > 0.0)) throw ConfigError("ell_root: g1 must be positive");
    if (!(p_k > 0.0 && p_k <= 1.0))
        throw ConfigError("ell_root: p_k must lie in (0, 1]");
    const double a = g1 / p_k;  // effective deterministic phase

    if (sign == EllSign::kConsistent) {
        const std::function<double(double)> f = [a](double s) {
            return std::exp(-s * a);
        };
        const std::function<double(double)> fp = [a](double s) {
            return -a * std::exp(-s * a);
        };
        return least_root(f, fp, a, mu, batch);
    }

    // Literal variant: z = exp(-(mu g1 + mu g1 z^C) / p_k). The right-hand
    // side decreases in z, so a unique fixed point exists for any parameters;
    // z = 1 is not a fixed point under this convention.
    const double b = mu * a;
    const std::function<double(double)> f = [b, batch](double z) {
        return std::exp(-b * (1.0 + std::pow(z, batch)));
    };
    RootReport report;
    double lo = 0.0, hi = 1.0;
    int iters = 0;
    while (hi - lo > kBracketWidth) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) - mid > 0.0)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }
    report.root = 0.5 * (lo + hi);
    report.residual = std::abs(f(report.root) - report.root);
    report.iterations = iters;
    report.bracket_lo = lo;
    report.bracket_hi = hi;
    if (report.residual >= kResidualTol)
        throw NumericError("literal-sign fixed point failed residual tolerance");
    return report;
}

BoundaryM boundary_m(const MomentClass& g, double mu) {
    validate_moment_class(g);
    if (!(mu * g.g1 > 1.0))
        throw ModelError("boundary_m: requires mu * g1 > 1");

    const double ell = ell_root(g.g1, mu).root;
    const double ratio = g.g1 * g.g1 / g.g2;
    const double target = 1.0 + ratio * (ell - 1.0);
    if (!(target < 1.0) || target < ell - 1e-12)
        throw ModelError("boundary_m: target root outside (ell, 1)");

    BoundaryM out;
    if (target - ell <= 1e-12) {  // degenerate class: the bounds coincide
        out.m = g.g1;
        out.ell_at_m = ell_root(g.g1, mu);
        return out;
    }

    // The phase root decreases in m, from 1 at m = 1/mu down to ell at
    // m = g1, so the boundary value is pinned by bisection on m.
    double lo = (1.0 / mu) * (1.0 + 1e-9);
    double hi = g.g1;
    double m = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        m = 0.5 * (lo + hi);
        const double root = ell_root(m, mu).root;
        if (std::abs(root - target) <= 1e-10) break;
        if (root > target)
            lo = m;
        else
            hi = m;
        if (hi - lo < 1e-15) break;
    }
    out.m = m;
    out.ell_at_m = ell_root(m, mu);
    if (std::abs(out.ell_at_m.root - target) > 1e-9)
        throw NumericError("boundary_m: bisection failed to match the target root");
    return out;
}

}  // namespace qloss
