#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qloss/distribution.hpp"

namespace qloss {

/// A solved fixed-point root with its convergence evidence.
struct RootReport {
    double root = 0.0;        ///< least root in (0, 1)
    double residual = 0.0;    ///< |root - rhs(root)|, below 1e-12 on success
    int iterations = 0;       ///< bisection steps plus Newton polish steps
    double bracket_lo = 0.0;  ///< final bracket, bracket_lo <= root <= bracket_hi
    double bracket_hi = 0.0;
    std::vector<std::string> warnings;  ///< e.g. near-critical conditioning
};

/// Sign convention for the deterministic-phase fixed-point equation with
/// batch exponent C. `kConsistent` solves z = exp(-a + a z^C), which keeps
/// z = 1 a fixed point at criticality like every other equation in the
/// family; `kLiteral` solves z = exp(-(a + a z^C)) instead.
enum class EllSign { kConsistent, kLiteral };

/// Least root in (0, 1) of z = lst(d, mu - mu z^C).
///
/// Requires the stability condition mu * mean(d) * C > 1; violations raise
/// ModelError. Bisection to a 1e-14 bracket followed by Newton polish;
/// non-convergence raises NumericError.
RootReport takacs_root(const Distribution& d, double mu, int batch = 1);

/// Same solver over raw callables, for transforms that are not catalog
/// distributions (e.g. geometric compounds). `mean` is -lst_deriv(0), used
/// for the stability check and conditioning warning.
RootReport least_root(const std::function<double(double)>& lst,
                      const std::function<double(double)>& lst_deriv, double mean,
                      double mu, int batch = 1);

/// Least positive root of the deterministic-phase equation
/// z = exp(-(mu g1 / p_k)(1 - z^C)) (kConsistent, the default) or
/// z = exp(-(mu g1 + mu g1 z^C) / p_k) (kLiteral). For C = 1, p_k = 1 this
/// is the extremal root: the lower bound over the whole moment class.
RootReport ell_root(double g1, double mu, int batch = 1, double p_k = 1.0,
                    EllSign sign = EllSign::kConsistent);

/// The mean m at which the deterministic-phase root equals the class upper
/// bound 1 + (g1^2/g2)(ell - 1); always 1/mu < m <= g1.
struct BoundaryM {
    double m = 0.0;
    RootReport ell_at_m;
};

/// Finds BoundaryM by outer bisection on m in (1/mu, g1], matching the
/// target root to 1e-10. Requires g2 >= g1^2 and mu g1 > 1.
BoundaryM boundary_m(const MomentClass& g, double mu);

}  // namespace qloss
