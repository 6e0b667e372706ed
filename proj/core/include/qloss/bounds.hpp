#pragma once

#include <array>

#include "qloss/roots.hpp"

namespace qloss {

/// Extremal bounds on the fixed-point root over a whole moment class:
/// lower is the deterministic-phase root ell, upper is 1 + (g1^2/g2)(ell-1)
/// with the effective class moments. Their gap is (1 - g1^2/g2)(1 - ell).
struct RootBounds {
    double lower = 0.0;
    double upper = 0.0;
    MomentClass effective;  ///< moments actually used (scaled when p_k < 1)
    double mu = 0.0;
    RootReport ell;
};

/// Class-extremal root bounds. For the thinned/batched variant pass p_k < 1:
/// the class moments become g1/p_k and (2(1-p_k)g1^2 + p_k g2)/p_k^2.
RootBounds rolski_bounds(const MomentClass& g, double mu, int batch = 1,
                         double p_k = 1.0, EllSign sign = EllSign::kConsistent);

enum class BoundRegime {
    kRefined,  ///< epsilon < 1 - g1^2/g2: bound is epsilon (1 - ell)
    kCoarse,   ///< otherwise: bound is the full class gap
};

/// Upper bound for the distance between the roots of two laws of the same
/// class whose CDFs are within `epsilon` in the uniform metric.
struct RootDistanceBound {
    double epsilon = 0.0;
    double bound = 0.0;
    BoundRegime regime = BoundRegime::kRefined;
    RootReport ell;
};

RootDistanceBound theorem1_bound(const MomentClass& g, double mu, double epsilon);

/// The largest epsilon for which the shifted roots root_star +- eps(1 - ell)
/// stay strictly inside the class root bounds. `value` is the min of the
/// three threshold terms; it is 0 (with a diagnostic) when root_star lies
/// outside the extremal sandwich.
struct EpsilonAdmissibility {
    double value = 0.0;
    std::array<double, 3> terms{};  // class width, lower margin, upper margin
    bool inside_sandwich = true;
    std::string diagnostic;
};

EpsilonAdmissibility epsilon_admissible(const MomentClass& g, double mu,
                                        double root_star, int batch = 1,
                                        double p_k = 1.0,
                                        EllSign sign = EllSign::kConsistent);

/// Conservative extremal root for use when the class mean is only known up
/// to an interval: recomputes ell with the upper mean estimate (the root
/// shrinks as the mean grows). Verifies g2_lower > g1_upper^2 so the class
/// stays valid; throws ModelError otherwise.
RootReport remark1_adjusted_ell(double g1_upper, double g2_lower, double mu);

}  // namespace qloss
