#pragma once

#include "qloss/distribution.hpp"

namespace qloss {

/// Uniform (sup-norm) distance between two CDFs; always in [0, 1].
struct KolmogorovDistance {
    double value = 0.0;
};

/// sup_{x>0} |A(x) - B(x)|.
///
/// Exact at every discontinuity point of either CDF (both one-sided limits
/// are checked); for pairs that both carry a density the sup over the
/// continuous part is located by a scan grid plus golden-section refinement
/// to 1e-10.
KolmogorovDistance kolmogorov_distance(const Distribution& a, const Distribution& b);

/// Limiting CDF K(z) of the scaled empirical sup-deviation: 0 for z <= 0,
/// otherwise the alternating series sum_j (-1)^j exp(-2 j^2 z^2) truncated
/// once terms drop below 1e-16.
double kolmogorov_limit_cdf(double z);

}  // namespace qloss
