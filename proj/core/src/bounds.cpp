#include "qloss/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qloss/errors.hpp"

namespace qloss {

namespace {

// Moments of the thinned/compounded gap law: a geometric number of base gaps
// with success probability p_k.
MomentClass effective_moments(const MomentClass& g, double p_k) {
    if (!(p_k > 0.0 && p_k <= 1.0))
        throw ConfigError("class bounds: p_k must lie in (0, 1]");
    const double g1e = g.g1 / p_k;
    const double g2e = (2.0 * (1.0 - p_k) * g.g1 * g.g1 + p_k * g.g2) / (p_k * p_k);
    return {g1e, g2e};
}

}  // namespace

RootBounds rolski_bounds(const MomentClass& g, double mu, int batch, double p_k,
                         EllSign sign) {
    validate_moment_class(g);
    const MomentClass eff = effective_moments(g, p_k);

    RootBounds out;
    out.effective = eff;
    out.mu = mu;
    out.ell = ell_root(g.g1, mu, batch, p_k, sign);
    out.lower = out.ell.root;
    out.upper = 1.0 + (eff.g1 * eff.g1 / eff.g2) * (out.ell.root - 1.0);
    return out;
}

RootDistanceBound theorem1_bound(const MomentClass& g, double mu, double epsilon) {
    validate_moment_class(g);
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ConfigError("theorem1_bound: epsilon must lie in [0, 1]");

    RootDistanceBound out;
    out.epsilon = epsilon;
    out.ell = ell_root(g.g1, mu);
    const double ell = out.ell.root;
    const double ratio = g.g1 * g.g1 / g.g2;
    if (epsilon < 1.0 - ratio) {
        out.regime = BoundRegime::kRefined;
        out.bound = epsilon * (1.0 - ell);
    } else {
        out.regime = BoundRegime::kCoarse;
        out.bound = 1.0 + ratio * (ell - 1.0) - ell;
    }
    return out;
}

EpsilonAdmissibility epsilon_admissible(const MomentClass& g, double mu,
                                        double root_star, int batch, double p_k,
                                        EllSign sign) {
    validate_moment_class(g);
    const MomentClass eff = effective_moments(g, p_k);
    const double ell = ell_root(g.g1, mu, batch, p_k, sign).root;
    const double r = eff.g1 * eff.g1 / eff.g2;

    EpsilonAdmissibility out;
    out.terms[0] = 1.0 - r;
    out.terms[1] = (root_star - ell) / (1.0 - ell);
    out.terms[2] =
        (eff.g2 * (1.0 - root_star) - eff.g1 * eff.g1 * (1.0 - ell)) /
        (eff.g2 * (1.0 - ell));
    const double value = std::min({out.terms[0], out.terms[1], out.terms[2]});
    if (value < 0.0) {
        out.inside_sandwich = false;
        out.value = 0.0;
        std::ostringstream os;
        os << "root_star " << root_star << " lies outside the class root bounds ["
           << ell << ", " << 1.0 + r * (ell - 1.0) << "]";
        out.diagnostic = os.str();
    } else {
        out.value = value;
    }
    return out;
}

RootReport remark1_adjusted_ell(double g1_upper, double g2_lower, double mu) {
    if (!(g2_lower > g1_upper * g1_upper))
        throw ModelError(
            "adjusted ell: g2_lower must exceed g1_upper^2 for a valid class");
    return ell_root(g1_upper, mu);
}

}  // namespace qloss
