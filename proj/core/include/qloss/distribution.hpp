#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qloss {

class Rng;

/// First two raw moments (g1, g2) of a positive random variable. The pair
/// identifies the class of all laws sharing these moments, which is what the
/// extremal root bounds range over.
struct MomentClass {
    double g1 = 0.0;  ///< mean, in time units
    double g2 = 0.0;  ///< second raw moment, in time^2 units

    /// The class contains more than one law iff g2 > g1^2.
    bool nontrivial() const { return g2 > g1 * g1; }
};

/// Throws ConfigError unless g1 > 0 and g2 >= g1^2.
void validate_moment_class(const MomentClass& g);

struct Exponential {
    double rate;
};

struct Deterministic {
    double value;
};

struct Erlang {
    int shape;
    double rate;
};

struct HyperExponential {
    std::vector<double> weights;  // sum to 1 within 1e-12
    std::vector<double> rates;
};

/// Two-point law with mass 1 - g1^2/g2 at 0 and mass g1^2/g2 at g2/g1. It has
/// moments (g1, g2) and attains the upper LST envelope of its moment class.
struct TwoPointGMax {
    double g1;
    double g2;
};

struct Empirical {
    std::vector<double> samples;  // sorted ascending, all > 0
};

class Distribution;

struct MixtureNode {
    double weight;  // probability of drawing from `left`
    std::shared_ptr<const Distribution> left;
    std::shared_ptr<const Distribution> right;
};

/// A positive-random-variable law with evaluable CDF, Laplace-Stieltjes
/// transform, LST derivative, and first two moments.
///
/// Values are immutable after construction and every member function is a
/// pure function of the value, so instances may be shared freely across
/// threads.
class Distribution {
public:
    using Node = std::variant<Exponential, Deterministic, Erlang, HyperExponential,
                              TwoPointGMax, Empirical, MixtureNode>;

    static Distribution exponential(double rate);
    static Distribution deterministic(double value);
    static Distribution erlang(int shape, double rate);
    static Distribution hyperexponential(std::vector<double> weights,
                                         std::vector<double> rates);
    static Distribution two_point_gmax(double g1, double g2);
    /// Samples may be passed in any order; they are sorted ascending.
    static Distribution empirical(std::vector<double> samples);
    /// Convex combination: weight `p` on `left`, `1 - p` on `right`.
    static Distribution mixture(double p, Distribution left, Distribution right);

    /// P{X <= x} for x >= 0. Nondecreasing, tends to 1.
    double cdf(double x) const;

    /// Left limit P{X < x}; differs from cdf(x) only at atoms.
    double cdf_left(double x) const;

    /// Mass of the atom at x (0 for continuous kinds or non-atom points).
    double atom_mass(double x) const;

    /// LST value E[exp(-sX)] for s >= 0; equals 1 at s = 0, strictly
    /// decreasing and convex in s, always in (0, 1].
    double lst(double s) const;

    /// d/ds E[exp(-sX)] = -E[X exp(-sX)]; equals -mean() at s = 0.
    double lst_derivative(double s) const;

    double mean() const;
    double second_moment() const;
    MomentClass moments() const { return {mean(), second_moment()}; }

    /// Discontinuity points of the CDF with their masses.
    std::vector<std::pair<double, double>> atoms() const;

    /// True when part of the mass has a density (anything built from
    /// exponential phases).
    bool has_continuous_part() const;

    /// Smallest grid-friendly x with 1 - cdf(x) <= tail.
    double upper_range(double tail) const;

    /// Draw one variate. Inverse-transform / composition sampling; Empirical
    /// kinds resample their data (bootstrap).
    double sample(Rng& rng) const;

    /// Short human-readable description, e.g. "exponential(rate=2)".
    std::string describe() const;

    const Node& node() const { return node_; }

private:
    explicit Distribution(Node node) : node_(std::move(node)) {}
    Node node_;
};

/// Mixes `f` into `base` with weight p, checking that both carry the moments
/// of `g` to 1e-9 relative accuracy so the result stays inside the class.
/// The Kolmogorov distance between the result and `base` is at most p.
/// Throws ModelError on a moment mismatch.
Distribution in_class_mixture(const MomentClass& g, const Distribution& f,
                              const Distribution& base, double p);

struct EmpiricalEstimate {
    Distribution dist;
    MomentClass moments;  // sample mean and sample second raw moment
};

/// Builds the empirical law of `samples` (at least two, all positive) and
/// reports its sample moments.
EmpiricalEstimate empirical_from_samples(std::vector<double> samples);

}  // namespace qloss
