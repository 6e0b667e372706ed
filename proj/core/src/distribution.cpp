#include "qloss/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qloss/errors.hpp"
#include "qloss/rng.hpp"

namespace qloss {

namespace {

constexpr double kWeightSumTol = 1e-12;

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

void validate_moment_class(const MomentClass& g) {
    require(std::isfinite(g.g1) && g.g1 > 0.0, "moment class: g1 must be positive");
    require(std::isfinite(g.g2) && g.g2 >= g.g1 * g.g1 * (1.0 - 1e-12),
            "moment class: g2 must be at least g1^2");
}

Distribution Distribution::exponential(double rate) {
    require(std::isfinite(rate) && rate > 0.0, "exponential: rate must be positive");
    return Distribution(Exponential{rate});
}

Distribution Distribution::deterministic(double value) {
    require(std::isfinite(value) && value > 0.0,
            "deterministic: value must be positive");
    return Distribution(Deterministic{value});
}

Distribution Distribution::erlang(int shape, double rate) {
    require(shape >= 1, "erlang: shape must be a positive integer");
    require(std::isfinite(rate) && rate > 0.0, "erlang: rate must be positive");
    return Distribution(Erlang{shape, rate});
}

Distribution Distribution::hyperexponential(std::vector<double> weights,
                                            std::vector<double> rates) {
    require(!weights.empty() && weights.size() == rates.size(),
            "hyperexponential: weights and rates must be non-empty and equal-sized");
    double sum = 0.0;
    for (double w : weights) {
        require(std::isfinite(w) && w > 0.0,
                "hyperexponential: weights must be positive");
        sum += w;
    }
    require(std::abs(sum - 1.0) <= kWeightSumTol,
            "hyperexponential: weights must sum to 1");
    for (double r : rates)
        require(std::isfinite(r) && r > 0.0, "hyperexponential: rates must be positive");
    return Distribution(HyperExponential{std::move(weights), std::move(rates)});
}

Distribution Distribution::two_point_gmax(double g1, double g2) {
    validate_moment_class({g1, g2});
    return Distribution(TwoPointGMax{g1, g2});
}

Distribution Distribution::empirical(std::vector<double> samples) {
    require(!samples.empty(), "empirical: at least one sample required");
    for (double x : samples)
        require(std::isfinite(x) && x > 0.0, "empirical: samples must be positive");
    std::sort(samples.begin(), samples.end());
    return Distribution(Empirical{std::move(samples)});
}

Distribution Distribution::mixture(double p, Distribution left, Distribution right) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
            "mixture: weight must lie in [0, 1]");
    return Distribution(MixtureNode{
        p, std::make_shared<const Distribution>(std::move(left)),
        std::make_shared<const Distribution>(std::move(right))});
}

double Distribution::cdf(double x) const {
    if (!(x >= 0.0)) return 0.0;
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return -std::expm1(-d.rate * x);
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return x >= d.value ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, Erlang>) {
                // 1 - exp(-rx) sum_{i<shape} (rx)^i / i!
                const double rx = d.rate * x;
                double term = 1.0, sum = 1.0;
                for (int i = 1; i < d.shape; ++i) {
                    term *= rx / i;
                    sum += term;
                }
                return 1.0 - std::exp(-rx) * sum;
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < d.weights.size(); ++i)
                    v += d.weights[i] * -std::expm1(-d.rates[i] * x);
                return v;
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                const double r = d.g1 * d.g1 / d.g2;
                return x >= d.g2 / d.g1 ? 1.0 : 1.0 - r;
            } else if constexpr (std::is_same_v<T, Empirical>) {
                const auto it =
                    std::upper_bound(d.samples.begin(), d.samples.end(), x);
                return static_cast<double>(it - d.samples.begin()) /
                       static_cast<double>(d.samples.size());
            } else {  // MixtureNode
                return d.weight * d.left->cdf(x) + (1.0 - d.weight) * d.right->cdf(x);
            }
        },
        node_);
}

double Distribution::atom_mass(double x) const {
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                return x == d.value ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                const double r = d.g1 * d.g1 / d.g2;
                if (x == 0.0) return 1.0 - r;
                if (x == d.g2 / d.g1) return r;
                return 0.0;
            } else if constexpr (std::is_same_v<T, Empirical>) {
                const auto [first, last] =
                    std::equal_range(d.samples.begin(), d.samples.end(), x);
                return static_cast<double>(last - first) /
                       static_cast<double>(d.samples.size());
            } else if constexpr (std::is_same_v<T, MixtureNode>) {
                return d.weight * d.left->atom_mass(x) +
                       (1.0 - d.weight) * d.right->atom_mass(x);
            } else {
                (void)d;
                return 0.0;
            }
        },
        node_);
}

double Distribution::cdf_left(double x) const { return cdf(x) - atom_mass(x); }

double Distribution::lst(double s) const {
    return std::visit(
        [s](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return d.rate / (d.rate + s);
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return std::exp(-s * d.value);
            } else if constexpr (std::is_same_v<T, Erlang>) {
                return std::pow(d.rate / (d.rate + s), d.shape);
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < d.weights.size(); ++i)
                    v += d.weights[i] * d.rates[i] / (d.rates[i] + s);
                return v;
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                const double r = d.g1 * d.g1 / d.g2;
                return 1.0 - r + r * std::exp(-(d.g2 / d.g1) * s);
            } else if constexpr (std::is_same_v<T, Empirical>) {
                double v = 0.0;
                for (double x : d.samples) v += std::exp(-s * x);
                return v / static_cast<double>(d.samples.size());
            } else {
                return d.weight * d.left->lst(s) + (1.0 - d.weight) * d.right->lst(s);
            }
        },
        node_);
}

double Distribution::lst_derivative(double s) const {
    return std::visit(
        [s](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                const double q = d.rate + s;
                return -d.rate / (q * q);
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return -d.value * std::exp(-s * d.value);
            } else if constexpr (std::is_same_v<T, Erlang>) {
                return -d.shape / d.rate *
                       std::pow(d.rate / (d.rate + s), d.shape + 1);
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < d.weights.size(); ++i) {
                    const double q = d.rates[i] + s;
                    v -= d.weights[i] * d.rates[i] / (q * q);
                }
                return v;
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                return -d.g1 * std::exp(-(d.g2 / d.g1) * s);
            } else if constexpr (std::is_same_v<T, Empirical>) {
                double v = 0.0;
                for (double x : d.samples) v -= x * std::exp(-s * x);
                return v / static_cast<double>(d.samples.size());
            } else {
                return d.weight * d.left->lst_derivative(s) +
                       (1.0 - d.weight) * d.right->lst_derivative(s);
            }
        },
        node_);
}

double Distribution::mean() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return 1.0 / d.rate;
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return d.value;
            } else if constexpr (std::is_same_v<T, Erlang>) {
                return d.shape / d.rate;
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < d.weights.size(); ++i)
                    v += d.weights[i] / d.rates[i];
                return v;
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                return d.g1;
            } else if constexpr (std::is_same_v<T, Empirical>) {
                return std::accumulate(d.samples.begin(), d.samples.end(), 0.0) /
                       static_cast<double>(d.samples.size());
            } else {
                return d.weight * d.left->mean() + (1.0 - d.weight) * d.right->mean();
            }
        },
        node_);
}

double Distribution::second_moment() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return 2.0 / (d.rate * d.rate);
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return d.value * d.value;
            } else if constexpr (std::is_same_v<T, Erlang>) {
                return d.shape * (d.shape + 1.0) / (d.rate * d.rate);
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < d.weights.size(); ++i)
                    v += 2.0 * d.weights[i] / (d.rates[i] * d.rates[i]);
                return v;
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                return d.g2;
            } else if constexpr (std::is_same_v<T, Empirical>) {
                double v = 0.0;
                for (double x : d.samples) v += x * x;
                return v / static_cast<double>(d.samples.size());
            } else {
                return d.weight * d.left->second_moment() +
                       (1.0 - d.weight) * d.right->second_moment();
            }
        },
        node_);
}

std::vector<std::pair<double, double>> Distribution::atoms() const {
    std::vector<std::pair<double, double>> out;
    std::visit(
        [&out](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                out.emplace_back(d.value, 1.0);
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                const double r = d.g1 * d.g1 / d.g2;
                out.emplace_back(0.0, 1.0 - r);
                out.emplace_back(d.g2 / d.g1, r);
            } else if constexpr (std::is_same_v<T, Empirical>) {
                const double w = 1.0 / static_cast<double>(d.samples.size());
                for (std::size_t i = 0; i < d.samples.size(); ++i) {
                    if (!out.empty() && out.back().first == d.samples[i])
                        out.back().second += w;
                    else
                        out.emplace_back(d.samples[i], w);
                }
            } else if constexpr (std::is_same_v<T, MixtureNode>) {
                for (auto [x, m] : d.left->atoms()) out.emplace_back(x, d.weight * m);
                for (auto [x, m] : d.right->atoms())
                    out.emplace_back(x, (1.0 - d.weight) * m);
            }
        },
        node_);
    return out;
}

bool Distribution::has_continuous_part() const {
    return std::visit(
        [](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential> || std::is_same_v<T, Erlang> ||
                          std::is_same_v<T, HyperExponential>) {
                return true;
            } else if constexpr (std::is_same_v<T, MixtureNode>) {
                return (d.weight > 0.0 && d.left->has_continuous_part()) ||
                       (d.weight < 1.0 && d.right->has_continuous_part());
            } else {
                (void)d;
                return false;
            }
        },
        node_);
}

double Distribution::upper_range(double tail) const {
    double hi = std::max(mean(), 1e-12);
    while (1.0 - cdf(hi) > tail && hi < 1e300) hi *= 2.0;
    return hi;
}

double Distribution::sample(Rng& rng) const {
    return std::visit(
        [&rng](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return rng.exponential(d.rate);
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return d.value;
            } else if constexpr (std::is_same_v<T, Erlang>) {
                double v = 0.0;
                for (int i = 0; i < d.shape; ++i) v += rng.exponential(d.rate);
                return v;
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                double u = rng.uniform(), acc = 0.0;
                std::size_t pick = d.weights.size() - 1;
                for (std::size_t i = 0; i < d.weights.size(); ++i) {
                    acc += d.weights[i];
                    if (u <= acc) {
                        pick = i;
                        break;
                    }
                }
                return rng.exponential(d.rates[pick]);
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                const double r = d.g1 * d.g1 / d.g2;
                return rng.uniform() <= 1.0 - r ? 0.0 : d.g2 / d.g1;
            } else if constexpr (std::is_same_v<T, Empirical>) {
                return d.samples[rng.uniform_index(d.samples.size())];
            } else {
                return rng.uniform() <= d.weight ? d.left->sample(rng)
                                                 : d.right->sample(rng);
            }
        },
        node_);
}

std::string Distribution::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                os << "exponential(rate=" << d.rate << ")";
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                os << "deterministic(value=" << d.value << ")";
            } else if constexpr (std::is_same_v<T, Erlang>) {
                os << "erlang(shape=" << d.shape << ",rate=" << d.rate << ")";
            } else if constexpr (std::is_same_v<T, HyperExponential>) {
                os << "hyperexp(phases=" << d.weights.size() << ")";
            } else if constexpr (std::is_same_v<T, TwoPointGMax>) {
                os << "twopoint(g1=" << d.g1 << ",g2=" << d.g2 << ")";
            } else if constexpr (std::is_same_v<T, Empirical>) {
                os << "empirical(n=" << d.samples.size() << ")";
            } else {
                os << "mixture(p=" << d.weight << "," << d.left->describe() << ","
                   << d.right->describe() << ")";
            }
        },
        node_);
    return os.str();
}

Distribution in_class_mixture(const MomentClass& g, const Distribution& f,
                              const Distribution& base, double p) {
    validate_moment_class(g);
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("in_class_mixture: weight must lie strictly in (0, 1)");
    const auto check = [&g](const Distribution& d, const char* which) {
        const double m1 = d.mean(), m2 = d.second_moment();
        if (std::abs(m1 - g.g1) > 1e-9 * g.g1 || std::abs(m2 - g.g2) > 1e-9 * g.g2)
            throw ModelError(std::string("in_class_mixture: ") + which +
                             " moments do not match the class");
    };
    check(f, "component");
    check(base, "base");
    return Distribution::mixture(p, f, base);
}

EmpiricalEstimate empirical_from_samples(std::vector<double> samples) {
    if (samples.size() < 2)
        throw ConfigError("empirical_from_samples: at least two samples required");
    Distribution d = Distribution::empirical(std::move(samples));
    const MomentClass g{d.mean(), d.second_moment()};
    return {std::move(d), g};
}

}  // namespace qloss
