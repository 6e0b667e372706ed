#include "qloss/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <vector>

#include "qloss/errors.hpp"
#include "qloss/kolmogorov.hpp"

namespace qloss {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr int kBatches = 32;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Long-run estimate from a 0/1 outcome sequence: drop the first 5% as
// warm-up, then a batch-means CI over 32 consecutive batches.
SimEstimate build_estimate(const std::vector<std::uint8_t>& outcomes,
                           const RngSpec& spec) {
    const std::size_t warm = outcomes.size() / 20;
    const std::size_t counted = outcomes.size() - warm;
    if (counted < kBatches)
        throw ConfigError("simulation: too few events for a batch-means interval");

    std::uint64_t losses = 0;
    for (std::size_t i = warm; i < outcomes.size(); ++i) losses += outcomes[i];

    SimEstimate est;
    est.arrivals = counted;
    est.losses = losses;
    est.point = static_cast<double>(losses) / static_cast<double>(counted);
    est.seed = spec.seed;
    est.stream = spec.stream;
    est.rng_algorithm = Rng::algorithm();

    const std::size_t batch = counted / kBatches;
    double means[kBatches];
    for (int b = 0; b < kBatches; ++b) {
        const std::size_t lo = warm + b * batch;
        const std::size_t hi = b == kBatches - 1 ? outcomes.size() : lo + batch;
        std::uint64_t s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += outcomes[i];
        means[b] = static_cast<double>(s) / static_cast<double>(hi - lo);
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= kBatches;
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= kBatches - 1;
    est.half_width = kZ95 * std::sqrt(var / kBatches);
    if (est.half_width == 0.0 && est.point > 0.0 && est.point < 1.0)
        est.half_width =
            kZ95 * std::sqrt(est.point * (1.0 - est.point) / counted);
    return est;
}

}  // namespace

SimEstimate simulate_gim1n(const GIM1nConfig& cfg, std::uint64_t arrivals,
                           const RngSpec& spec) {
    if (cfg.capacity < 1) throw ConfigError("simulation: capacity must be at least 1");
    if (!(cfg.mu > 0.0)) throw ConfigError("simulation: mu must be positive");
    if (arrivals < 10000)
        throw ConfigError("simulation: at least 1e4 arrivals required");

    Rng rng(spec);
    std::vector<std::uint8_t> outcomes;
    outcomes.reserve(arrivals);

    double t_arr = cfg.arrival.sample(rng);
    double t_dep = kInf;
    int in_system = 0;
    while (outcomes.size() < arrivals) {
        if (t_arr <= t_dep) {  // arrival (ties resolved arrival-first)
            const bool lost = in_system == cfg.capacity;
            outcomes.push_back(lost ? 1 : 0);
            if (!lost && ++in_system == 1)
                t_dep = t_arr + rng.exponential(cfg.mu);
            t_arr += cfg.arrival.sample(rng);
        } else {  // service completion
            t_dep = --in_system > 0 ? t_dep + rng.exponential(cfg.mu) : kInf;
        }
    }
    return build_estimate(outcomes, spec);
}

SimEstimate simulate_mgi1_buffer(const MGI1BufferConfig& cfg, std::uint64_t batches,
                                 const RngSpec& spec) {
    if (!(cfg.lambda > 0.0)) throw ConfigError("simulation: lambda must be positive");
    if (!(cfg.capacity > 0.0))
        throw ConfigError("simulation: capacity must be positive");
    if (!(cfg.batch_lower >= 1 && cfg.batch_lower <= cfg.batch_upper))
        throw ConfigError("simulation: batch-size support bounds out of order");
    if (!(cfg.mean_batch >= cfg.batch_lower && cfg.mean_batch <= cfg.batch_upper))
        throw ConfigError("simulation: mean batch size outside its support");
    if (!(cfg.error_prob >= 0.0 && cfg.error_prob <= 1.0))
        throw ConfigError("simulation: error probability must lie in [0, 1]");
    if (batches < 10000)
        throw ConfigError("simulation: at least 1e4 batches required");

    // Two-point batch sizes on the support bounds matching the mean.
    const double q_hi =
        cfg.batch_upper == cfg.batch_lower
            ? 0.0
            : (cfg.mean_batch - cfg.batch_lower) /
                  static_cast<double>(cfg.batch_upper - cfg.batch_lower);

    Rng rng(spec);
    std::vector<std::uint8_t> outcomes;
    outcomes.reserve(batches);

    double t_arr = rng.exponential(cfg.lambda);
    double t_svc = kInf;
    std::deque<int> queue;  // unit counts of waiting/in-service batches
    double units = 0.0;
    while (outcomes.size() < batches) {
        if (t_arr <= t_svc) {
            const int size =
                rng.uniform() <= q_hi ? cfg.batch_upper : cfg.batch_lower;
            const bool errored =
                cfg.error_prob > 0.0 && rng.uniform() <= cfg.error_prob;
            const bool overflow = units + size > cfg.capacity;
            if (!overflow) {
                // Corrupted batches still occupy the buffer and the server;
                // the loss is chalked up when they deliver nothing.
                queue.push_back(size);
                units += size;
                if (queue.size() == 1) t_svc = t_arr + cfg.service.sample(rng);
            }
            outcomes.push_back(overflow || errored ? 1 : 0);
            t_arr += rng.exponential(cfg.lambda);
        } else {
            units -= queue.front();
            queue.pop_front();
            t_svc = queue.empty() ? kInf : t_svc + cfg.service.sample(rng);
        }
    }
    return build_estimate(outcomes, spec);
}

std::vector<SimEstimate> simulate_priority(const PriorityConfig& cfg,
                                           std::uint64_t departures,
                                           const RngSpec& spec) {
    const std::size_t types = cfg.type_probs.size();
    if (types == 0) throw ConfigError("simulation: at least one customer type");
    if (cfg.capacities.size() != types)
        throw ConfigError("simulation: capacity vector length must equal type count");
    if (cfg.group_size < 1 || !(cfg.mu > 0.0))
        throw ConfigError("simulation: invalid departure parameters");
    if (departures < 10000)
        throw ConfigError("simulation: at least 1e4 departures required");

    std::vector<double> cum(types);
    std::partial_sum(cfg.type_probs.begin(), cfg.type_probs.end(), cum.begin());

    Rng rng(spec);
    std::vector<std::vector<std::uint8_t>> outcomes(types);
    std::vector<long long> in_buffer(types, 0);

    double t_arr = cfg.interarrival.sample(rng);
    double t_dep = rng.exponential(cfg.mu);  // exogenous epoch clock
    std::uint64_t seen_departures = 0;
    while (seen_departures < departures) {
        if (t_arr <= t_dep) {
            const double u = rng.uniform();
            std::size_t j = types - 1;
            for (std::size_t i = 0; i < types; ++i)
                if (u <= cum[i]) {
                    j = i;
                    break;
                }
            const bool lost = in_buffer[j] >= cfg.capacities[j];
            if (!lost) ++in_buffer[j];
            outcomes[j].push_back(lost ? 1 : 0);
            t_arr += cfg.interarrival.sample(rng);
        } else {
            remove_by_priority(in_buffer, cfg.group_size);
            ++seen_departures;
            t_dep += rng.exponential(cfg.mu);
        }
    }

    std::vector<SimEstimate> out;
    out.reserve(types);
    for (std::size_t j = 0; j < types; ++j) out.push_back(build_estimate(outcomes[j], spec));
    return out;
}

long long remove_by_priority(std::vector<long long>& counts, long long group) {
    long long remaining = group;
    for (std::size_t j = 0; j < counts.size() && remaining > 0; ++j) {
        const long long take = std::min(counts[j], remaining);
        counts[j] -= take;
        remaining -= take;
    }
    return group - remaining;
}

SimEstimate merge(const SimEstimate& a, const SimEstimate& b) {
    SimEstimate out;
    out.arrivals = a.arrivals + b.arrivals;
    out.losses = a.losses + b.losses;
    out.point = static_cast<double>(out.losses) / static_cast<double>(out.arrivals);
    const double wa = static_cast<double>(a.arrivals) / out.arrivals;
    const double wb = static_cast<double>(b.arrivals) / out.arrivals;
    out.half_width = std::sqrt(wa * wa * a.half_width * a.half_width +
                               wb * wb * b.half_width * b.half_width);
    out.seed = a.seed;
    out.stream = a.stream + "+" + b.stream;
    out.rng_algorithm = a.rng_algorithm;
    return out;
}

double ks_confidence_epsilon(std::uint64_t n, double coverage) {
    if (n < 30) throw ConfigError("ks band: at least 30 samples required");
    if (!(coverage > 0.0 && coverage < 1.0))
        throw ConfigError("ks band: coverage must lie in (0, 1)");

    double lo = 0.0, hi = 10.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_limit_cdf(mid) < coverage)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(n));
}

}  // namespace qloss
