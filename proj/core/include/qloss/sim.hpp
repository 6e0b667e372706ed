#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qloss/models.hpp"
#include "qloss/rng.hpp"

namespace qloss {

/// Monte-Carlo loss-probability estimate. The half width is a 95% normal
/// interval from 32 batch means computed after a 5% warm-up.
struct SimEstimate {
    double point = 0.0;
    double half_width = 0.0;
    std::uint64_t arrivals = 0;  ///< counted arrivals (post warm-up)
    std::uint64_t losses = 0;
    std::uint64_t seed = 0;
    std::string stream;
    std::string rng_algorithm;
};

/// Renewal arrivals, exponential services, capacity n; an arrival finding n
/// customers in the system is lost. Long-run estimate, no regeneration.
SimEstimate simulate_gim1n(const GIM1nConfig& cfg, std::uint64_t arrivals,
                           const RngSpec& rng);

/// Poisson batch arrivals with two-point batch sizes on {batch_lower,
/// batch_upper} matching the configured mean. A batch that does not fit in
/// the remaining buffer is lost; a batch that joins is still counted lost if
/// it carries a transmission error (probability p), though it occupies the
/// buffer and the server all the same.
SimEstimate simulate_mgi1_buffer(const MGI1BufferConfig& cfg, std::uint64_t batches,
                                 const RngSpec& rng);

/// Typed renewal arrivals; every Exp(mu) epoch removes up to C customers,
/// highest priority first. A type-j arrival finding its buffer full is lost.
/// The budget counts departure epochs; returns one estimate per type.
std::vector<SimEstimate> simulate_priority(const PriorityConfig& cfg,
                                           std::uint64_t departures,
                                           const RngSpec& rng);

/// Departure rule: removes up to `group` customers from the per-type counts,
/// lowest index (highest priority) first. Returns the number removed.
long long remove_by_priority(std::vector<long long>& counts, long long group);

/// Merge two estimates of the same quantity (counts add, points combine by
/// weight); associative, for fan-out across replications.
SimEstimate merge(const SimEstimate& a, const SimEstimate& b);

/// Width of the two-sided confidence band for an empirical CDF of N samples:
/// the z solving K(z) = coverage, scaled by 1/sqrt(N).
double ks_confidence_epsilon(std::uint64_t n, double coverage);

}  // namespace qloss
