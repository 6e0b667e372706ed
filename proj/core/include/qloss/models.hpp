#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qloss/bounds.hpp"
#include "qloss/distribution.hpp"
#include "qloss/roots.hpp"

namespace qloss {

// ---------------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------------

/// Single server, renewal arrivals, exponential services, finite capacity.
/// An arrival finding `capacity` customers in the system is lost.
struct GIM1nConfig {
    Distribution arrival = Distribution::exponential(1.0);  ///< interarrival law
    double mu = 0.0;       ///< service rate
    int capacity = 1;      ///< n >= 1, total places including the server
};

/// Batch arrivals into a finite buffer with an error loss mode: every batch
/// is independently marked corrupted with probability `error_prob` and
/// counted lost even though it occupies the buffer and the server.
struct MGI1BufferConfig {
    double lambda = 0.0;       ///< batch arrival rate
    Distribution service = Distribution::exponential(1.0);  ///< per-batch law, mean b
    double capacity = 0.0;     ///< N, in units
    double mean_batch = 1.0;   ///< c, mean units per batch
    int batch_lower = 1;       ///< support bounds of the batch size
    int batch_upper = 1;
    double error_prob = 0.0;   ///< p
};

/// Typed renewal arrivals, exogenous exponential departure epochs removing
/// up to `group_size` customers highest priority first, per-type buffers.
struct PriorityConfig {
    double lambda = 0.0;              ///< total arrival rate (mean gap 1/lambda)
    Distribution interarrival = Distribution::exponential(1.0);  ///< merged-stream gap law
    std::vector<double> type_probs;   ///< p^(j), sum to 1, type 1 first
    int group_size = 1;               ///< C, departures per epoch
    double mu = 0.0;                  ///< departure epoch rate
    std::vector<long long> capacities;  ///< N^(j) per type
};

/// Near-exponential interarrival law A = p F + (1-p) Exp(lambda) where F has
/// mean 1/lambda and is within `epsilon` of memorylessness. Condition A uses
/// only that bound; Condition B additionally assumes F is NBU or NWU, which
/// halves the effective distance.
struct ContinuityConfig {
    enum class Condition { kA, kB };
    double lambda = 0.0;
    double mu = 0.0;
    int capacity = 1;           ///< n
    double mixture_weight = 1;  ///< p in (0, 1]
    double epsilon = 0.0;       ///< memorylessness defect of F
    double sigma2 = 0.0;        ///< E zeta^2 = sigma2 + 1/lambda^2
    Condition condition = Condition::kA;
};

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// A certified (lower, upper) interval for a loss probability under
/// distributional uncertainty epsilon. The formulas are asymptotic in the
/// buffer size, so outside that regime a side may be clamped into [0, 1];
/// the saturation flags record when that happened.
struct BoundEnvelope {
    double lower = 0.0;
    double upper = 1.0;
    double root_lo = 0.0;  ///< down-shifted root used by the lower side
    double root_hi = 0.0;  ///< up-shifted root used by the upper side
    EpsilonAdmissibility admissibility;
    bool lower_saturated = false;
    bool upper_saturated = false;
    std::vector<std::string> warnings;
};

struct GIM1nLoss {
    double value = 0.0;
    double rho = 0.0;
    double derivative_factor = 0.0;  ///< 1 + mu A'(mu - mu alpha)
    RootReport alpha;
};

/// The claimed two-sided bracket for 1 + mu A'(mu - mu alpha). The upper
/// bound is unconditional; the lower one (A(mu)/alpha) fails for some laws
/// (exponential arrivals among them), so it is reported, not asserted.
struct DerivativeSandwich {
    double lo = 0.0;
    double hi = 1.0;
    double value = 0.0;
    bool lower_holds = false;
};

struct MGI1BufferLoss {
    double value = 0.0;
    double rho = 0.0;     ///< lambda * b, required > 1
    double factor = 0.0;  ///< buffer analogue of the derivative factor
    RootReport beta;
};

struct PriorityLoss {
    double value = 0.0;
    int type_index = 0;   ///< 1-based k
    double p_k = 0.0;     ///< cumulative type probability
    double rho_k = 0.0;   ///< lambda p_k / (C mu)
    long long capacity_k = 0;  ///< cumulative buffer N_k
    double derivative_factor = 0.0;
    RootReport alpha;
};

// ---------------------------------------------------------------------------
// Options
// ---------------------------------------------------------------------------

/// Buffer-loss factor: the derivative form 1 + lambda B'(lambda - lambda beta)
/// (default, consistent with the single-queue formula) or the plain
/// transform value 1 + lambda B(lambda - lambda beta).
enum class DerivativeForm { kDerivative, kPlain };

/// Geometric-sum range in the priority envelope denominators: `kConsistent`
/// uses the ranges implied by the point formula (powers 1..C on the lower
/// side, 0..C-1 on the upper side, so C = 1 reduces to the single-queue
/// envelope); `kExtended` uses powers 0..C on both sides.
enum class DenominatorForm { kConsistent, kExtended };

struct EnvelopeOptions {
    EllSign sign = EllSign::kConsistent;
    DenominatorForm denominator = DenominatorForm::kConsistent;
    /// Replace the extremal numerator factor exp(-mu g1) of the lower bound
    /// by lst_at_mu and drop the epsilon widening of its denominator. This
    /// trusts the pointwise derivative bracket, which is known to fail for
    /// some laws; kept for diagnostics only.
    bool strict_derivative_lower = false;
    double lst_at_mu = 0.0;  ///< required when strict_derivative_lower is set
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Large-n loss probability (leading asymptotic term). With exponential
/// arrivals this reduces exactly to the birth-death closed form.
GIM1nLoss gim1n_loss_asymptotic(const GIM1nConfig& cfg);

DerivativeSandwich gim1n_derivative_sandwich(const GIM1nConfig& cfg);

/// Loss-probability envelope when only the class moments, a reference root
/// `root_star` and a uniform-metric distance `epsilon` are known. When
/// epsilon exceeds its admissible threshold the shifted roots are clamped to
/// the class-extremal bounds (and the envelope widens accordingly).
BoundEnvelope gim1n_envelope(const MomentClass& g, double mu, int n, double root_star,
                             double epsilon, const EnvelopeOptions& opts = {});

MGI1BufferLoss mgi1_buffer_loss(const MGI1BufferConfig& cfg,
                                DerivativeForm form = DerivativeForm::kDerivative);

/// Buffer-loss envelope. Unlike the single-queue envelope this has no
/// fallback: an inadmissible epsilon raises AdmissibilityError carrying the
/// three threshold terms.
BoundEnvelope mgi1_buffer_envelope(const MomentClass& service_moments, double lambda,
                                   double p, double capacity, double mean_batch,
                                   double beta_star, double epsilon,
                                   const EnvelopeOptions& opts = {});

/// LST of the interarrival gap of the stream thinned to the first k types:
/// p_k A(s) / (1 - (1 - p_k) A(s)), a geometric compound of base gaps.
double priority_composite_lst(const Distribution& base, double p_k, double s);
double priority_composite_lst_derivative(const Distribution& base, double p_k,
                                         double s);

/// Large-buffer loss probability of type-k customers (1-based k).
PriorityLoss priority_loss(const PriorityConfig& cfg, int k);

/// Envelope for the type-k loss probability given the class moments of the
/// full-stream gap law. CE violations raise AdmissibilityError.
BoundEnvelope priority_envelope(const PriorityConfig& cfg, int k, double alpha_star,
                                double epsilon, const MomentClass& gap_moments,
                                const EnvelopeOptions& opts = {});

struct ContinuityEnvelope {
    BoundEnvelope envelope;
    double rho = 0.0;
    double eps_lower = 0.0;  ///< clamped shift driving the lower bound
    double eps_upper = 0.0;  ///< clamped shift driving the upper bound
    RootReport ell;
};

/// Two-sided bounds for the loss probability of a nearly-memoryless-input
/// system of capacity n under Condition A or B.
ContinuityEnvelope mm1n_continuity_envelope(const ContinuityConfig& cfg);

}  // namespace qloss
