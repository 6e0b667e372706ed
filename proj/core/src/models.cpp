#include "qloss/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qloss/errors.hpp"

namespace qloss {

namespace {

double clamp_bound(double raw, bool denom_ok, double fallback, bool* saturated) {
    if (!denom_ok) {
        *saturated = true;
        return fallback;
    }
    if (raw < 0.0) {
        *saturated = true;
        return 0.0;
    }
    if (raw > 1.0) {
        *saturated = true;
        return 1.0;
    }
    return raw;
}

void order_bounds(BoundEnvelope* env) {
    if (env->lower > env->upper) {
        env->lower = env->upper;
        env->lower_saturated = true;
        env->warnings.push_back(
            "bounds crossed outside the asymptotic regime; lower clamped");
    }
}

double geometric_sum(double x, int from, int to) {
    double s = 0.0;
    for (int i = from; i <= to; ++i) s += std::pow(x, i);
    return s;
}

void validate_priority(const PriorityConfig& cfg) {
    if (!(cfg.lambda > 0.0) || !(cfg.mu > 0.0))
        throw ConfigError("priority: rates must be positive");
    if (cfg.group_size < 1)
        throw ConfigError("priority: group size must be a positive integer");
    if (cfg.type_probs.empty())
        throw ConfigError("priority: at least one customer type required");
    if (cfg.capacities.size() != cfg.type_probs.size())
        throw ConfigError("priority: capacity vector length must equal type count");
    double sum = 0.0;
    for (double p : cfg.type_probs) {
        if (!(p > 0.0)) throw ConfigError("priority: type probabilities must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("priority: type probabilities must sum to 1");
    for (long long n : cfg.capacities)
        if (n < 1) throw ConfigError("priority: capacities must be at least 1");
    const double gap_mean = cfg.interarrival.mean();
    if (std::abs(gap_mean * cfg.lambda - 1.0) > 1e-6)
        throw ConfigError("priority: interarrival mean must equal 1/lambda");
    if (!(cfg.lambda / (cfg.group_size * cfg.mu) < 1.0))
        throw ModelError("priority: requires lambda / (C mu) < 1");
}

}  // namespace

GIM1nLoss gim1n_loss_asymptotic(const GIM1nConfig& cfg) {
    if (cfg.capacity < 1) throw ConfigError("capacity must be at least 1");
    if (!(cfg.mu > 0.0)) throw ConfigError("mu must be positive");

    GIM1nLoss out;
    out.rho = 1.0 / (cfg.mu * cfg.arrival.mean());
    out.alpha = takacs_root(cfg.arrival, cfg.mu);
    const double alpha = out.alpha.root;
    out.derivative_factor =
        1.0 + cfg.mu * cfg.arrival.lst_derivative(cfg.mu - cfg.mu * alpha);

    const double t = out.derivative_factor * std::pow(alpha, cfg.capacity);
    out.value = (1.0 - out.rho) * t / (1.0 - out.rho - out.rho * t);
    return out;
}

DerivativeSandwich gim1n_derivative_sandwich(const GIM1nConfig& cfg) {
    const RootReport alpha = takacs_root(cfg.arrival, cfg.mu);
    DerivativeSandwich out;
    out.lo = cfg.arrival.lst(cfg.mu) / alpha.root;
    out.hi = 1.0;
    out.value =
        1.0 + cfg.mu * cfg.arrival.lst_derivative(cfg.mu - cfg.mu * alpha.root);
    out.lower_holds = out.lo <= out.value + 1e-12;
    return out;
}

BoundEnvelope gim1n_envelope(const MomentClass& g, double mu, int n, double root_star,
                             double epsilon, const EnvelopeOptions& opts) {
    validate_moment_class(g);
    if (n < 1) throw ConfigError("capacity must be at least 1");
    if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be nonnegative");
    const double rho = 1.0 / (mu * g.g1);
    if (!(rho < 1.0)) throw ModelError("envelope: requires rho = 1/(mu g1) < 1");

    const RootBounds rb = rolski_bounds(g, mu, 1, 1.0, opts.sign);
    const double ell = rb.lower;

    BoundEnvelope env;
    env.admissibility = epsilon_admissible(g, mu, root_star, 1, 1.0, opts.sign);

    const double shift = epsilon * (1.0 - ell);
    env.root_hi = root_star + shift;
    env.root_lo = root_star - shift;
    if (env.root_hi > rb.upper || env.root_lo < rb.lower) {
        // Past the admissible threshold only the class-extremal roots are
        // certified, so the shifted roots are clamped to them.
        env.root_hi = std::min(env.root_hi, rb.upper);
        env.root_lo = std::max(env.root_lo, rb.lower);
        env.warnings.push_back(
            "epsilon exceeds the admissible threshold; extremal root bounds "
            "substituted");
    }

    const double up_n = std::pow(env.root_hi, n);
    const double dn_n = std::pow(env.root_lo, n);

    double lo_num, lo_den;
    if (opts.strict_derivative_lower) {
        if (!(opts.lst_at_mu > 0.0))
            throw ConfigError("strict lower bound requires the transform value at mu");
        // Pointwise bracket value(mu)/root; no epsilon widening. Known to be
        // unsound for some laws; diagnostic use only.
        const double d_lo = opts.lst_at_mu / root_star;
        lo_num = (1.0 - rho) * d_lo * dn_n;
        lo_den = 1.0 - rho - rho * d_lo * dn_n;
    } else {
        const double extremal = std::exp(-mu * g.g1);
        lo_num = (1.0 - rho) * extremal * dn_n;
        lo_den = (1.0 - rho) * env.root_hi - rho * extremal * dn_n;
    }
    env.lower = clamp_bound(lo_den > 0.0 ? lo_num / lo_den : -1.0, lo_den > 0.0, 0.0,
                            &env.lower_saturated);

    const double hi_den = 1.0 - rho - rho * up_n;
    env.upper = clamp_bound(hi_den > 0.0 ? (1.0 - rho) * up_n / hi_den : 2.0,
                            hi_den > 0.0, 1.0, &env.upper_saturated);

    order_bounds(&env);
    return env;
}

MGI1BufferLoss mgi1_buffer_loss(const MGI1BufferConfig& cfg, DerivativeForm form) {
    if (!(cfg.lambda > 0.0)) throw ConfigError("buffer: lambda must be positive");
    if (!(cfg.capacity > 0.0)) throw ConfigError("buffer: capacity must be positive");
    if (!(cfg.error_prob >= 0.0 && cfg.error_prob <= 1.0))
        throw ConfigError("buffer: error probability must lie in [0, 1]");
    if (!(cfg.batch_lower >= 1 && cfg.batch_lower <= cfg.batch_upper))
        throw ConfigError("buffer: batch-size support bounds out of order");
    if (!(cfg.mean_batch >= cfg.batch_lower && cfg.mean_batch <= cfg.batch_upper))
        throw ConfigError("buffer: mean batch size outside its support");

    MGI1BufferLoss out;
    out.rho = cfg.lambda * cfg.service.mean();
    if (!(out.rho > 1.0))
        throw ModelError("buffer: requires overload rho = lambda b > 1");

    out.beta = takacs_root(cfg.service, cfg.lambda);
    const double beta = out.beta.root;
    const double s = cfg.lambda - cfg.lambda * beta;
    out.factor = form == DerivativeForm::kDerivative
                     ? 1.0 + cfg.lambda * cfg.service.lst_derivative(s)
                     : 1.0 + cfg.lambda * cfg.service.lst(s);

    const double p = cfg.error_prob;
    const double r = std::pow(beta, cfg.capacity / cfg.mean_batch);
    out.value = (p + out.rho - 1.0) / out.rho * ((out.rho - 1.0) + p * out.factor * r) /
                ((out.rho - 1.0) + out.factor * r);
    return out;
}

BoundEnvelope mgi1_buffer_envelope(const MomentClass& service_moments, double lambda,
                                   double p, double capacity, double mean_batch,
                                   double beta_star, double epsilon,
                                   const EnvelopeOptions& opts) {
    validate_moment_class(service_moments);
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError("buffer envelope: p must lie in [0, 1]");
    if (!(capacity > 0.0 && mean_batch > 0.0))
        throw ConfigError("buffer envelope: capacity and mean batch must be positive");
    const double rho = lambda * service_moments.g1;
    if (!(rho > 1.0))
        throw ModelError("buffer envelope: requires overload rho = lambda b > 1");

    BoundEnvelope env;
    env.admissibility =
        epsilon_admissible(service_moments, lambda, beta_star, 1, 1.0, opts.sign);
    if (!(epsilon < env.admissibility.value))
        throw AdmissibilityError("buffer envelope: epsilon exceeds the admissible "
                                 "threshold",
                                 env.admissibility.terms);

    const double ell = ell_root(service_moments.g1, lambda, 1, 1.0, opts.sign).root;
    const double shift = epsilon * (1.0 - ell);
    env.root_hi = beta_star + shift;
    env.root_lo = beta_star - shift;

    const double pref = (p + rho - 1.0) / rho;
    const double extremal = std::exp(-lambda * service_moments.g1);
    const double e_dn = std::pow(env.root_lo, capacity / mean_batch);
    const double e_up = std::pow(env.root_hi, capacity / mean_batch);
    const double head = (rho - 1.0) * env.root_hi;

    const double lower =
        pref * (head + p * extremal * e_dn) / (head + e_up * env.root_hi);
    const double upper =
        pref * (head + p * e_up * env.root_hi) / (head + extremal * e_dn);

    env.lower = clamp_bound(lower, true, 0.0, &env.lower_saturated);
    env.upper = clamp_bound(upper, true, 1.0, &env.upper_saturated);
    order_bounds(&env);
    return env;
}

double priority_composite_lst(const Distribution& base, double p_k, double s) {
    if (!(p_k > 0.0 && p_k <= 1.0))
        throw ConfigError("composite transform: p_k must lie in (0, 1]");
    const double a = base.lst(s);
    return p_k * a / (1.0 - (1.0 - p_k) * a);
}

double priority_composite_lst_derivative(const Distribution& base, double p_k,
                                         double s) {
    if (!(p_k > 0.0 && p_k <= 1.0))
        throw ConfigError("composite transform: p_k must lie in (0, 1]");
    const double a = base.lst(s);
    const double q = 1.0 - (1.0 - p_k) * a;
    return p_k * base.lst_derivative(s) / (q * q);
}

PriorityLoss priority_loss(const PriorityConfig& cfg, int k) {
    validate_priority(cfg);
    if (k < 1 || k > static_cast<int>(cfg.type_probs.size()))
        throw ConfigError("priority: type index out of range");

    PriorityLoss out;
    out.type_index = k;
    out.p_k = std::accumulate(cfg.type_probs.begin(), cfg.type_probs.begin() + k, 0.0);
    out.capacity_k =
        std::accumulate(cfg.capacities.begin(), cfg.capacities.begin() + k, 0LL);
    out.rho_k = cfg.lambda * out.p_k / (cfg.group_size * cfg.mu);

    const double p_k = out.p_k;
    const Distribution& base = cfg.interarrival;
    const std::function<double(double)> f = [&base, p_k](double s) {
        return priority_composite_lst(base, p_k, s);
    };
    const std::function<double(double)> fp = [&base, p_k](double s) {
        return priority_composite_lst_derivative(base, p_k, s);
    };
    out.alpha = least_root(f, fp, base.mean() / p_k, cfg.mu, cfg.group_size);

    const int c = cfg.group_size;
    const double alpha = out.alpha.root;
    out.derivative_factor =
        1.0 + c * cfg.mu * fp(cfg.mu - cfg.mu * std::pow(alpha, c));
    const double t = out.derivative_factor * std::pow(alpha, out.capacity_k);
    out.value = (1.0 - out.rho_k) * t /
                ((1.0 - out.rho_k) * geometric_sum(alpha, 0, c - 1) - out.rho_k * t);
    return out;
}

BoundEnvelope priority_envelope(const PriorityConfig& cfg, int k, double alpha_star,
                                double epsilon, const MomentClass& gap_moments,
                                const EnvelopeOptions& opts) {
    validate_priority(cfg);
    if (k < 1 || k > static_cast<int>(cfg.type_probs.size()))
        throw ConfigError("priority: type index out of range");
    validate_moment_class(gap_moments);

    const double p_k =
        std::accumulate(cfg.type_probs.begin(), cfg.type_probs.begin() + k, 0.0);
    const long long n_k =
        std::accumulate(cfg.capacities.begin(), cfg.capacities.begin() + k, 0LL);
    const double rho_k = cfg.lambda * p_k / (cfg.group_size * cfg.mu);
    const int c = cfg.group_size;

    BoundEnvelope env;
    env.admissibility =
        epsilon_admissible(gap_moments, cfg.mu, alpha_star, c, p_k, opts.sign);
    if (!(epsilon < env.admissibility.value))
        throw AdmissibilityError(
            "priority envelope: epsilon exceeds the admissible threshold",
            env.admissibility.terms);

    const double ell = ell_root(gap_moments.g1, cfg.mu, c, p_k, opts.sign).root;
    const double shift = epsilon * (1.0 - ell);
    env.root_hi = alpha_star + shift;
    env.root_lo = alpha_star - shift;

    const double extremal = std::exp(-cfg.mu * gap_moments.g1 / p_k);
    const double dn_n = std::pow(env.root_lo, static_cast<double>(n_k));
    const double up_n = std::pow(env.root_hi, static_cast<double>(n_k));

    // The geometric denominators follow the point formula: the lower side
    // carries powers 1..C because clearing the extremal factor multiplies the
    // sum through by the up-shifted root (so C = 1 reduces to the plain
    // single-queue envelope); the extended variant keeps the 0..C range.
    const double s_lo = opts.denominator == DenominatorForm::kConsistent
                            ? geometric_sum(env.root_hi, 1, c)
                            : geometric_sum(env.root_hi, 0, c);
    const double s_hi = opts.denominator == DenominatorForm::kConsistent
                            ? geometric_sum(env.root_lo, 0, c - 1)
                            : geometric_sum(env.root_lo, 0, c);

    const double lo_den = (1.0 - rho_k) * s_lo - rho_k * extremal * dn_n;
    env.lower = clamp_bound(lo_den > 0.0 ? (1.0 - rho_k) * extremal * dn_n / lo_den
                                         : -1.0,
                            lo_den > 0.0, 0.0, &env.lower_saturated);

    const double hi_den = (1.0 - rho_k) * s_hi - rho_k * up_n;
    env.upper = clamp_bound(hi_den > 0.0 ? (1.0 - rho_k) * up_n / hi_den : 2.0,
                            hi_den > 0.0, 1.0, &env.upper_saturated);
    order_bounds(&env);
    return env;
}

ContinuityEnvelope mm1n_continuity_envelope(const ContinuityConfig& cfg) {
    if (!(cfg.lambda > 0.0) || !(cfg.mu > 0.0))
        throw ConfigError("continuity: rates must be positive");
    if (cfg.capacity < 1) throw ConfigError("continuity: capacity must be at least 1");
    if (!(cfg.mixture_weight > 0.0 && cfg.mixture_weight <= 1.0))
        throw ConfigError("continuity: mixture weight must lie in (0, 1]");
    if (!(cfg.epsilon >= 0.0))
        throw ConfigError("continuity: epsilon must be nonnegative");
    const double inv_l2 = 1.0 / (cfg.lambda * cfg.lambda);
    if (!(cfg.sigma2 > inv_l2))
        throw ModelError("continuity: requires sigma^2 > 1/lambda^2");

    ContinuityEnvelope out;
    out.rho = cfg.lambda / cfg.mu;
    if (!(out.rho < 1.0)) throw ModelError("continuity: requires rho = lambda/mu < 1");

    out.ell = ell_root(1.0 / cfg.lambda, cfg.mu);
    const double ell = out.ell.root;
    if (out.rho < ell - 1e-9)
        throw NumericError("continuity: rho fell below the extremal root");

    const double factor =
        (cfg.condition == ContinuityConfig::Condition::kA ? 2.0 : 1.0) *
        cfg.mixture_weight;
    const double dist = factor * cfg.epsilon * (1.0 - ell);
    const double upper_room =
        1.0 + (ell - 1.0) / (1.0 + cfg.lambda * cfg.lambda * cfg.sigma2) - out.rho;
    out.eps_lower = std::min(out.rho - ell, dist);
    out.eps_upper = std::min(upper_room, dist);

    const double rho = out.rho;
    const int n = cfg.capacity;
    const double r_dn = rho - factor * out.eps_lower * (1.0 - ell);
    const double r_up_lo = rho + factor * out.eps_lower * (1.0 - ell);
    const double r_up_hi = rho + factor * out.eps_upper * (1.0 - ell);
    const double extremal = std::exp(-1.0 / rho);

    BoundEnvelope& env = out.envelope;
    env.root_lo = r_dn;
    env.root_hi = r_up_hi;

    const double lo_den =
        (1.0 - rho) * r_up_lo - rho * extremal * std::pow(r_dn, n);
    env.lower = clamp_bound(
        lo_den > 0.0 ? (1.0 - rho) * extremal * std::pow(r_dn, n) / lo_den : -1.0,
        lo_den > 0.0, 0.0, &env.lower_saturated);

    const double hi_den = 1.0 - rho - rho * std::pow(r_up_hi, n);
    env.upper =
        clamp_bound(hi_den > 0.0 ? (1.0 - rho) * std::pow(r_up_hi, n) / hi_den : 2.0,
                    hi_den > 0.0, 1.0, &env.upper_saturated);
    order_bounds(&env);
    return out;
}

}  // namespace qloss
