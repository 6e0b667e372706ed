#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qloss/bounds.hpp"
#include "qloss/dist_spec.hpp"
#include "qloss/errors.hpp"
#include "qloss/ingest.hpp"
#include "qloss/kolmogorov.hpp"
#include "qloss/models.hpp"
#include "qloss/report.hpp"
#include "qloss/roots.hpp"
#include "qloss/sim.hpp"
#include "qloss/version.hpp"

using nlohmann::json;

namespace qloss::cli {
namespace {

// Flags win over config-file values; a missing required key is a schema
// error (exit 2).
template <typename T>
std::optional<T> from_config(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) return std::nullopt;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

template <typename T>
T required(const std::optional<T>& flag, const json& cfg, const std::string& key) {
    if (flag) return *flag;
    if (auto v = from_config<T>(cfg, key)) return *v;
    throw ConfigError("missing required parameter '" + key + "'");
}

template <typename T>
std::optional<T> maybe(const std::optional<T>& flag, const json& cfg,
                       const std::string& key) {
    if (flag) return flag;
    return from_config<T>(cfg, key);
}

Distribution required_dist(const std::optional<std::string>& flag, const json& cfg,
                           const std::string& key) {
    if (flag) return parse_dist_string(*flag);
    if (cfg.contains(key)) return parse_dist_json(cfg.at(key));
    throw ConfigError("missing required distribution '" + key + "'");
}

std::vector<double> required_list(const std::vector<double>& flag, const json& cfg,
                                  const std::string& key) {
    if (!flag.empty()) return flag;
    if (auto v = from_config<std::vector<double>>(cfg, key)) return *v;
    throw ConfigError("missing required list '" + key + "'");
}

struct Conventions {
    std::string eq36 = "consistent";
    std::string mg_form = "derivative";
    std::string prop2 = "consistent";

    EllSign sign() const {
        return eq36 == "literal" ? EllSign::kLiteral : EllSign::kConsistent;
    }
    DerivativeForm derivative_form() const {
        return mg_form == "plain" ? DerivativeForm::kPlain
                                  : DerivativeForm::kDerivative;
    }
    DenominatorForm denominator_form() const {
        return prop2 == "extended" ? DenominatorForm::kExtended
                                   : DenominatorForm::kConsistent;
    }
    EnvelopeOptions envelope_options() const {
        EnvelopeOptions o;
        o.sign = sign();
        o.denominator = denominator_form();
        return o;
    }
    json echo() const {
        return {{"eq36_sign", eq36},
                {"mg_derivative_form", mg_form},
                {"prop2_denominator", prop2}};
    }
};

// Option holders for every subcommand; CLI11 binds into the optionals.
struct Cmd {
    std::optional<std::string> dist, service, model, stream, condition, samples, ref;
    std::optional<double> mu, lambda, g1, g2, pk, epsilon, root_star, capacity_units,
        mean_batch, error_prob, sigma2, coverage, weight;
    std::optional<int> n, batch, nu_lower, nu_upper, group, k;
    std::vector<double> type_probs, capacities;
    std::optional<std::uint64_t> events, seed;
    std::optional<int> replications;
};

struct Report {
    json inputs;
    json results;
    std::vector<std::string> warnings;
};

Report run_root(const Cmd& c, const json& cfg, const Conventions&) {
    const auto dist = required_dist(c.dist, cfg, "dist");
    const double mu = required<double>(c.mu, cfg, "mu");
    const int batch = maybe<int>(c.batch, cfg, "batch").value_or(1);

    const auto root = takacs_root(dist, mu, batch);
    Report r;
    r.inputs = {{"dist", dist.describe()}, {"mu", mu}, {"batch", batch}};
    r.results = {{"root", to_json(root)},
                 {"rho", 1.0 / (mu * dist.mean() * batch)},
                 {"mean", dist.mean()},
                 {"second_moment", dist.second_moment()}};
    append_warnings(r.warnings, root.warnings);
    return r;
}

Report run_bounds(const Cmd& c, const json& cfg, const Conventions& conv) {
    const MomentClass g{required<double>(c.g1, cfg, "g1"),
                        required<double>(c.g2, cfg, "g2")};
    const double mu = required<double>(c.mu, cfg, "mu");
    const int batch = maybe<int>(c.batch, cfg, "batch").value_or(1);
    const double pk = maybe<double>(c.pk, cfg, "pk").value_or(1.0);

    const auto rb = rolski_bounds(g, mu, batch, pk, conv.sign());
    Report r;
    r.inputs = {{"g1", g.g1}, {"g2", g.g2}, {"mu", mu}, {"batch", batch}, {"pk", pk}};
    r.results = {{"ell", to_json(rb.ell)},
                 {"lower", rb.lower},
                 {"upper", rb.upper},
                 {"width", rb.upper - rb.lower},
                 {"effective_moments", {rb.effective.g1, rb.effective.g2}}};
    append_warnings(r.warnings, rb.ell.warnings);

    if (const auto eps = maybe<double>(c.epsilon, cfg, "epsilon")) {
        const auto t1 = theorem1_bound(g, mu, *eps);
        r.inputs["epsilon"] = *eps;
        r.results["root_distance"] = {
            {"epsilon", t1.epsilon},
            {"bound", t1.bound},
            {"regime", t1.regime == BoundRegime::kRefined ? "refined" : "coarse"}};
    }
    if (const auto star = maybe<double>(c.root_star, cfg, "root_star")) {
        r.inputs["root_star"] = *star;
        r.results["admissible_epsilon"] =
            to_json(epsilon_admissible(g, mu, *star, batch, pk, conv.sign()));
    }
    return r;
}

Report run_gim1n(const Cmd& c, const json& cfg, const Conventions& conv) {
    GIM1nConfig mc;
    mc.arrival = required_dist(c.dist, cfg, "dist");
    mc.mu = required<double>(c.mu, cfg, "mu");
    mc.capacity = required<int>(c.n, cfg, "n");

    const auto loss = gim1n_loss_asymptotic(mc);
    const auto sandwich = gim1n_derivative_sandwich(mc);
    Report r;
    r.inputs = {{"dist", mc.arrival.describe()}, {"mu", mc.mu}, {"n", mc.capacity}};
    r.results = {{"rho", loss.rho},
                 {"alpha", to_json(loss.alpha)},
                 {"derivative_factor", loss.derivative_factor},
                 {"loss", loss.value},
                 {"factor_bracket",
                  {{"lo", sandwich.lo},
                   {"hi", sandwich.hi},
                   {"lower_holds", sandwich.lower_holds}}}};
    append_warnings(r.warnings, loss.alpha.warnings);
    if (!sandwich.lower_holds)
        r.warnings.push_back(
            "pointwise factor bracket violated at its lower end (known issue)");

    if (const auto eps = maybe<double>(c.epsilon, cfg, "epsilon")) {
        const MomentClass g{mc.arrival.mean(),
                            maybe<double>(c.g2, cfg, "g2").value_or(
                                mc.arrival.second_moment())};
        const double star =
            maybe<double>(c.root_star, cfg, "root_star").value_or(loss.alpha.root);
        const auto env =
            gim1n_envelope(g, mc.mu, mc.capacity, star, *eps, conv.envelope_options());
        r.inputs["epsilon"] = *eps;
        r.inputs["g2"] = g.g2;
        r.inputs["root_star"] = star;
        r.results["envelope"] = to_json(env);
        append_warnings(r.warnings, env.warnings);
    }
    return r;
}

MGI1BufferConfig buffer_config(const Cmd& c, const json& cfg) {
    MGI1BufferConfig mc;
    mc.lambda = required<double>(c.lambda, cfg, "lambda");
    mc.service = required_dist(c.service, cfg, "service");
    mc.capacity = required<double>(c.capacity_units, cfg, "N");
    mc.mean_batch = maybe<double>(c.mean_batch, cfg, "c").value_or(1.0);
    mc.batch_lower = maybe<int>(c.nu_lower, cfg, "nu_lower")
                         .value_or(static_cast<int>(std::floor(mc.mean_batch)));
    mc.batch_upper = maybe<int>(c.nu_upper, cfg, "nu_upper")
                         .value_or(static_cast<int>(std::ceil(mc.mean_batch)));
    mc.error_prob = maybe<double>(c.error_prob, cfg, "p").value_or(0.0);
    return mc;
}

Report run_buffer(const Cmd& c, const json& cfg, const Conventions& conv) {
    const auto mc = buffer_config(c, cfg);
    const auto loss = mgi1_buffer_loss(mc, conv.derivative_form());
    Report r;
    r.inputs = {{"lambda", mc.lambda},    {"service", mc.service.describe()},
                {"N", mc.capacity},       {"c", mc.mean_batch},
                {"nu_lower", mc.batch_lower}, {"nu_upper", mc.batch_upper},
                {"p", mc.error_prob}};
    r.results = {{"rho", loss.rho},
                 {"beta", to_json(loss.beta)},
                 {"factor", loss.factor},
                 {"loss", loss.value}};
    append_warnings(r.warnings, loss.beta.warnings);

    if (const auto eps = maybe<double>(c.epsilon, cfg, "epsilon")) {
        const MomentClass g{mc.service.mean(),
                            maybe<double>(c.g2, cfg, "g2").value_or(
                                mc.service.second_moment())};
        const double star =
            maybe<double>(c.root_star, cfg, "root_star").value_or(loss.beta.root);
        const auto env =
            mgi1_buffer_envelope(g, mc.lambda, mc.error_prob, mc.capacity,
                                 mc.mean_batch, star, *eps, conv.envelope_options());
        r.inputs["epsilon"] = *eps;
        r.inputs["g2"] = g.g2;
        r.inputs["root_star"] = star;
        r.results["envelope"] = to_json(env);
        append_warnings(r.warnings, env.warnings);
    }
    return r;
}

PriorityConfig priority_config(const Cmd& c, const json& cfg) {
    PriorityConfig mc;
    mc.lambda = required<double>(c.lambda, cfg, "lambda");
    mc.interarrival = required_dist(c.dist, cfg, "dist");
    mc.type_probs = required_list(c.type_probs, cfg, "type_probs");
    mc.group_size = maybe<int>(c.group, cfg, "C").value_or(1);
    mc.mu = required<double>(c.mu, cfg, "mu");
    for (double cap : required_list(c.capacities, cfg, "capacities"))
        mc.capacities.push_back(static_cast<long long>(cap));
    return mc;
}

Report run_priority(const Cmd& c, const json& cfg, const Conventions& conv) {
    const auto mc = priority_config(c, cfg);
    Report r;
    r.inputs = {{"lambda", mc.lambda},
                {"dist", mc.interarrival.describe()},
                {"type_probs", mc.type_probs},
                {"C", mc.group_size},
                {"mu", mc.mu},
                {"capacities", mc.capacities}};

    const auto eps = maybe<double>(c.epsilon, cfg, "epsilon");
    const MomentClass g{mc.interarrival.mean(),
                        maybe<double>(c.g2, cfg, "g2").value_or(
                            mc.interarrival.second_moment())};

    std::vector<int> ks;
    if (const auto k = maybe<int>(c.k, cfg, "k"))
        ks.push_back(*k);
    else
        for (int i = 1; i <= static_cast<int>(mc.type_probs.size()); ++i)
            ks.push_back(i);

    json types = json::array();
    for (int k : ks) {
        const auto loss = priority_loss(mc, k);
        json t{{"k", k},
               {"p_k", loss.p_k},
               {"rho_k", loss.rho_k},
               {"N_k", loss.capacity_k},
               {"alpha", to_json(loss.alpha)},
               {"derivative_factor", loss.derivative_factor},
               {"loss", loss.value}};
        append_warnings(r.warnings, loss.alpha.warnings);
        if (eps) {
            const auto env = priority_envelope(mc, k, loss.alpha.root, *eps, g,
                                               conv.envelope_options());
            t["envelope"] = to_json(env);
            append_warnings(r.warnings, env.warnings);
        }
        types.push_back(std::move(t));
    }
    if (eps) {
        r.inputs["epsilon"] = *eps;
        r.inputs["g2"] = g.g2;
    }
    r.results = {{"types", std::move(types)}};
    return r;
}

Report run_continuity(const Cmd& c, const json& cfg, const Conventions&) {
    ContinuityConfig mc;
    mc.lambda = required<double>(c.lambda, cfg, "lambda");
    mc.mu = required<double>(c.mu, cfg, "mu");
    mc.capacity = required<int>(c.n, cfg, "n");
    mc.mixture_weight = maybe<double>(c.weight, cfg, "p").value_or(1.0);
    mc.epsilon = required<double>(c.epsilon, cfg, "epsilon");
    mc.sigma2 = required<double>(c.sigma2, cfg, "sigma2");
    const std::string cond =
        maybe<std::string>(c.condition, cfg, "condition").value_or("A");
    if (cond != "A" && cond != "B")
        throw ConfigError("condition must be 'A' or 'B'");
    mc.condition = cond == "A" ? ContinuityConfig::Condition::kA
                               : ContinuityConfig::Condition::kB;

    const auto out = mm1n_continuity_envelope(mc);
    Report r;
    r.inputs = {{"lambda", mc.lambda},   {"mu", mc.mu},
                {"n", mc.capacity},      {"p", mc.mixture_weight},
                {"epsilon", mc.epsilon}, {"sigma2", mc.sigma2},
                {"condition", cond}};
    r.results = {{"rho", out.rho},
                 {"ell", to_json(out.ell)},
                 {"eps_lower", out.eps_lower},
                 {"eps_upper", out.eps_upper},
                 {"envelope", to_json(out.envelope)}};
    append_warnings(r.warnings, out.ell.warnings);
    append_warnings(r.warnings, out.envelope.warnings);
    return r;
}

Report run_simulate(const Cmd& c, const json& cfg, const Conventions&) {
    const std::string model = required<std::string>(c.model, cfg, "model");
    const std::uint64_t events = required<std::uint64_t>(c.events, cfg, "events");
    const std::uint64_t seed = maybe<std::uint64_t>(c.seed, cfg, "seed").value_or(0);
    const std::string stream =
        maybe<std::string>(c.stream, cfg, "stream").value_or("default");
    const int reps = maybe<int>(c.replications, cfg, "replications").value_or(1);
    if (reps < 1) throw ConfigError("replications must be at least 1");

    Report r;
    r.inputs = {{"model", model},
                {"events", events},
                {"seed", seed},
                {"stream", stream},
                {"replications", reps}};

    const auto fan_out = [&](auto one) {
        // Replications use derived stream labels and run concurrently;
        // estimates merge associatively, so scheduling cannot change them.
        std::vector<std::future<SimEstimate>> futs;
        for (int i = 0; i < reps; ++i) {
            RngSpec spec{seed, reps == 1 ? stream
                                         : stream + "#" + std::to_string(i)};
            futs.push_back(std::async(std::launch::async, one, spec));
        }
        SimEstimate merged = futs.front().get();
        for (std::size_t i = 1; i < futs.size(); ++i)
            merged = merge(merged, futs[i].get());
        return merged;
    };

    if (model == "gim1n") {
        GIM1nConfig mc;
        mc.arrival = required_dist(c.dist, cfg, "dist");
        mc.mu = required<double>(c.mu, cfg, "mu");
        mc.capacity = required<int>(c.n, cfg, "n");
        r.inputs["dist"] = mc.arrival.describe();
        r.inputs["mu"] = mc.mu;
        r.inputs["n"] = mc.capacity;
        r.results = {{"estimate", to_json(fan_out([&](const RngSpec& spec) {
                         return simulate_gim1n(mc, events, spec);
                     }))}};
    } else if (model == "buffer") {
        const auto mc = buffer_config(c, cfg);
        r.inputs["lambda"] = mc.lambda;
        r.inputs["service"] = mc.service.describe();
        r.inputs["N"] = mc.capacity;
        r.results = {{"estimate", to_json(fan_out([&](const RngSpec& spec) {
                         return simulate_mgi1_buffer(mc, events, spec);
                     }))}};
    } else if (model == "priority") {
        const auto mc = priority_config(c, cfg);
        r.inputs["lambda"] = mc.lambda;
        r.inputs["dist"] = mc.interarrival.describe();
        r.inputs["C"] = mc.group_size;
        // Per-type estimates merge across replications index by index.
        std::vector<std::future<std::vector<SimEstimate>>> futs;
        for (int i = 0; i < reps; ++i) {
            RngSpec spec{seed,
                         reps == 1 ? stream : stream + "#" + std::to_string(i)};
            futs.push_back(std::async(std::launch::async, [&mc, events, spec] {
                return simulate_priority(mc, events, spec);
            }));
        }
        auto merged = futs.front().get();
        for (std::size_t i = 1; i < futs.size(); ++i) {
            const auto next = futs[i].get();
            for (std::size_t j = 0; j < merged.size(); ++j)
                merged[j] = merge(merged[j], next[j]);
        }
        json types = json::array();
        for (std::size_t j = 0; j < merged.size(); ++j) {
            json t = to_json(merged[j]);
            t["k"] = j + 1;
            types.push_back(std::move(t));
        }
        r.results = {{"types", std::move(types)}};
    } else {
        throw ConfigError("unknown simulation model '" + model + "'");
    }
    return r;
}

Report run_kdist(const Cmd& c, const json& cfg, const Conventions&) {
    const std::string path = required<std::string>(c.samples, cfg, "samples");
    const auto samples = ingest_samples(path);
    const auto est = empirical_from_samples(samples);
    const auto ref = required_dist(c.ref, cfg, "ref");
    const double coverage = maybe<double>(c.coverage, cfg, "coverage").value_or(0.95);

    const double distance = kolmogorov_distance(est.dist, ref).value;
    const double band = ks_confidence_epsilon(samples.size(), coverage);
    Report r;
    r.inputs = {{"samples", path},
                {"n", samples.size()},
                {"ref", ref.describe()},
                {"coverage", coverage}};
    r.results = {{"distance", distance},
                 {"sample_moments", {est.moments.g1, est.moments.g2}},
                 {"band", {{"coverage", coverage}, {"epsilon", band}}},
                 {"within_band", distance < band}};
    return r;
}

int dispatch(const std::string& name, const Cmd& c, const json& cfg,
             const Conventions& conv, const std::string& output_path) {
    Report rep;
    if (name == "root")
        rep = run_root(c, cfg, conv);
    else if (name == "bounds")
        rep = run_bounds(c, cfg, conv);
    else if (name == "gim1n")
        rep = run_gim1n(c, cfg, conv);
    else if (name == "buffer")
        rep = run_buffer(c, cfg, conv);
    else if (name == "priority")
        rep = run_priority(c, cfg, conv);
    else if (name == "continuity")
        rep = run_continuity(c, cfg, conv);
    else if (name == "simulate")
        rep = run_simulate(c, cfg, conv);
    else
        rep = run_kdist(c, cfg, conv);

    json report{{"subcommand", name},
                {"inputs", std::move(rep.inputs)},
                {"results", std::move(rep.results)},
                {"conventions", conv.echo()},
                {"warnings", rep.warnings},
                {"tool", {{"name", "qloss"}, {"version", kVersion}}}};
    const std::string body = report.dump(2) + "\n";
    if (output_path.empty() || output_path == "-") {
        std::cout << body;
    } else {
        std::ofstream out(output_path);
        if (!out) throw ConfigError("cannot open output file '" + output_path + "'");
        out << body;
    }
    return 0;
}

}  // namespace
}  // namespace qloss::cli

int main(int argc, char** argv) {
    using namespace qloss;
    using namespace qloss::cli;

    CLI::App app{
        "qloss: fixed-point roots, extremal bounds and loss-probability "
        "envelopes for finite-buffer queueing systems"};
    app.require_subcommand(1);

    std::string config_path, output_path;
    Conventions conv;
    app.add_option("--config", config_path, "JSON config file; flags override it");
    app.add_option("--output", output_path, "report destination (default stdout)");
    app.add_option("--eq36-sign", conv.eq36,
                   "sign convention of the batch phase equation")
        ->check(CLI::IsMember({"consistent", "literal"}));
    app.add_option("--mg-derivative-form", conv.mg_form,
                   "buffer loss factor: transform derivative or plain value")
        ->check(CLI::IsMember({"derivative", "plain"}));
    app.add_option("--prop2-denominator", conv.prop2,
                   "geometric-sum range in the priority envelope")
        ->check(CLI::IsMember({"consistent", "extended"}));

    Cmd c;
    const auto add_dist = [&](CLI::App* sub, const char* name, auto& slot) {
        sub->add_option(name, slot,
                        "distribution spec, e.g. exponential:1 or erlang:2,2");
    };

    auto* root = app.add_subcommand("root", "least positive fixed-point root");
    add_dist(root, "--dist", c.dist);
    root->add_option("--mu", c.mu, "service rate");
    root->add_option("--batch", c.batch, "departure group size C");

    auto* bounds = app.add_subcommand("bounds", "class-extremal root bounds");
    bounds->add_option("--g1", c.g1, "class mean");
    bounds->add_option("--g2", c.g2, "class second raw moment");
    bounds->add_option("--mu", c.mu, "service rate");
    bounds->add_option("--batch", c.batch, "departure group size C");
    bounds->add_option("--pk", c.pk, "thinning probability");
    bounds->add_option("--epsilon", c.epsilon, "uniform-metric distance");
    bounds->add_option("--root-star", c.root_star, "reference root");

    auto* gim1n = app.add_subcommand("gim1n", "single-queue loss and envelope");
    add_dist(gim1n, "--dist", c.dist);
    gim1n->add_option("--mu", c.mu, "service rate");
    gim1n->add_option("--n", c.n, "total capacity");
    gim1n->add_option("--g2", c.g2, "class second moment (default: from dist)");
    gim1n->add_option("--epsilon", c.epsilon, "distance to the reference");
    gim1n->add_option("--root-star", c.root_star, "reference root");

    auto* buffer = app.add_subcommand("buffer", "batch buffer loss and envelope");
    buffer->add_option("--lambda", c.lambda, "batch arrival rate");
    add_dist(buffer, "--service", c.service);
    buffer->add_option("--N", c.capacity_units, "buffer capacity in units");
    buffer->add_option("--c", c.mean_batch, "mean batch size");
    buffer->add_option("--nu-lower", c.nu_lower, "batch-size support lower bound");
    buffer->add_option("--nu-upper", c.nu_upper, "batch-size support upper bound");
    buffer->add_option("--p", c.error_prob, "transmission-error probability");
    buffer->add_option("--g2", c.g2, "service class second moment");
    buffer->add_option("--epsilon", c.epsilon, "distance to the reference");
    buffer->add_option("--root-star", c.root_star, "reference root");

    auto* priority = app.add_subcommand("priority", "typed buffers loss and envelope");
    priority->add_option("--lambda", c.lambda, "total arrival rate");
    add_dist(priority, "--dist", c.dist);
    priority->add_option("--type-probs", c.type_probs, "type probabilities")
        ->delimiter(',');
    priority->add_option("--C", c.group, "departure group size");
    priority->add_option("--mu", c.mu, "departure epoch rate");
    priority->add_option("--capacities", c.capacities, "per-type buffer sizes")
        ->delimiter(',');
    priority->add_option("--k", c.k, "type index (default: all types)");
    priority->add_option("--g2", c.g2, "gap-law class second moment");
    priority->add_option("--epsilon", c.epsilon, "distance to the reference");

    auto* continuity =
        app.add_subcommand("continuity", "near-memoryless loss envelope");
    continuity->add_option("--lambda", c.lambda, "arrival rate");
    continuity->add_option("--mu", c.mu, "service rate");
    continuity->add_option("--n", c.n, "total capacity");
    continuity->add_option("--p", c.weight, "mixture weight of the perturbation");
    continuity->add_option("--epsilon", c.epsilon, "memorylessness defect");
    continuity->add_option("--sigma2", c.sigma2, "variance parameter");
    continuity->add_option("--condition", c.condition, "A or B");

    auto* simulate = app.add_subcommand("simulate", "discrete-event estimates");
    simulate->add_option("--model", c.model, "gim1n, buffer or priority");
    simulate->add_option("--events", c.events,
                         "arrivals/batches/departures to simulate");
    simulate->add_option("--seed", c.seed, "rng seed");
    simulate->add_option("--stream", c.stream, "rng stream label");
    simulate->add_option("--replications", c.replications,
                         "independent replications to merge");
    add_dist(simulate, "--dist", c.dist);
    simulate->add_option("--mu", c.mu, "service/departure rate");
    simulate->add_option("--n", c.n, "capacity");
    simulate->add_option("--lambda", c.lambda, "arrival rate");
    add_dist(simulate, "--service", c.service);
    simulate->add_option("--N", c.capacity_units, "buffer capacity in units");
    simulate->add_option("--c", c.mean_batch, "mean batch size");
    simulate->add_option("--nu-lower", c.nu_lower, "batch support lower bound");
    simulate->add_option("--nu-upper", c.nu_upper, "batch support upper bound");
    simulate->add_option("--p", c.error_prob, "error probability");
    simulate->add_option("--type-probs", c.type_probs, "type probabilities")
        ->delimiter(',');
    simulate->add_option("--C", c.group, "departure group size");
    simulate->add_option("--capacities", c.capacities, "per-type buffer sizes")
        ->delimiter(',');

    auto* kdist = app.add_subcommand("kdist", "empirical distance to a reference");
    kdist->add_option("--samples", c.samples, "newline-delimited sample file");
    add_dist(kdist, "--ref", c.ref);
    kdist->add_option("--coverage", c.coverage, "confidence band coverage");

    // Global options (--config, --output, conventions) may appear after the
    // subcommand name.
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json cfg = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("malformed JSON config: ") + e.what());
            }
            if (!cfg.is_object()) throw ConfigError("config root must be an object");
        }
        const std::string name = app.get_subcommands().front()->get_name();
        return dispatch(name, c, cfg, conv, output_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
