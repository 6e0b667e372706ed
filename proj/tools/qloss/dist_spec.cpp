#include "qloss/dist_spec.hpp"

#include <sstream>
#include <vector>

#include "qloss/errors.hpp"
#include "qloss/ingest.hpp"

namespace qloss::cli {

namespace {

std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("could not parse number '" + item + "' in " + what);
        }
    }
    if (out.empty()) throw ConfigError("no numbers given in " + what);
    return out;
}

}  // namespace

Distribution parse_dist_string(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("distribution spec '" + spec + "' is missing ':'");
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);

    if (kind == "exponential") {
        const auto v = parse_numbers(args, "exponential spec");
        if (v.size() != 1) throw ConfigError("exponential takes one rate");
        return Distribution::exponential(v[0]);
    }
    if (kind == "deterministic") {
        const auto v = parse_numbers(args, "deterministic spec");
        if (v.size() != 1) throw ConfigError("deterministic takes one value");
        return Distribution::deterministic(v[0]);
    }
    if (kind == "erlang") {
        const auto v = parse_numbers(args, "erlang spec");
        if (v.size() != 2) throw ConfigError("erlang takes shape,rate");
        return Distribution::erlang(static_cast<int>(v[0]), v[1]);
    }
    if (kind == "hyperexp") {
        const auto semi = args.find(';');
        if (semi == std::string::npos)
            throw ConfigError("hyperexp takes weights;rates");
        return Distribution::hyperexponential(
            parse_numbers(args.substr(0, semi), "hyperexp weights"),
            parse_numbers(args.substr(semi + 1), "hyperexp rates"));
    }
    if (kind == "twopoint") {
        const auto v = parse_numbers(args, "twopoint spec");
        if (v.size() != 2) throw ConfigError("twopoint takes g1,g2");
        return Distribution::two_point_gmax(v[0], v[1]);
    }
    if (kind == "empirical") {
        return Distribution::empirical(ingest_samples(args));
    }
    throw ConfigError("unknown distribution kind '" + kind + "'");
}

Distribution parse_dist_json(const nlohmann::json& spec) {
    if (spec.is_string()) return parse_dist_string(spec.get<std::string>());
    if (!spec.is_object())
        throw ConfigError("distribution spec must be a string or an object");
    if (!spec.contains("kind"))
        throw ConfigError("distribution object is missing 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();

    const auto num = [&spec](const char* key) {
        if (!spec.contains(key) || !spec.at(key).is_number())
            throw ConfigError(std::string("distribution field '") + key +
                              "' missing or not a number");
        return spec.at(key).get<double>();
    };

    if (kind == "exponential") return Distribution::exponential(num("rate"));
    if (kind == "deterministic") return Distribution::deterministic(num("value"));
    if (kind == "erlang")
        return Distribution::erlang(static_cast<int>(num("shape")), num("rate"));
    if (kind == "hyperexp") {
        if (!spec.contains("weights") || !spec.contains("rates"))
            throw ConfigError("hyperexp object needs 'weights' and 'rates'");
        return Distribution::hyperexponential(
            spec.at("weights").get<std::vector<double>>(),
            spec.at("rates").get<std::vector<double>>());
    }
    if (kind == "twopoint") return Distribution::two_point_gmax(num("g1"), num("g2"));
    if (kind == "empirical") {
        if (spec.contains("samples"))
            return Distribution::empirical(spec.at("samples").get<std::vector<double>>());
        if (spec.contains("path"))
            return Distribution::empirical(ingest_samples(spec.at("path").get<std::string>()));
        throw ConfigError("empirical object needs 'samples' or 'path'");
    }
    if (kind == "mixture") {
        if (!spec.contains("left") || !spec.contains("right"))
            throw ConfigError("mixture object needs 'left' and 'right'");
        return Distribution::mixture(num("p"), parse_dist_json(spec.at("left")),
                                     parse_dist_json(spec.at("right")));
    }
    throw ConfigError("unknown distribution kind '" + kind + "'");
}

}  // namespace qloss::cli
