#include "qloss/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qloss/errors.hpp"

namespace qloss::cli {

std::vector<double> ingest_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open samples file '" + path + "'");

    std::vector<double> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Trim whitespace; skip blank lines.
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);

        double value = 0.0;
        std::size_t used = 0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            std::ostringstream os;
            os << path << " line " << lineno << ": cannot parse '" << token << "'";
            throw ConfigError(os.str());
        }
        if (!(value > 0.0)) {
            std::ostringstream os;
            os << path << " line " << lineno << ": nonpositive sample " << token;
            throw ConfigError(os.str());
        }
        samples.push_back(value);
    }
    if (in.bad()) throw ConfigError("i/o failure while reading '" + path + "'");
    if (samples.empty()) throw ConfigError("samples file '" + path + "' is empty");
    std::sort(samples.begin(), samples.end());
    return samples;
}

}  // namespace qloss::cli
