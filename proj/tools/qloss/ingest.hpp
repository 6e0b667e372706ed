#pragma once

#include <string>
#include <vector>

namespace qloss::cli {

/// Reads newline-delimited positive decimals. Nonpositive or malformed
/// entries are rejected with their line number; the result is sorted
/// ascending.
std::vector<double> ingest_samples(const std::string& path);

}  // namespace qloss::cli
