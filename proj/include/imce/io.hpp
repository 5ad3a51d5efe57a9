#pragma once

#include <cstdint>
#include <string>

#include "imce/interval.hpp"

namespace imce {

/// Reads a two-column lower,upper CSV; an optional header row is
/// auto-detected. Rows with lower > upper are rejected with their line number.
IntervalSample read_interval_csv(const std::string& path);

/// Writes a sample as a lower,upper CSV with round-trip precision.
void write_interval_csv(const std::string& path, const IntervalSample& s);

/// FNV-1a over the raw bytes of a file.
std::uint64_t fingerprint_file(const std::string& path);

}  // namespace imce
