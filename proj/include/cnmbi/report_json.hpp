#pragma once

#include "cnmbi/dataset.hpp"
#include "cnmbi/sweep.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace cnmbi {

// FNV-1a, 64-bit. Used to fingerprint input files in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path); // throws Error on I/O failure
std::string hex64(std::uint64_t value);

// Stable JSON document for one estimate run. Key order is fixed by the
// serializer, so identical reports dump to identical bytes. Wall-clock
// numbers live only under the top-level "timings" key.
nlohmann::ordered_json report_to_json(const SweepReport& report);

nlohmann::ordered_json trials_to_json(const Dataset& data,
                                      const SweepConfig& config,
                                      const TrialsResult& result);

// Two-column curve for plotting loss against k. Header "k,loss"; skipped
// candidates serialize their loss as "nan".
std::string curve_csv(const SweepReport& report);

// Per-point filter export: original_index, phi, neighbor_count, removed.
std::string boundary_csv(const BoundaryProfile& profile);

} // namespace cnmbi
