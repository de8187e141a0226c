#ifndef MATHREPRO_ENV_VERSIONINFO_HPP
#define MATHREPRO_ENV_VERSIONINFO_HPP

#include <string>
#include <vector>

#include "mathrepro/env/manifest.hpp"

namespace mathrepro::env {

/// Snapshot of the running environment. Any field that cannot be probed is
/// the literal string "unknown" — never fabricated.
struct EnvironmentReport {
    std::string tool_version;
    std::string build_id;
    std::string os_kernel;
    std::string os_version;
    std::string os_arch;
    std::string cpu_model;
    std::string cpu_cores;     // decimal count or "unknown"
    std::string memory_total;  // bytes as decimal or "unknown"; "" when brief
    std::vector<DependencySpec> dependencies;  // sorted by name; empty when brief
    std::string timestamp;  // UTC ISO-8601, second precision
};

enum class Verbosity { Brief, Full };

/// Probes the environment. Brief omits dependencies and memory. Full reads
/// dependencies from `manifest_path` (default "Manifest.toml" when present;
/// absent or unreadable manifests degrade to an empty list).
EnvironmentReport collect_versioninfo(Verbosity verbosity,
                                      const std::string& manifest_path = "");

/// Deterministic printable rendering, one line per entry.
std::vector<std::string> format_report(const EnvironmentReport& report);

}  // namespace mathrepro::env

#endif
