#include "mathrepro/env/versioninfo.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include <sys/utsname.h>
#include <unistd.h>

#include "mathrepro/error.hpp"

#ifndef MATHREPRO_VERSION
#define MATHREPRO_VERSION "0.0.0"
#endif
#ifndef MATHREPRO_BUILD_ID
#define MATHREPRO_BUILD_ID "unknown"
#endif

namespace mathrepro::env {

namespace {

constexpr const char* kUnknown = "unknown";

std::string probe_cpu_model() {
    std::ifstream in("/proc/cpuinfo");
    if (!in) return kUnknown;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        const std::string key = line.substr(0, line.find_first_of(":\t"));
        if (key.rfind("model name", 0) == 0) {
            std::size_t start = colon + 1;
            while (start < line.size() &&
                   (line[start] == ' ' || line[start] == '\t')) {
                ++start;
            }
            const std::string model = line.substr(start);
            return model.empty() ? kUnknown : model;
        }
    }
    return kUnknown;
}

std::string probe_memory_total() {
    const long pages = sysconf(_SC_PHYS_PAGES);
    const long page_size = sysconf(_SC_PAGE_SIZE);
    if (pages <= 0 || page_size <= 0) return kUnknown;
    return std::to_string(static_cast<unsigned long long>(pages) *
                          static_cast<unsigned long long>(page_size));
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    if (gmtime_r(&now, &tm) == nullptr) return kUnknown;
    char buf[32];
    if (std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm) == 0) {
        return kUnknown;
    }
    return buf;
}

}  // namespace

EnvironmentReport collect_versioninfo(Verbosity verbosity,
                                      const std::string& manifest_path) {
    EnvironmentReport r;
    r.tool_version = MATHREPRO_VERSION;
    r.build_id = MATHREPRO_BUILD_ID;

    utsname un{};
    if (uname(&un) == 0) {
        r.os_kernel = un.sysname[0] ? un.sysname : kUnknown;
        r.os_version = un.release[0] ? un.release : kUnknown;
        r.os_arch = un.machine[0] ? un.machine : kUnknown;
    } else {
        r.os_kernel = r.os_version = r.os_arch = kUnknown;
    }

    r.cpu_model = probe_cpu_model();
    const unsigned cores = std::thread::hardware_concurrency();
    r.cpu_cores = cores == 0 ? kUnknown : std::to_string(cores);
    r.timestamp = utc_timestamp();

    if (verbosity == Verbosity::Full) {
        r.memory_total = probe_memory_total();
        std::string path = manifest_path;
        if (path.empty() &&
            std::filesystem::exists("Manifest.toml")) {
            path = "Manifest.toml";
        }
        if (!path.empty()) {
            try {
                r.dependencies = read_manifest_file(path).deps;
            } catch (const Error&) {
                r.dependencies.clear();  // degrade, never fabricate
            }
        }
    }
    return r;
}

std::vector<std::string> format_report(const EnvironmentReport& report) {
    std::vector<std::string> lines;
    lines.push_back("tool: mathrepro " + report.tool_version);
    lines.push_back("build id: " + report.build_id);
    lines.push_back("os: " + report.os_kernel + " " + report.os_version +
                    " " + report.os_arch);
    std::string cpu = "cpu: " + report.cpu_model;
    if (report.cpu_cores != kUnknown) {
        cpu += " (" + report.cpu_cores + " cores)";
    }
    lines.push_back(std::move(cpu));
    if (!report.memory_total.empty()) {
        lines.push_back("memory: " + report.memory_total +
                        (report.memory_total == kUnknown ? "" : " bytes"));
        lines.push_back("dependencies (" +
                        std::to_string(report.dependencies.size()) + "):");
        for (const DependencySpec& d : report.dependencies) {
            std::string line = "  " + d.name + " " + d.version;
            if (!d.uuid.empty()) line += " [" + d.uuid + "]";
            if (!d.tree_hash.empty()) line += " tree:" + d.tree_hash;
            lines.push_back(std::move(line));
        }
    }
    lines.push_back("timestamp: " + report.timestamp);
    return lines;
}

}  // namespace mathrepro::env
