#ifndef MATHREPRO_ENV_MANIFEST_HPP
#define MATHREPRO_ENV_MANIFEST_HPP

#include <map>
#include <string>
#include <vector>

namespace mathrepro::env {

/// Project.toml: the direct dependencies of a project plus optional
/// compatibility bounds, and (for packages) the package's own identity.
struct ProjectFile {
    std::string name;
    std::string uuid;
    std::string version;
    std::map<std::string, std::string> deps;    // name -> uuid
    std::map<std::string, std::string> compat;  // name -> version bound
};

/// One pinned package inside Manifest.toml.
struct DependencySpec {
    std::string name;
    std::string uuid;
    std::string version;
    std::string tree_hash;  // empty = absent

    bool operator==(const DependencySpec&) const = default;
};

/// Manifest.toml: every direct and transitive dependency with its exact
/// version and content hash, sorted by name.
struct ManifestFile {
    std::vector<DependencySpec> deps;

    bool operator==(const ManifestFile&) const = default;
};

/// A verify_manifest finding.
struct Discrepancy {
    enum class Kind {
        Missing,         // package absent from the registry
        VersionChanged,  // pinned version gone, other versions present
        ContentChanged,  // tree hash differs
    };
    Kind kind;
    std::string name;
    std::string detail;
};

std::string to_string(Discrepancy::Kind kind);

/// TOML round-trips. Readers throw Error(IoError) or Error(ParseError);
/// writers throw Error(IoError). Writing is deterministic (sorted keys).
ProjectFile read_project_file(const std::string& path);
void write_project_file(const std::string& path, const ProjectFile& project);
ManifestFile read_manifest_file(const std::string& path);
void write_manifest_file(const std::string& path,
                         const ManifestFile& manifest);

/// Pins every transitive dependency of `project` against a local registry
/// laid out as <registry>/<name>/<version>/ with a Project.toml in each
/// version directory. Versions are chosen as the maximum satisfying every
/// collected compat bound — a deliberately simple resolver with no
/// backtracking; conflicts are errors, not search. tree_hash is computed
/// over each pinned package directory. Deterministic: same project and
/// registry give a byte-identical manifest.
/// Throws Error(UnresolvableDependency) naming the package and bounds.
ManifestFile write_manifest(const ProjectFile& project,
                            const std::string& registry_dir);

/// Diffs a recorded manifest against the live registry: empty iff every
/// entry's version directory still exists with a matching tree hash.
std::vector<Discrepancy> verify_manifest(const ManifestFile& manifest,
                                         const std::string& registry_dir);

}  // namespace mathrepro::env

#endif
