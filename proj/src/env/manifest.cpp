#include "mathrepro/env/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mathrepro/env/semver.hpp"
#include "mathrepro/env/toml.hpp"
#include "mathrepro/env/tree_hash.hpp"
#include "mathrepro/error.hpp"

namespace mathrepro::env {

namespace fs = std::filesystem;

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "cannot read file: " + path);
    }
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write file: " + path);
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write file: " + path);
    }
}

struct Candidate {
    SemVer version;
    std::string dirname;

    bool operator<(const Candidate& rhs) const {
        if (version != rhs.version) return version < rhs.version;
        return dirname < rhs.dirname;
    }
};

/// Version directories of a package, ascending; unparseable names skipped.
std::vector<Candidate> list_versions(const std::string& registry,
                                     const std::string& name) {
    std::vector<Candidate> out;
    const fs::path dir = fs::path(registry) / name;
    std::error_code ec;
    if (!fs::is_directory(dir, ec) || ec) return out;
    for (fs::directory_iterator it(dir, ec), end; it != end;
         it.increment(ec)) {
        if (ec) break;
        if (!it->is_directory()) continue;
        const std::string dirname = it->path().filename().string();
        try {
            out.push_back({SemVer::parse(dirname), dirname});
        } catch (const Error&) {
            // not a version directory
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Resolved {
    std::string dirname;
    ProjectFile project;
};

[[noreturn]] void unresolvable(const std::string& message) {
    throw Error(ErrorKind::UnresolvableDependency, message);
}

Resolved load_package(const std::string& registry, const std::string& name,
                      const std::string& dirname) {
    const fs::path dir = fs::path(registry) / name / dirname;
    const std::string project_path = (dir / "Project.toml").string();
    ProjectFile proj;
    try {
        proj = read_project_file(project_path);
    } catch (const Error& e) {
        unresolvable("registry package '" + name + "' at version " + dirname +
                     " is unreadable: " + e.what());
    }
    if (!proj.name.empty() && proj.name != name) {
        unresolvable("registry package directory '" + name +
                     "' contains a project named '" + proj.name + "'");
    }
    if (!proj.version.empty() &&
        SemVer::parse(proj.version) != SemVer::parse(dirname)) {
        unresolvable("registry package '" + name + "' directory " + dirname +
                     " declares version " + proj.version);
    }
    return {dirname, std::move(proj)};
}

}  // namespace

std::string to_string(Discrepancy::Kind kind) {
    switch (kind) {
        case Discrepancy::Kind::Missing: return "missing";
        case Discrepancy::Kind::VersionChanged: return "version-changed";
        case Discrepancy::Kind::ContentChanged: return "content-changed";
    }
    return "unknown";
}

ProjectFile read_project_file(const std::string& path) {
    const TomlDoc doc = toml_parse(read_text_file(path));
    ProjectFile p;
    p.name = doc.get("", "name");
    p.uuid = doc.get("", "uuid");
    p.version = doc.get("", "version");
    auto deps = doc.tables.find("deps");
    if (deps != doc.tables.end()) p.deps = deps->second;
    auto compat = doc.tables.find("compat");
    if (compat != doc.tables.end()) p.compat = compat->second;
    return p;
}

void write_project_file(const std::string& path, const ProjectFile& project) {
    TomlDoc doc;
    if (!project.name.empty()) doc.set("", "name", project.name);
    if (!project.uuid.empty()) doc.set("", "uuid", project.uuid);
    if (!project.version.empty()) doc.set("", "version", project.version);
    for (const auto& [name, uuid] : project.deps) doc.set("deps", name, uuid);
    for (const auto& [name, bound] : project.compat) {
        doc.set("compat", name, bound);
    }
    write_text_file(path, toml_write(doc));
}

ManifestFile read_manifest_file(const std::string& path) {
    const TomlDoc doc = toml_parse(read_text_file(path));
    if (doc.get("", "format") != "1") {
        throw Error(ErrorKind::ParseError,
                    "unsupported manifest format in " + path);
    }
    ManifestFile m;
    for (const auto& [table, kv] : doc.tables) {
        if (table.rfind("deps.", 0) != 0) continue;
        const std::string name = table.substr(5);
        if (name.empty() || name.find('.') != std::string::npos) {
            throw Error(ErrorKind::ParseError,
                        "malformed manifest table '" + table + "'");
        }
        DependencySpec d;
        d.name = name;
        auto uuid = kv.find("uuid");
        if (uuid != kv.end()) d.uuid = uuid->second;
        auto version = kv.find("version");
        if (version == kv.end()) {
            throw Error(ErrorKind::ParseError,
                        "manifest entry '" + name + "' lacks a version");
        }
        d.version = version->second;
        SemVer::parse(d.version);  // must parse; throws ParseError
        auto th = kv.find("tree_hash");
        if (th != kv.end()) d.tree_hash = th->second;
        m.deps.push_back(std::move(d));
    }
    return m;  // map iteration already sorted by name
}

void write_manifest_file(const std::string& path,
                         const ManifestFile& manifest) {
    TomlDoc doc;
    doc.set("", "format", "1");
    for (const DependencySpec& d : manifest.deps) {
        const std::string table = "deps." + d.name;
        if (!d.uuid.empty()) doc.set(table, "uuid", d.uuid);
        doc.set(table, "version", d.version);
        if (!d.tree_hash.empty()) doc.set(table, "tree_hash", d.tree_hash);
    }
    write_text_file(path, toml_write(doc));
}

ManifestFile write_manifest(const ProjectFile& project,
                            const std::string& registry_dir) {
    std::map<std::string, Resolved> chosen;
    const std::string root_name =
        project.name.empty() ? "(project)" : project.name;

    for (int iteration = 0;; ++iteration) {
        if (iteration >= 100) {
            unresolvable("dependency resolution did not converge");
        }
        // Active projects this round: the root plus everything chosen so
        // far. Requirements and bounds are recomputed from scratch, so a
        // package dropped from the chosen set also drops its bounds.
        std::set<std::string> required;
        std::map<std::string, std::vector<std::pair<std::string, std::string>>>
            bounds;  // name -> (bound text, source)
        auto absorb = [&](const ProjectFile& p, const std::string& src) {
            for (const auto& [n, uuid] : p.deps) {
                (void)uuid;
                required.insert(n);
            }
            for (const auto& [n, b] : p.compat) bounds[n].push_back({b, src});
        };
        absorb(project, root_name);
        for (const auto& [name, r] : chosen) absorb(r.project, name);

        std::map<std::string, Resolved> next;
        for (const std::string& name : required) {
            const std::vector<Candidate> candidates =
                list_versions(registry_dir, name);
            if (candidates.empty()) {
                unresolvable("package '" + name +
                             "' not found in registry " + registry_dir);
            }
            std::vector<std::pair<VersionBound, std::string>> parsed;
            for (const auto& [text, src] : bounds[name]) {
                parsed.emplace_back(VersionBound::parse(text), src);
            }
            const Candidate* pick = nullptr;
            for (auto it = candidates.rbegin(); it != candidates.rend();
                 ++it) {
                const bool ok = std::all_of(
                    parsed.begin(), parsed.end(), [&](const auto& pb) {
                        return pb.first.admits(it->version);
                    });
                if (ok) {
                    pick = &*it;
                    break;
                }
            }
            if (pick == nullptr) {
                std::string detail;
                for (const auto& [text, src] : bounds[name]) {
                    if (!detail.empty()) detail += "; ";
                    detail += src + " requires " + text;
                }
                unresolvable("no version of '" + name + "' satisfies " +
                             (detail.empty() ? "the collected bounds"
                                             : detail));
            }
            auto prev = chosen.find(name);
            if (prev != chosen.end() && prev->second.dirname == pick->dirname) {
                next.emplace(name, prev->second);
            } else {
                next.emplace(name,
                             load_package(registry_dir, name, pick->dirname));
            }
        }

        bool stable = next.size() == chosen.size();
        if (stable) {
            for (const auto& [name, r] : next) {
                auto it = chosen.find(name);
                if (it == chosen.end() || it->second.dirname != r.dirname) {
                    stable = false;
                    break;
                }
            }
        }
        chosen = std::move(next);
        if (stable) break;
    }

    // Declared dependency UUIDs must agree with the registry's packages.
    auto check_declared = [&](const ProjectFile& p, const std::string& src) {
        for (const auto& [depname, declared] : p.deps) {
            if (declared.empty()) continue;
            auto it = chosen.find(depname);
            if (it == chosen.end()) continue;
            const std::string& actual = it->second.project.uuid;
            if (!actual.empty() && actual != declared) {
                unresolvable("dependency '" + depname + "' declared by " +
                             src + " with uuid " + declared +
                             " but the registry package has uuid " + actual);
            }
        }
    };
    check_declared(project, root_name);
    for (const auto& [name, r] : chosen) check_declared(r.project, name);

    ManifestFile manifest;
    for (const auto& [name, r] : chosen) {
        DependencySpec d;
        d.name = name;
        d.uuid = r.project.uuid;
        d.version = r.dirname;
        d.tree_hash = tree_hash(
            (fs::path(registry_dir) / name / r.dirname).string());
        manifest.deps.push_back(std::move(d));
    }
    return manifest;
}

std::vector<Discrepancy> verify_manifest(const ManifestFile& manifest,
                                         const std::string& registry_dir) {
    std::vector<Discrepancy> out;
    for (const DependencySpec& d : manifest.deps) {
        const fs::path pkg_dir = fs::path(registry_dir) / d.name;
        std::error_code ec;
        if (!fs::is_directory(pkg_dir, ec) || ec) {
            out.push_back({Discrepancy::Kind::Missing, d.name,
                           "package directory not found"});
            continue;
        }
        const fs::path ver_dir = pkg_dir / d.version;
        if (!fs::is_directory(ver_dir, ec) || ec) {
            std::vector<std::string> others;
            for (const Candidate& c : list_versions(registry_dir, d.name)) {
                others.push_back(c.dirname);
            }
            if (others.empty()) {
                out.push_back({Discrepancy::Kind::Missing, d.name,
                               "no versions present"});
            } else {
                std::string avail;
                for (const std::string& o : others) {
                    if (!avail.empty()) avail += ", ";
                    avail += o;
                }
                out.push_back({Discrepancy::Kind::VersionChanged, d.name,
                               "pinned " + d.version +
                                   " absent; available: " + avail});
            }
            continue;
        }
        if (d.tree_hash.empty()) continue;
        std::string actual;
        try {
            actual = tree_hash(ver_dir.string());
        } catch (const Error& e) {
            out.push_back({Discrepancy::Kind::ContentChanged, d.name,
                           std::string("unreadable: ") + e.what()});
            continue;
        }
        if (actual != d.tree_hash) {
            out.push_back({Discrepancy::Kind::ContentChanged, d.name,
                           "tree hash " + actual + " != recorded " +
                               d.tree_hash});
        }
    }
    return out;
}

}  // namespace mathrepro::env
