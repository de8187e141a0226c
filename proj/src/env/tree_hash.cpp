#include "mathrepro/env/tree_hash.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "mathrepro/error.hpp"
#include "mathrepro/support/sha256.hpp"

namespace mathrepro::env {

namespace fs = std::filesystem;

namespace {

std::string hash_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read file: " + p.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "cannot read file: " + p.string());
    }
    return support::sha256_hex("blob\n" + buf.str());
}

/// Digest of a directory, or nullopt when everything inside is excluded
/// (the directory then vanishes from its parent's record too).
std::optional<std::string> hash_dir(const fs::path& p) {
    std::vector<std::pair<std::string, fs::path>> entries;
    std::error_code ec;
    for (fs::directory_iterator it(p, ec), end; it != end; it.increment(ec)) {
        if (ec) break;
        entries.emplace_back(it->path().filename().string(), it->path());
    }
    if (ec) {
        throw Error(ErrorKind::IoError,
                    "cannot list directory: " + p.string());
    }
    std::sort(entries.begin(), entries.end());

    std::string record;
    for (const auto& [name, path] : entries) {
        std::error_code sec;
        const fs::file_status st = fs::symlink_status(path, sec);
        if (sec) {
            throw Error(ErrorKind::IoError, "cannot stat: " + path.string());
        }
        if (fs::is_symlink(st)) continue;
        std::string digest;
        if (fs::is_directory(st)) {
            auto sub = hash_dir(path);
            if (!sub) continue;
            digest = *sub;
        } else if (fs::is_regular_file(st)) {
            digest = hash_file(path);
        } else {
            continue;  // sockets, fifos, devices
        }
        record += digest + " " + name + "\n";
    }
    if (record.empty()) return std::nullopt;
    return support::sha256_hex(record);
}

}  // namespace

std::string tree_hash(const std::string& dir_path) {
    const fs::path p(dir_path);
    std::error_code ec;
    if (!fs::is_directory(fs::symlink_status(p, ec)) || ec) {
        throw Error(ErrorKind::IoError, "not a directory: " + dir_path);
    }
    auto digest = hash_dir(p);
    return digest ? *digest : support::sha256_hex("");
}

}  // namespace mathrepro::env
