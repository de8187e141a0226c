#ifndef MATHREPRO_ENV_TREE_HASH_HPP
#define MATHREPRO_ENV_TREE_HASH_HPP

#include <string>

namespace mathrepro::env {

/// Deterministic content hash of a directory tree (git-inspired, SHA-256,
/// no mode bits):
///
///   file hash      = SHA-256("blob\n" + contents)
///   directory hash = SHA-256 of the concatenation of lines
///                    "<entry-hash-hex> <name>\n", entries sorted by name
///
/// Symlinks and (recursively) empty directories are excluded, so the digest
/// depends on names and file contents only — never on timestamps, modes, or
/// listing order. An empty root hashes to SHA-256 of the empty string:
/// e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855.
///
/// Throws Error(IoError) naming the offending path.
std::string tree_hash(const std::string& dir_path);

}  // namespace mathrepro::env

#endif
