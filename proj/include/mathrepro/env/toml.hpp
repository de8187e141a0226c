#ifndef MATHREPRO_ENV_TOML_HPP
#define MATHREPRO_ENV_TOML_HPP

#include <map>
#include <string>

namespace mathrepro::env {

/// The subset of TOML the pinning files need: bare keys, quoted string
/// values, dotted table headers, and `#` comments. Tables are addressed by
/// their dotted path; "" is the root table.
struct TomlDoc {
    std::map<std::string, std::map<std::string, std::string>> tables;

    bool has(const std::string& table, const std::string& key) const;
    /// Value or "" when absent.
    std::string get(const std::string& table, const std::string& key) const;
    void set(const std::string& table, const std::string& key,
             std::string value);
};

/// Throws Error(ParseError) with the line number on anything outside the
/// subset (duplicate keys and tables included).
TomlDoc toml_parse(const std::string& text);

/// Deterministic emission: root key-values first, then tables sorted by
/// path, keys sorted inside each; empty tables are omitted.
std::string toml_write(const TomlDoc& doc);

}  // namespace mathrepro::env

#endif
