#ifndef MATHREPRO_ENV_SEMVER_HPP
#define MATHREPRO_ENV_SEMVER_HPP

#include <compare>
#include <string>
#include <vector>

namespace mathrepro::env {

/// major.minor.patch version. Parsing accepts one to three dot-separated
/// components and zero-fills the rest ("1.2" reads as 1.2.0).
struct SemVer {
    unsigned long major = 0;
    unsigned long minor = 0;
    unsigned long patch = 0;

    /// Throws Error(ParseError) on anything else.
    static SemVer parse(const std::string& text);

    std::string to_string() const;

    auto operator<=>(const SemVer&) const = default;
};

/// Conjunction of simple comparisons against versions, written as a
/// comma-separated list: ">=1.0, <1.1". Operators: >=, >, <=, <, =; a bare
/// version means exact equality. An empty bound admits every version.
struct VersionBound {
    enum class Op { Eq, Ge, Gt, Le, Lt };
    struct Constraint {
        Op op;
        SemVer version;
    };

    std::vector<Constraint> constraints;

    /// Throws Error(ParseError) with the offending piece.
    static VersionBound parse(const std::string& text);

    bool admits(const SemVer& v) const;
    std::string to_string() const;
};

}  // namespace mathrepro::env

#endif
