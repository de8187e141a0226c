#include "mathrepro/env/semver.hpp"

#include "mathrepro/error.hpp"

namespace mathrepro::env {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_component(const std::string& s, unsigned long& out) {
    if (s.empty() || s.size() > 9) return false;
    if (s.size() > 1 && s[0] == '0') return false;
    unsigned long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned long>(c - '0');
    }
    out = v;
    return true;
}

}  // namespace

SemVer SemVer::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.empty() || parts.size() > 3) {
        throw Error(ErrorKind::ParseError, "invalid version '" + text + "'");
    }
    SemVer v;
    unsigned long* slots[3] = {&v.major, &v.minor, &v.patch};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!parse_component(parts[i], *slots[i])) {
            throw Error(ErrorKind::ParseError,
                        "invalid version '" + text + "'");
        }
    }
    return v;
}

std::string SemVer::to_string() const {
    return std::to_string(major) + "." + std::to_string(minor) + "." +
           std::to_string(patch);
}

VersionBound VersionBound::parse(const std::string& text) {
    VersionBound bound;
    std::vector<std::string> pieces;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            pieces.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    pieces.push_back(cur);
    for (const std::string& raw : pieces) {
        const std::string piece = trim(raw);
        if (piece.empty()) {
            if (pieces.size() == 1) break;  // empty bound: admits everything
            throw Error(ErrorKind::ParseError,
                        "invalid version bound '" + text + "'");
        }
        Op op = Op::Eq;
        std::size_t skip = 0;
        if (piece.rfind(">=", 0) == 0) {
            op = Op::Ge;
            skip = 2;
        } else if (piece.rfind("<=", 0) == 0) {
            op = Op::Le;
            skip = 2;
        } else if (piece[0] == '>') {
            op = Op::Gt;
            skip = 1;
        } else if (piece[0] == '<') {
            op = Op::Lt;
            skip = 1;
        } else if (piece[0] == '=') {
            op = Op::Eq;
            skip = 1;
        }
        bound.constraints.push_back(
            {op, SemVer::parse(trim(piece.substr(skip)))});
    }
    return bound;
}

bool VersionBound::admits(const SemVer& v) const {
    for (const Constraint& c : constraints) {
        switch (c.op) {
            case Op::Eq:
                if (!(v == c.version)) return false;
                break;
            case Op::Ge:
                if (!(v >= c.version)) return false;
                break;
            case Op::Gt:
                if (!(v > c.version)) return false;
                break;
            case Op::Le:
                if (!(v <= c.version)) return false;
                break;
            case Op::Lt:
                if (!(v < c.version)) return false;
                break;
        }
    }
    return true;
}

std::string VersionBound::to_string() const {
    std::string out;
    for (const Constraint& c : constraints) {
        if (!out.empty()) out += ", ";
        switch (c.op) {
            case Op::Eq: out += "="; break;
            case Op::Ge: out += ">="; break;
            case Op::Gt: out += ">"; break;
            case Op::Le: out += "<="; break;
            case Op::Lt: out += "<"; break;
        }
        out += c.version.to_string();
    }
    return out;
}

}  // namespace mathrepro::env
