#include "mathrepro/env/toml.hpp"

#include <vector>

#include "mathrepro/error.hpp"

namespace mathrepro::env {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError,
                "TOML parse error at line " + std::to_string(line) + ": " +
                    what);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool is_bare_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
}

bool is_bare_key(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!is_bare_char(c)) return false;
    }
    return true;
}

bool is_table_path(const std::string& s) {
    if (s.empty()) return false;
    std::string seg;
    for (char c : s) {
        if (c == '.') {
            if (!is_bare_key(seg)) return false;
            seg.clear();
        } else {
            seg += c;
        }
    }
    return is_bare_key(seg);
}

/// Cuts a trailing comment, honoring quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

/// Parses the quoted string starting at s[0] == '"'. Returns the value and
/// the index just past the closing quote.
std::pair<std::string, std::size_t> parse_basic_string(const std::string& s,
                                                       std::size_t line) {
    std::string out;
    std::size_t i = 1;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '"') return {out, i + 1};
        if (c == '\\') {
            ++i;
            if (i >= s.size()) break;
            switch (s[i]) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                default: fail(line, "unsupported escape sequence");
            }
            ++i;
            continue;
        }
        out += c;
        ++i;
    }
    fail(line, "unterminated string");
}

std::string escape_basic_string(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

bool TomlDoc::has(const std::string& table, const std::string& key) const {
    auto t = tables.find(table);
    return t != tables.end() && t->second.count(key) > 0;
}

std::string TomlDoc::get(const std::string& table,
                         const std::string& key) const {
    auto t = tables.find(table);
    if (t == tables.end()) return "";
    auto k = t->second.find(key);
    return k == t->second.end() ? "" : k->second;
}

void TomlDoc::set(const std::string& table, const std::string& key,
                  std::string value) {
    tables[table][key] = std::move(value);
}

TomlDoc toml_parse(const std::string& text) {
    TomlDoc doc;
    std::string current;  // current table path; "" = root
    bool root_seen = false;
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    lines.push_back(cur);

    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        std::string line = lines[n];
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trim(strip_comment(line));
        if (line.empty()) continue;

        if (line[0] == '[') {
            if (line.back() != ']') fail(line_no, "malformed table header");
            const std::string path = trim(line.substr(1, line.size() - 2));
            if (!is_table_path(path)) {
                fail(line_no, "invalid table name '" + path + "'");
            }
            if (doc.tables.count(path)) {
                fail(line_no, "duplicate table '" + path + "'");
            }
            doc.tables[path];  // creates the (possibly empty) table
            current = path;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = \"value\"");
        const std::string key = trim(line.substr(0, eq));
        if (!is_bare_key(key)) fail(line_no, "invalid key '" + key + "'");
        const std::string rest = trim(line.substr(eq + 1));
        if (rest.empty() || rest[0] != '"') {
            fail(line_no, "only quoted string values are supported");
        }
        auto [value, end] = parse_basic_string(rest, line_no);
        if (!trim(rest.substr(end)).empty()) {
            fail(line_no, "unexpected text after value");
        }
        if (current.empty()) root_seen = true;
        (void)root_seen;
        if (doc.tables[current].count(key)) {
            fail(line_no, "duplicate key '" + key + "'");
        }
        doc.tables[current][key] = value;
    }
    return doc;
}

std::string toml_write(const TomlDoc& doc) {
    std::string out;
    auto write_table = [&out](const std::map<std::string, std::string>& kv) {
        for (const auto& [key, value] : kv) {
            out += key + " = \"" + escape_basic_string(value) + "\"\n";
        }
    };
    auto root = doc.tables.find("");
    if (root != doc.tables.end()) write_table(root->second);
    for (const auto& [path, kv] : doc.tables) {
        if (path.empty() || kv.empty()) continue;
        if (!out.empty()) out += "\n";
        out += "[" + path + "]\n";
        write_table(kv);
    }
    return out;
}

}  // namespace mathrepro::env
