#include "mathrepro/runner/extract.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mathrepro/error.hpp"

namespace mathrepro::runner {

namespace {

constexpr std::string_view kPrompt = ">> ";

struct Line {
    std::size_t begin = 0;  // offset of first byte
    std::size_t end = 0;    // offset one past the line's content, before '\n'
    std::size_t next = 0;   // offset of the following line (skips the '\n')
    std::string_view text;  // content without newline
};

std::vector<Line> split_lines(const std::string& doc) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos < doc.size()) {
        std::size_t nl = doc.find('\n', pos);
        Line line;
        line.begin = pos;
        if (nl == std::string::npos) {
            line.end = doc.size();
            line.next = doc.size();
        } else {
            line.end = nl;
            line.next = nl + 1;
        }
        line.text = std::string_view(doc).substr(line.begin, line.end - line.begin);
        lines.push_back(line);
        pos = line.next;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

/// Parses the info string after ``` on a fence line. Returns true when the
/// fence opens a repl block; `label` receives the block label. A fence whose
/// info string is anything other than `repl label=<name>` (with optional
/// surrounding whitespace) and does not start with the word `repl` is an
/// ordinary code fence.
bool parse_repl_fence(std::string_view info, std::size_t line_no, std::string* label) {
    info = trim(info);
    if (info != "repl" && !starts_with(info, "repl ") && !starts_with(info, "repl\t")) {
        return false;  // some other language fence
    }
    std::string_view rest = trim(info.substr(4));
    if (!starts_with(rest, "label=")) {
        throw Error(ErrorKind::MissingLabel,
                    "repl block at line " + std::to_string(line_no) +
                        " is missing label=<name>");
    }
    std::string_view name = trim(rest.substr(6));
    if (name.empty() || name.find_first_of(" \t") != std::string_view::npos) {
        throw Error(ErrorKind::MissingLabel,
                    "repl block at line " + std::to_string(line_no) +
                        " has a malformed label");
    }
    *label = std::string(name);
    return true;
}

/// Parses `\begin{repltest}{<name>}`. Returns true when the line opens a
/// repltest environment.
bool parse_repltest_begin(std::string_view line, std::size_t line_no, std::string* label) {
    std::string_view t = trim(line);
    constexpr std::string_view kBegin = "\\begin{repltest}";
    if (!starts_with(t, kBegin)) return false;
    std::string_view rest = t.substr(kBegin.size());
    if (rest.empty() || rest.front() != '{') {
        throw Error(ErrorKind::MissingLabel,
                    "repltest environment at line " + std::to_string(line_no) +
                        " is missing its {<name>} argument");
    }
    std::size_t close = rest.find('}');
    if (close == std::string_view::npos || trim(rest.substr(close + 1)) != "") {
        throw Error(ErrorKind::MissingLabel,
                    "repltest environment at line " + std::to_string(line_no) +
                        " has a malformed {<name>} argument");
    }
    std::string_view name = trim(rest.substr(1, close - 1));
    if (name.empty()) {
        throw Error(ErrorKind::MissingLabel,
                    "repltest environment at line " + std::to_string(line_no) +
                        " has an empty label");
    }
    *label = std::string(name);
    return true;
}

}  // namespace

std::vector<DoctestBlock> extract_blocks(const std::string& document) {
    const std::vector<Line> lines = split_lines(document);
    std::vector<DoctestBlock> blocks;

    enum class State { Outside, PlainFence, ReplFence, ReplTest };
    State state = State::Outside;

    DoctestBlock current;
    bool entry_open = false;
    DoctestEntry entry;

    auto close_entry = [&](std::size_t at) {
        if (!entry_open) return;
        entry.output_end = at;
        current.entries.push_back(entry);
        entry = DoctestEntry{};
        entry_open = false;
    };
    auto finish_block = [&](const Line& closing) {
        close_entry(closing.begin);
        current.end = closing.next;
        blocks.push_back(current);
        current = DoctestBlock{};
        state = State::Outside;
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::size_t line_no = i + 1;
        switch (state) {
            case State::Outside: {
                if (starts_with(line.text, "```")) {
                    std::string label;
                    if (parse_repl_fence(line.text.substr(3), line_no, &label)) {
                        current.label = label;
                        current.begin = line.begin;
                        current.opening_line = line_no;
                        state = State::ReplFence;
                    } else {
                        state = State::PlainFence;
                    }
                } else {
                    std::string label;
                    if (parse_repltest_begin(line.text, line_no, &label)) {
                        current.label = label;
                        current.begin = line.begin;
                        current.opening_line = line_no;
                        state = State::ReplTest;
                    }
                }
                break;
            }
            case State::PlainFence: {
                if (starts_with(line.text, "```")) state = State::Outside;
                break;
            }
            case State::ReplFence:
            case State::ReplTest: {
                const bool closes =
                    state == State::ReplFence
                        ? trim(line.text) == "```"
                        : trim(line.text) == "\\end{repltest}";
                if (closes) {
                    finish_block(line);
                    break;
                }
                if (starts_with(line.text, kPrompt)) {
                    close_entry(line.begin);
                    entry_open = true;
                    entry.input = std::string(line.text.substr(kPrompt.size()));
                    entry.output_begin = line.next;
                    entry.output_end = line.next;
                } else if (entry_open) {
                    entry.expected.emplace_back(line.text);
                }
                // Text before the first prompt of a block is left alone: it is
                // neither input nor expected output.
                break;
            }
        }
    }

    if (state == State::ReplFence || state == State::ReplTest) {
        throw Error(ErrorKind::UnterminatedBlock,
                    "block '" + current.label + "' opened at line " +
                        std::to_string(current.opening_line) + " is never closed");
    }
    return blocks;
}

}  // namespace mathrepro::runner
