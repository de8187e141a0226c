#include "mathrepro/runner/run.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mathrepro/error.hpp"
#include "mathrepro/runner/interp.hpp"
#include "mathrepro/support/sha256.hpp"

namespace mathrepro::runner {

namespace {

std::string strip_trailing(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.pop_back();
    }
    return s;
}

bool lines_match(const std::vector<std::string>& expected,
                 const std::vector<std::string>& actual) {
    if (expected.size() != actual.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (strip_trailing(expected[i]) != strip_trailing(actual[i])) return false;
    }
    return true;
}

/// Runs one block inside an already-prepared environment.
BlockResult run_one_block(const DoctestBlock& block, Environment& env) {
    BlockResult result;
    bool all_match = true;
    for (std::size_t e = 0; e < block.entries.size(); ++e) {
        const DoctestEntry& entry = block.entries[e];
        EvalResult out = eval_line(entry.input, env);
        const bool match = lines_match(entry.expected, out.lines);
        if (!match) {
            all_match = false;
            const std::size_t n = std::max(entry.expected.size(), out.lines.size());
            for (std::size_t i = 0; i < n; ++i) {
                std::string exp = i < entry.expected.size() ? entry.expected[i] : "";
                std::string act = i < out.lines.size() ? out.lines[i] : "";
                if (strip_trailing(exp) != strip_trailing(act)) {
                    result.diffs.push_back(LineDiff{e, i, exp, act});
                }
            }
            // An error the document did not expect poisons the block.
            if (out.error && result.error_message.empty()) {
                result.error_message = out.lines.empty() ? "error" : out.lines[0];
            }
        }
        result.actual.push_back(std::move(out.lines));
    }
    if (!result.error_message.empty()) {
        result.status = BlockResult::Status::Error;
    } else {
        result.status = all_match ? BlockResult::Status::Pass : BlockResult::Status::Fail;
    }
    return result;
}

/// Runs all blocks of one label, in document order, sharing one
/// environment. `indices` point into `blocks`.
std::vector<std::pair<std::size_t, BlockResult>> run_label(
    const std::vector<DoctestBlock>& blocks, const std::vector<std::size_t>& indices,
    const std::vector<std::string>& prelude) {
    std::vector<std::pair<std::size_t, BlockResult>> out;
    Environment env;
    std::string prelude_error;
    for (const std::string& stmt : prelude) {
        EvalResult r = eval_line(stmt, env);
        if (r.error) {
            prelude_error = "prelude failed: " + (r.lines.empty() ? "error" : r.lines[0]);
            break;
        }
    }
    for (std::size_t idx : indices) {
        if (!prelude_error.empty()) {
            BlockResult r;
            r.status = BlockResult::Status::Error;
            r.error_message = prelude_error;
            // Keep the document as-is under fix: pretend output matched.
            for (const auto& entry : blocks[idx].entries) r.actual.push_back(entry.expected);
            out.emplace_back(idx, std::move(r));
        } else {
            out.emplace_back(idx, run_one_block(blocks[idx], env));
        }
    }
    return out;
}

}  // namespace

RunReport run_blocks(const std::vector<DoctestBlock>& blocks,
                     const std::string& document,
                     const std::vector<std::string>& prelude) {
    const auto t0 = std::chrono::steady_clock::now();

    RunReport report;
    report.blocks = blocks;
    report.results.resize(blocks.size());
    report.document_sha256 = support::sha256_hex(document);

    // Group block indices by label, keeping document order within a label.
    std::vector<std::string> label_order;
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto [it, inserted] = by_label.try_emplace(blocks[i].label);
        if (inserted) label_order.push_back(blocks[i].label);
        it->second.push_back(i);
    }

    if (label_order.size() <= 1) {
        for (const auto& label : label_order) {
            for (auto& [idx, res] : run_label(blocks, by_label[label], prelude)) {
                report.results[idx] = std::move(res);
            }
        }
    } else {
        // Labels are isolated by construction, so they can run concurrently.
        std::vector<std::future<std::vector<std::pair<std::size_t, BlockResult>>>> futures;
        futures.reserve(label_order.size());
        for (const auto& label : label_order) {
            futures.push_back(std::async(std::launch::async, run_label,
                                         std::cref(blocks), std::cref(by_label[label]),
                                         std::cref(prelude)));
        }
        for (auto& f : futures) {
            for (auto& [idx, res] : f.get()) report.results[idx] = std::move(res);
        }
    }

    for (const auto& r : report.results) {
        switch (r.status) {
            case BlockResult::Status::Pass: ++report.passed; break;
            case BlockResult::Status::Fail: ++report.failed; break;
            case BlockResult::Status::Error: ++report.errored; break;
        }
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string fix_document(const std::string& document, const RunReport& report) {
    if (support::sha256_hex(document) != report.document_sha256) {
        throw Error(ErrorKind::StaleReport,
                    "document bytes changed since the report was produced");
    }
    // Collect splices for entries whose output no longer matches; apply
    // back-to-front so earlier offsets stay valid.
    struct Splice {
        std::size_t begin, end;
        std::string text;
    };
    std::vector<Splice> splices;
    for (std::size_t b = 0; b < report.blocks.size(); ++b) {
        const DoctestBlock& block = report.blocks[b];
        const BlockResult& result = report.results[b];
        for (std::size_t e = 0; e < block.entries.size(); ++e) {
            const DoctestEntry& entry = block.entries[e];
            const std::vector<std::string>& actual =
                e < result.actual.size() ? result.actual[e] : entry.expected;
            if (lines_match(entry.expected, actual)) continue;
            std::string text;
            for (const auto& line : actual) {
                text += line;
                text += '\n';
            }
            splices.push_back(Splice{entry.output_begin, entry.output_end, std::move(text)});
        }
    }
    std::sort(splices.begin(), splices.end(),
              [](const Splice& a, const Splice& b) { return a.begin > b.begin; });
    std::string fixed = document;
    for (const Splice& s : splices) {
        fixed.replace(s.begin, s.end - s.begin, s.text);
    }
    return fixed;
}

std::string summary_line(const RunReport& report) {
    std::string line = std::to_string(report.blocks.size()) + " blocks, " +
                       std::to_string(report.passed) + " passed";
    if (report.failed > 0) line += ", " + std::to_string(report.failed) + " failed";
    if (report.errored > 0) line += ", " + std::to_string(report.errored) + " errored";
    return line;
}

namespace {

const char* status_name(BlockResult::Status s) {
    switch (s) {
        case BlockResult::Status::Pass: return "pass";
        case BlockResult::Status::Fail: return "fail";
        case BlockResult::Status::Error: return "error";
    }
    return "error";
}

}  // namespace

std::vector<std::string> format_run_report(const RunReport& report) {
    std::vector<std::string> lines;
    for (std::size_t b = 0; b < report.blocks.size(); ++b) {
        const DoctestBlock& block = report.blocks[b];
        const BlockResult& result = report.results[b];
        lines.push_back(std::string(status_name(result.status)) + "  " + block.label +
                        " (block " + std::to_string(b + 1) + ", line " +
                        std::to_string(block.opening_line) + ")");
        if (result.status == BlockResult::Status::Error) {
            lines.push_back("    " + result.error_message);
        }
        if (result.status == BlockResult::Status::Fail) {
            for (const LineDiff& d : result.diffs) {
                lines.push_back("    entry " + std::to_string(d.entry_index + 1) +
                                " line " + std::to_string(d.line_index + 1) +
                                ": expected \"" + d.expected + "\", got \"" + d.actual +
                                "\"");
            }
        }
    }
    lines.push_back(summary_line(report));
    return lines;
}

std::string run_report_json(const RunReport& report) {
    using Json = nlohmann::json;
    Json blocks = Json::array();
    for (std::size_t b = 0; b < report.blocks.size(); ++b) {
        const DoctestBlock& block = report.blocks[b];
        const BlockResult& result = report.results[b];
        Json jb;
        jb["index"] = b + 1;
        jb["label"] = block.label;
        jb["line"] = block.opening_line;
        jb["status"] = status_name(result.status);
        if (result.status == BlockResult::Status::Error) {
            jb["error"] = result.error_message;
        }
        if (result.status == BlockResult::Status::Fail) {
            Json diffs = Json::array();
            for (const LineDiff& d : result.diffs) {
                Json jd;
                jd["entry"] = d.entry_index + 1;
                jd["line"] = d.line_index + 1;
                jd["expected"] = d.expected;
                jd["actual"] = d.actual;
                diffs.push_back(std::move(jd));
            }
            jb["diffs"] = std::move(diffs);
        }
        blocks.push_back(std::move(jb));
    }
    Json root;
    root["blocks"] = std::move(blocks);
    root["summary"] = {{"blocks", report.blocks.size()},
                       {"passed", report.passed},
                       {"failed", report.failed},
                       {"errored", report.errored}};
    return root.dump(2);
}

}  // namespace mathrepro::runner
