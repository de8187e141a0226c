#ifndef MATHREPRO_RUNNER_RUN_HPP
#define MATHREPRO_RUNNER_RUN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mathrepro/runner/extract.hpp"

namespace mathrepro::runner {

/// One line that came out differently than the document promised.
struct LineDiff {
    std::size_t entry_index = 0;  // which prompt in the block
    std::size_t line_index = 0;   // which output line of that prompt
    std::string expected;         // empty when the line was missing
    std::string actual;           // empty when nothing was produced
};

struct BlockResult {
    enum class Status { Pass, Fail, Error };
    Status status = Status::Pass;
    std::vector<LineDiff> diffs;  // populated on Fail
    std::string error_message;    // populated on Error
    /// Actual output per entry, exactly as produced; fix_document splices
    /// these over the stale expected spans.
    std::vector<std::vector<std::string>> actual;
};

/// Everything one run of a document produced. `blocks` and `results` are
/// parallel, in document order.
struct RunReport {
    std::vector<DoctestBlock> blocks;
    std::vector<BlockResult> results;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errored = 0;
    double elapsed_seconds = 0.0;
    /// Hash of the document the blocks were extracted from; fix_document
    /// refuses to splice into different bytes.
    std::string document_sha256;
};

/// Runs every block. Blocks sharing a label run in document order inside
/// one interpreter environment (bindings plus one session); distinct labels
/// are isolated and run concurrently. `prelude` statements run once per
/// label before its first block. Comparison is exact string equality after
/// stripping trailing whitespace from each line. An entry whose evaluation
/// errors still passes when the document expects that exact error line;
/// an unexpected error makes the whole block an Error result.
RunReport run_blocks(const std::vector<DoctestBlock>& blocks,
                     const std::string& document,
                     const std::vector<std::string>& prelude = {});

/// Returns the document with the expected output of every failing or
/// erroring entry replaced by what actually ran, byte-for-byte identical
/// everywhere else. Throws Error(StaleReport) when `document` is not the
/// text the report was produced from.
std::string fix_document(const std::string& document, const RunReport& report);

/// "N blocks, P passed" plus ", F failed" / ", E errored" when nonzero.
std::string summary_line(const RunReport& report);

/// Human-readable per-block lines followed by the summary line.
std::vector<std::string> format_run_report(const RunReport& report);

/// Machine-readable form with deterministic key order (and no timing).
std::string run_report_json(const RunReport& report);

}  // namespace mathrepro::runner

#endif
