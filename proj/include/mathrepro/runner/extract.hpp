#ifndef MATHREPRO_RUNNER_EXTRACT_HPP
#define MATHREPRO_RUNNER_EXTRACT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mathrepro::runner {

/// One prompt with its expected output. Byte offsets address the document
/// so fix_document can splice corrected output without touching anything
/// else: [output_begin, output_end) covers exactly the expected-output
/// lines (with their newlines) between this prompt and the next marker.
struct DoctestEntry {
    std::string input;                  // text after the ">> " prompt
    std::vector<std::string> expected;  // lines, without newlines
    std::size_t output_begin = 0;
    std::size_t output_end = 0;
};

/// A labeled block. Blocks sharing a label share one interpreter
/// environment and one session, in document order.
struct DoctestBlock {
    std::string label;
    std::size_t begin = 0;  // byte offset of the opening marker line
    std::size_t end = 0;    // one past the closing marker line
    std::size_t opening_line = 0;  // 1-based, for messages
    std::vector<DoctestEntry> entries;
};

/// Finds ```repl label=<name>``` fenced blocks (Markdown) and
/// \begin{repltest}{<name>} ... \end{repltest} environments (LaTeX-like),
/// in document order. Prompt lines start with exactly ">> " at the line
/// start; everything between prompts is expected output. Other fenced code
/// blocks are skipped, not scanned. Throws Error(UnterminatedBlock) with
/// the opening line number and Error(MissingLabel).
std::vector<DoctestBlock> extract_blocks(const std::string& document);

}  // namespace mathrepro::runner

#endif
