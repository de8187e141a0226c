#ifndef MATHREPRO_MRDI_DOCUMENT_HPP
#define MATHREPRO_MRDI_DOCUMENT_HPP

#include <string>

#include <json.hpp>

namespace mathrepro::mrdi {

/// JSON tree with std::map object storage: keys are sorted lexicographically
/// at every level, which is what makes the canonical byte form canonical.
using Json = nlohmann::json;

/// Format version written by this build. Documents carrying a smaller
/// `_format` go through the registered upgrade chain; larger ones are
/// rejected as VersionTooNew.
inline constexpr int CURRENT_FORMAT_VERSION = 2;

/// Namespace stamped into `_ns.name`. Loading any other name fails.
inline constexpr const char* NAMESPACE_NAME = "mathrepro";

/// A parsed .mrdi document: top-level keys `_format` (integer), `_ns`
/// (object with `name`/`version`), `_type` (string, or object with
/// `name`/`params`), `data`, and `_refs` (object keyed by UUID holding
/// `{_type, data}` fragments for every parent, transitively closed).
struct Document {
    Json root = Json::object();

    Document() = default;
    explicit Document(Json r) : root(std::move(r)) {}

    /// `_format` value. Throws Error(MalformedPayload) when absent or not a
    /// positive integer.
    int format_version() const;

    /// Compact UTF-8 dump with sorted keys and no insignificant whitespace;
    /// contains no line feeds. UUIDs are hashes of fragment canonical bytes,
    /// and files contain exactly these bytes plus one trailing newline.
    std::string canonical_bytes() const;

    /// canonical_bytes() plus the single trailing newline files carry.
    std::string file_bytes() const;

    /// Parses JSON text. Throws Error(MalformedPayload) on syntax errors.
    static Document parse(const std::string& text);
};

/// Reads and parses `path`. Throws Error(IoError) when the file cannot be
/// read and Error(MalformedPayload) when it is not valid JSON; both carry
/// the path.
Document read_document_file(const std::string& path);

/// Writes doc.file_bytes() to `path`. Throws Error(IoError) on failure.
void write_document_file(const std::string& path, const Document& doc);

}  // namespace mathrepro::mrdi

#endif
