#include "mathrepro/mrdi/document.hpp"

#include <fstream>
#include <sstream>

#include "mathrepro/error.hpp"

namespace mathrepro::mrdi {

int Document::format_version() const {
    if (!root.is_object() || !root.contains("_format")) {
        throw Error(ErrorKind::MalformedPayload,
                    "malformed payload at /_format: missing");
    }
    const Json& f = root.at("_format");
    if (!f.is_number_integer() || f.get<long long>() < 1) {
        throw Error(ErrorKind::MalformedPayload,
                    "malformed payload at /_format: expected positive integer");
    }
    return static_cast<int>(f.get<long long>());
}

std::string Document::canonical_bytes() const { return root.dump(); }

std::string Document::file_bytes() const { return canonical_bytes() + "\n"; }

Document Document::parse(const std::string& text) {
    try {
        return Document(Json::parse(text));
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::MalformedPayload,
                    std::string("malformed document: ") + e.what());
    }
}

Document read_document_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "cannot read file: " + path);
    }
    try {
        return Document::parse(buf.str());
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " (file: " + path + ")");
    }
}

void write_document_file(const std::string& path, const Document& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write file: " + path);
    }
    const std::string bytes = doc.file_bytes();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write file: " + path);
    }
}

}  // namespace mathrepro::mrdi
