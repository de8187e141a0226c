#ifndef MATHREPRO_MRDI_VALIDATE_HPP
#define MATHREPRO_MRDI_VALIDATE_HPP

#include <string>
#include <vector>

#include "mathrepro/mrdi/document.hpp"

namespace mathrepro::mrdi {

/// One defect found by validate(). Violations are data, not exceptions.
struct Violation {
    enum class Kind {
        Closure,   // a UUID is mentioned but absent from _refs
        Cycle,     // _refs fragments reference each other in a loop
        Schema,    // structural or payload-grammar defect
        Registry,  // unknown namespace or unregistered type name
    };

    Kind kind;
    std::string path;  // JSON-pointer-style location of the defect
    std::string message;
};

std::string to_string(Violation::Kind kind);

/// Checks a parsed document tree against the current format: top-level
/// shape, payload schemas (strict: unknown keys are defects), the closure
/// property (every mentioned UUID has a fragment), acyclicity of the parent
/// graph, and the type registry. Returns every violation found, empty iff
/// the document is well-formed. Semantic checks that require real
/// computation (primality of a characteristic, canonicity of a defining
/// polynomial) are left to load().
std::vector<Violation> validate(const Document& doc);

}  // namespace mathrepro::mrdi

#endif
