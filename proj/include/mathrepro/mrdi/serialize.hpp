#ifndef MATHREPRO_MRDI_SERIALIZE_HPP
#define MATHREPRO_MRDI_SERIALIZE_HPP

#include <string>
#include <vector>

#include "mathrepro/cas/value.hpp"
#include "mathrepro/mrdi/document.hpp"
#include "mathrepro/mrdi/session.hpp"

namespace mathrepro::mrdi {

/// TypeRegistry for the "mathrepro" namespace.
bool is_registered_type(const std::string& type_name);
const std::vector<std::string>& registered_type_names();

/// UUID of the value's own {_type, data} fragment. For fields and rings
/// this is exactly the key their fragment gets in a dependent document's
/// _refs, so equal objects land on equal identifiers.
std::string content_id(const cas::Value& v);

/// Serializes a kernel value into a document whose _refs carry a fragment
/// for every (transitive) parent. Saving equal values yields byte-identical
/// canonical output. Throws Error(UnregisteredType) for values outside the
/// type registry (unreachable through the public Value alternatives).
Document save(const cas::Value& v);

/// Instantiates a document. Fragments whose UUID the session has seen
/// before reuse the existing instance; new ones are constructed and
/// registered. A top-level field or ring is registered under its
/// content-derived UUID so later dependent loads merge with it. Documents
/// below the current format version go through the registered upgrade
/// chain first. Throws Error with kind UnknownNamespace, UnknownType,
/// MalformedPayload (carrying a JSON-pointer-style path), VersionTooNew, or
/// MissingUpgradePath.
cas::Value load(const Document& doc, Session& session);

/// save/load through files holding canonical bytes plus one trailing
/// newline. IO failures throw Error(IoError) with the path.
void save_file(const std::string& path, const cas::Value& v);
cas::Value load_file(const std::string& path, Session& session);

}  // namespace mathrepro::mrdi

#endif
