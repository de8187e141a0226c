#ifndef MATHREPRO_MRDI_SESSION_HPP
#define MATHREPRO_MRDI_SESSION_HPP

#include <map>
#include <string>
#include <vector>

#include "mathrepro/cas/field.hpp"
#include "mathrepro/cas/polynomial.hpp"

namespace mathrepro::mrdi {

/// Identity registry for loads. Documents loaded through the same session
/// share parent instances: two files whose refs carry the same UUID hand
/// back the SAME live field or ring, so arithmetic between their contents
/// succeeds. Separate sessions never share instances.
///
/// Sessions are single-owner: they are not safe to share across concurrent
/// loaders. Concurrent workflows use one session per logical computation.
class Session {
  public:
    /// Existing instance for `uuid`, or nullptr.
    cas::FieldPtr find_field(const std::string& uuid) const;
    cas::RingPtr find_ring(const std::string& uuid) const;

    /// Registers an instance under `uuid`; the first registration wins and
    /// later ones for the same UUID are ignored (load always prefers the
    /// existing instance).
    void register_field(const std::string& uuid, cas::FieldPtr field);
    void register_ring(const std::string& uuid, cas::RingPtr ring);

    /// Canonical fragment bytes first seen for a UUID, or nullptr. Loads
    /// record these so a later document that reuses a known UUID for
    /// different content is rejected instead of silently merged.
    const std::string* fragment_bytes(const std::string& uuid) const;
    void remember_fragment(const std::string& uuid, std::string bytes);

    /// Non-fatal observations from loads (e.g. a namespace version that
    /// differs from this build's).
    const std::vector<std::string>& warnings() const { return warnings_; }
    void add_warning(std::string message);

    /// One entry per document loaded, in order.
    const std::vector<std::string>& load_log() const { return load_log_; }
    void log_load(std::string entry);

  private:
    std::map<std::string, cas::FieldPtr> fields_;
    std::map<std::string, cas::RingPtr> rings_;
    std::map<std::string, std::string> fragment_bytes_;
    std::vector<std::string> warnings_;
    std::vector<std::string> load_log_;
};

}  // namespace mathrepro::mrdi

#endif
