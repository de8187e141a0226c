#ifndef MATHREPRO_MRDI_UPGRADE_HPP
#define MATHREPRO_MRDI_UPGRADE_HPP

#include <functional>
#include <map>
#include <string>

#include "mathrepro/mrdi/document.hpp"

namespace mathrepro::mrdi {

/// One step of the format history: a pure tree rewrite taking a document at
/// `from_version` to `from_version + 1`. The framework stamps `_format`;
/// transforms only rewrite payloads.
struct UpgradeScript {
    int from_version = 0;
    std::function<Json(const Json&)> transform;
    std::string description;

    int to_version() const { return from_version + 1; }
};

/// Ordered set of upgrade scripts, at most one per source version.
class UpgradeRegistry {
  public:
    /// Registers `script`, replacing any previous script with the same
    /// from_version.
    void register_script(UpgradeScript script);

    /// Script starting at `from`, or nullptr.
    const UpgradeScript* find(int from) const;

  private:
    std::map<int, UpgradeScript> scripts_;
};

/// Process-wide registry, pre-seeded with the built-in format history
/// (v1 -> v2: the Polynomial payload key "polynomial" became "terms").
UpgradeRegistry& global_upgrade_registry();

/// Convenience: register into the global registry.
void register_upgrade(UpgradeScript script);

/// Applies the contiguous chain of scripts taking `doc.format_version()` to
/// `target` and returns the rewritten document; `doc` itself is untouched.
/// A document already at `target` comes back unchanged. Throws
/// Error(MissingUpgradePath) naming the gap when a step is missing (this
/// includes any downgrade, since scripts only move forward).
Document upgrade(const Document& doc, int target);
Document upgrade(const Document& doc, int target, const UpgradeRegistry& reg);

}  // namespace mathrepro::mrdi

#endif
