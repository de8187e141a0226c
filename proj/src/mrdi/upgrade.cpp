#include "mathrepro/mrdi/upgrade.hpp"

#include "mathrepro/error.hpp"

namespace mathrepro::mrdi {

namespace {

std::string type_name_of(const Json& type_node) {
    if (type_node.is_string()) return type_node.get<std::string>();
    if (type_node.is_object() && type_node.contains("name") &&
        type_node.at("name").is_string()) {
        return type_node.at("name").get<std::string>();
    }
    return "";
}

/// v1 -> v2: Polynomial payloads carried their term list under the key
/// "polynomial"; v2 calls it "terms". Applies to the top level and to any
/// fragment, wherever a {_type, data} pair with type Polynomial appears.
void rename_polynomial_key(Json& node) {
    if (node.is_object()) {
        if (node.contains("_type") && node.contains("data") &&
            type_name_of(node.at("_type")) == "Polynomial") {
            Json& data = node.at("data");
            if (data.is_object() && data.contains("polynomial") &&
                !data.contains("terms")) {
                data["terms"] = std::move(data.at("polynomial"));
                data.erase("polynomial");
            }
        }
        for (auto& [key, child] : node.items()) {
            (void)key;
            rename_polynomial_key(child);
        }
    } else if (node.is_array()) {
        for (auto& child : node) rename_polynomial_key(child);
    }
}

UpgradeScript builtin_v1_to_v2() {
    UpgradeScript s;
    s.from_version = 1;
    s.description = "rename Polynomial payload key \"polynomial\" to \"terms\"";
    s.transform = [](const Json& in) {
        Json out = in;
        rename_polynomial_key(out);
        return out;
    };
    return s;
}

}  // namespace

void UpgradeRegistry::register_script(UpgradeScript script) {
    scripts_[script.from_version] = std::move(script);
}

const UpgradeScript* UpgradeRegistry::find(int from) const {
    auto it = scripts_.find(from);
    return it == scripts_.end() ? nullptr : &it->second;
}

UpgradeRegistry& global_upgrade_registry() {
    static UpgradeRegistry reg = [] {
        UpgradeRegistry r;
        r.register_script(builtin_v1_to_v2());
        return r;
    }();
    return reg;
}

void register_upgrade(UpgradeScript script) {
    global_upgrade_registry().register_script(std::move(script));
}

Document upgrade(const Document& doc, int target) {
    return upgrade(doc, target, global_upgrade_registry());
}

Document upgrade(const Document& doc, int target, const UpgradeRegistry& reg) {
    const int from = doc.format_version();
    if (target < 1) {
        throw Error(ErrorKind::InvalidInput,
                    "upgrade target must be a positive integer");
    }
    if (from == target) return doc;
    if (from > target) {
        throw Error(ErrorKind::MissingUpgradePath,
                    "no upgrade path from version " + std::to_string(from) +
                        " to " + std::to_string(target) +
                        ": scripts only move forward");
    }
    Document out = doc;
    for (int v = from; v < target; ++v) {
        const UpgradeScript* step = reg.find(v);
        if (step == nullptr) {
            throw Error(ErrorKind::MissingUpgradePath,
                        "no upgrade script from version " + std::to_string(v) +
                            " to " + std::to_string(v + 1) + " (needed for " +
                            std::to_string(from) + " -> " +
                            std::to_string(target) + ")");
        }
        Json next = step->transform(out.root);
        next["_format"] = v + 1;
        out.root = std::move(next);
    }
    return out;
}

}  // namespace mathrepro::mrdi
