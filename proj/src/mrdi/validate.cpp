#include "mathrepro/mrdi/validate.hpp"

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "mathrepro/cas/integer.hpp"
#include "mathrepro/cas/polynomial.hpp"
#include "mathrepro/mrdi/object_id.hpp"
#include "mathrepro/mrdi/serialize.hpp"

namespace mathrepro::mrdi {

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::Closure: return "closure";
        case Violation::Kind::Cycle: return "cycle";
        case Violation::Kind::Schema: return "schema";
        case Violation::Kind::Registry: return "registry";
    }
    return "unknown";
}

namespace {

using cas::Integer;
using Kind = Violation::Kind;

/// Canonical decimal grammar: digits only, no leading zero except "0".
bool is_unsigned_decimal(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return s.size() == 1 || s[0] != '0';
}

/// As above with an optional leading minus; "-0" is not canonical.
bool is_signed_decimal(const std::string& s) {
    if (!s.empty() && s[0] == '-') {
        const std::string rest = s.substr(1);
        return is_unsigned_decimal(rest) && rest != "0";
    }
    return is_unsigned_decimal(s);
}

struct TypeInfo {
    bool ok = false;  // a type name could be extracted
    std::string name;
    std::string params;
    bool has_params = false;
};

struct FieldMeta {
    Integer characteristic{0};
    int degree = 1;
};

struct RingMeta {
    std::string field_uuid;
    std::size_t nvars = 0;
    bool nvars_known = false;
};

bool is_field_type(const std::string& name) {
    return name == "PrimeField" || name == "FiniteField";
}

class Checker {
  public:
    explicit Checker(const Json& root) : root_(root) {}

    std::vector<Violation> run() {
        if (!root_.is_object()) {
            add(Kind::Schema, "/", "document must be a JSON object");
            return std::move(out_);
        }
        check_top_keys();
        check_format();
        check_ns();
        check_refs();
        check_top_value();
        check_closure_and_cycles();
        return std::move(out_);
    }

  private:
    void add(Kind kind, std::string path, std::string message) {
        out_.push_back({kind, std::move(path), std::move(message)});
    }

    /// Strict key discipline: exactly `keys`, nothing else.
    bool expect_exact_keys(const Json& obj,
                           std::initializer_list<const char*> keys,
                           const std::string& path) {
        bool ok = true;
        for (const char* k : keys) {
            if (!obj.contains(k)) {
                add(Kind::Schema, path + "/" + k,
                    std::string("missing required key '") + k + "'");
                ok = false;
            }
        }
        for (const auto& [k, v] : obj.items()) {
            (void)v;
            if (std::none_of(keys.begin(), keys.end(),
                             [&](const char* want) { return k == want; })) {
                add(Kind::Schema, path + "/" + k, "unknown key '" + k + "'");
                ok = false;
            }
        }
        return ok;
    }

    std::optional<Integer> check_unsigned(const Json& node,
                                          const std::string& path) {
        if (!node.is_string() ||
            !is_unsigned_decimal(node.get<std::string>())) {
            add(Kind::Schema, path,
                "expected a canonical non-negative decimal string");
            return std::nullopt;
        }
        return Integer(node.get<std::string>());
    }

    bool check_signed(const Json& node, const std::string& path) {
        if (!node.is_string() || !is_signed_decimal(node.get<std::string>())) {
            add(Kind::Schema, path, "expected a canonical decimal string");
            return false;
        }
        return true;
    }

    TypeInfo check_type_node(const Json& node, const std::string& path) {
        TypeInfo ti;
        if (node.is_string()) {
            ti.name = node.get<std::string>();
            ti.ok = !ti.name.empty();
            if (!ti.ok) add(Kind::Schema, path, "type name must be non-empty");
            return ti;
        }
        if (node.is_object()) {
            expect_exact_keys(node, {"name", "params"}, path);
            if (node.contains("name")) {
                if (node.at("name").is_string()) {
                    ti.name = node.at("name").get<std::string>();
                } else {
                    add(Kind::Schema, path + "/name", "expected a string");
                }
            }
            if (node.contains("params")) {
                const Json& pr = node.at("params");
                if (pr.is_string() && is_uuid(pr.get<std::string>())) {
                    ti.params = pr.get<std::string>();
                    ti.has_params = true;
                } else {
                    add(Kind::Schema, path + "/params",
                        "expected a UUID string");
                }
            }
            ti.ok = !ti.name.empty();
            return ti;
        }
        add(Kind::Schema, path,
            "expected a type name string or a {name, params} object");
        return ti;
    }

    /// True when the name is registered; adds a Registry violation when not.
    bool check_registered(const std::string& name, const std::string& path) {
        if (is_registered_type(name)) return true;
        add(Kind::Registry, path,
            "unregistered type name '" + name + "' for namespace '" +
                NAMESPACE_NAME + "'");
        return false;
    }

    void check_top_keys() {
        expect_exact_keys(root_, {"_format", "_ns", "_refs", "_type", "data"},
                          "");
    }

    void check_format() {
        if (!root_.contains("_format")) return;
        const Json& f = root_.at("_format");
        if (!f.is_number_integer() || f.get<long long>() < 1) {
            add(Kind::Schema, "/_format", "expected a positive integer");
            return;
        }
        const long long v = f.get<long long>();
        if (v > CURRENT_FORMAT_VERSION) {
            add(Kind::Schema, "/_format",
                "format version " + std::to_string(v) +
                    " exceeds the current version " +
                    std::to_string(CURRENT_FORMAT_VERSION));
        }
    }

    void check_ns() {
        if (!root_.contains("_ns")) return;
        const Json& ns = root_.at("_ns");
        if (!ns.is_object()) {
            add(Kind::Schema, "/_ns", "expected an object");
            return;
        }
        expect_exact_keys(ns, {"name", "version"}, "/_ns");
        if (ns.contains("name")) {
            if (!ns.at("name").is_string()) {
                add(Kind::Schema, "/_ns/name", "expected a string");
            } else if (ns.at("name").get<std::string>() != NAMESPACE_NAME) {
                add(Kind::Registry, "/_ns/name",
                    "unknown namespace '" + ns.at("name").get<std::string>() +
                        "'");
            }
        }
        if (ns.contains("version")) {
            const Json& v = ns.at("version");
            if (!v.is_string() || v.get<std::string>().empty()) {
                add(Kind::Schema, "/_ns/version",
                    "expected a non-empty string");
            }
        }
    }

    // ----- fragment and payload checks -------------------------------------

    std::optional<FieldMeta> check_prime_field_payload(
        const Json& data, const std::string& path) {
        if (!data.is_object()) {
            add(Kind::Schema, path, "expected an object");
            return std::nullopt;
        }
        if (!expect_exact_keys(data, {"characteristic"}, path)) {
            if (!data.contains("characteristic")) return std::nullopt;
        }
        auto p = check_unsigned(data.at("characteristic"),
                                path + "/characteristic");
        if (!p) return std::nullopt;
        if (*p < Integer(2)) {
            add(Kind::Schema, path + "/characteristic",
                "characteristic must be at least 2");
            return std::nullopt;
        }
        return FieldMeta{*p, 1};
    }

    std::optional<FieldMeta> check_finite_field_payload(
        const Json& data, const std::string& path) {
        if (!data.is_object()) {
            add(Kind::Schema, path, "expected an object");
            return std::nullopt;
        }
        expect_exact_keys(
            data, {"characteristic", "degree", "defining_polynomial"}, path);
        std::optional<Integer> p;
        if (data.contains("characteristic")) {
            p = check_unsigned(data.at("characteristic"),
                               path + "/characteristic");
            if (p && *p < Integer(2)) {
                add(Kind::Schema, path + "/characteristic",
                    "characteristic must be at least 2");
                p = std::nullopt;
            }
        }
        std::optional<int> deg;
        if (data.contains("degree")) {
            auto d = check_unsigned(data.at("degree"), path + "/degree");
            if (d) {
                if (!d->fits_ulong() ||
                    d->to_ulong() > static_cast<unsigned long>(
                                        std::numeric_limits<int>::max())) {
                    add(Kind::Schema, path + "/degree", "degree out of range");
                } else if (d->to_ulong() < 2) {
                    add(Kind::Schema, path + "/degree",
                        "extension degree must be at least 2");
                } else {
                    deg = static_cast<int>(d->to_ulong());
                }
            }
        }
        bool poly_ok = false;
        if (data.contains("defining_polynomial")) {
            const Json& arr = data.at("defining_polynomial");
            const std::string apath = path + "/defining_polynomial";
            if (!arr.is_array()) {
                add(Kind::Schema, apath, "expected an array");
            } else {
                poly_ok = true;
                if (deg && arr.size() != static_cast<std::size_t>(*deg) + 1) {
                    add(Kind::Schema, apath,
                        "expected degree+1 = " + std::to_string(*deg + 1) +
                            " coefficients");
                    poly_ok = false;
                }
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    auto c = check_unsigned(arr[i],
                                            apath + "/" + std::to_string(i));
                    if (!c) {
                        poly_ok = false;
                    } else if (p && !(*c < *p)) {
                        add(Kind::Schema, apath + "/" + std::to_string(i),
                            "coefficient must be reduced mod the "
                            "characteristic");
                        poly_ok = false;
                    }
                }
                if (!arr.empty() && arr.back().is_string() &&
                    arr.back().get<std::string>() != "1") {
                    add(Kind::Schema, apath,
                        "defining polynomial must be monic");
                    poly_ok = false;
                }
            }
        }
        if (p && deg && poly_ok) return FieldMeta{*p, *deg};
        return std::nullopt;
    }

    /// Coefficient vector of a field element (ascending). Returns whether
    /// all entries are zero, or nullopt when the shape is wrong.
    std::optional<bool> check_element_coeffs(const Json& arr,
                                             const FieldMeta* fm,
                                             const std::string& path) {
        if (!arr.is_array()) {
            add(Kind::Schema, path, "expected an array of coefficients");
            return std::nullopt;
        }
        bool ok = true;
        if (fm && arr.size() != static_cast<std::size_t>(fm->degree)) {
            add(Kind::Schema, path,
                "expected " + std::to_string(fm->degree) + " coefficients");
            ok = false;
        }
        bool all_zero = true;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            auto c = check_unsigned(arr[i], path + "/" + std::to_string(i));
            if (!c) {
                ok = false;
                continue;
            }
            if (fm && !(*c < fm->characteristic)) {
                add(Kind::Schema, path + "/" + std::to_string(i),
                    "coefficient must be reduced mod the characteristic");
                ok = false;
            }
            if (!c->is_zero()) all_zero = false;
        }
        if (!ok) return std::nullopt;
        return all_zero;
    }

    std::optional<std::size_t> check_ring_payload(const Json& data,
                                                  const std::string& path) {
        if (!data.is_object()) {
            add(Kind::Schema, path, "expected an object");
            return std::nullopt;
        }
        expect_exact_keys(data, {"variables"}, path);
        if (!data.contains("variables")) return std::nullopt;
        const Json& vars = data.at("variables");
        if (!vars.is_array()) {
            add(Kind::Schema, path + "/variables", "expected an array");
            return std::nullopt;
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const std::string vpath =
                path + "/variables/" + std::to_string(i);
            if (!vars[i].is_string() ||
                !cas::is_valid_identifier(vars[i].get<std::string>())) {
                add(Kind::Schema, vpath, "invalid variable identifier");
                continue;
            }
            if (!seen.insert(vars[i].get<std::string>()).second) {
                add(Kind::Schema, vpath,
                    "duplicate variable '" + vars[i].get<std::string>() +
                        "'");
            }
        }
        return vars.size();
    }

    void check_poly_payload(const Json& data, const RingMeta* rm,
                            const FieldMeta* fm, const std::string& path) {
        if (!data.is_object()) {
            add(Kind::Schema, path, "expected an object");
            return;
        }
        expect_exact_keys(data, {"terms"}, path);
        if (!data.contains("terms")) return;
        const Json& terms = data.at("terms");
        if (!terms.is_array()) {
            add(Kind::Schema, path + "/terms", "expected an array");
            return;
        }
        std::optional<std::vector<std::uint32_t>> prev;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string tpath = path + "/terms/" + std::to_string(i);
            const Json& term = terms[i];
            if (!term.is_array() || term.size() != 2) {
                add(Kind::Schema, tpath,
                    "expected an [exponents, coefficients] pair");
                prev = std::nullopt;
                continue;
            }
            // Exponent vector.
            std::optional<std::vector<std::uint32_t>> exps;
            const Json& earr = term[0];
            const std::string epath = tpath + "/0";
            if (!earr.is_array()) {
                add(Kind::Schema, epath, "expected an array of exponents");
            } else {
                bool eok = true;
                if (rm && rm->nvars_known && earr.size() != rm->nvars) {
                    add(Kind::Schema, epath,
                        "expected " + std::to_string(rm->nvars) +
                            " exponents");
                    eok = false;
                }
                std::vector<std::uint32_t> ev;
                for (std::size_t j = 0; j < earr.size(); ++j) {
                    auto e = check_unsigned(earr[j],
                                            epath + "/" + std::to_string(j));
                    if (!e || !e->fits_ulong() ||
                        e->to_ulong() >
                            std::numeric_limits<std::uint32_t>::max()) {
                        if (e) {
                            add(Kind::Schema,
                                epath + "/" + std::to_string(j),
                                "exponent out of range");
                        }
                        eok = false;
                        continue;
                    }
                    ev.push_back(static_cast<std::uint32_t>(e->to_ulong()));
                }
                if (eok) exps = std::move(ev);
            }
            // Canonical order: strictly descending, which also rules out
            // duplicate exponent vectors.
            if (prev && exps && !(*prev > *exps)) {
                add(Kind::Schema, epath,
                    "terms must be in strictly descending lexicographic "
                    "order");
            }
            prev = exps;
            // Coefficient.
            auto zero = check_element_coeffs(term[1], fm, tpath + "/1");
            if (zero && *zero) {
                add(Kind::Schema, tpath + "/1",
                    "zero coefficients are never stored");
            }
        }
    }

    void check_matrix_payload(const Json& data, const std::string& path) {
        if (!data.is_object()) {
            add(Kind::Schema, path, "expected an object");
            return;
        }
        expect_exact_keys(data, {"cols", "entries", "rows"}, path);
        std::optional<std::size_t> r, c;
        for (const char* dim : {"rows", "cols"}) {
            if (!data.contains(dim)) continue;
            auto v = check_unsigned(data.at(dim), path + "/" + dim);
            if (!v) continue;
            if (v->is_zero() || !v->fits_ulong()) {
                add(Kind::Schema, path + "/" + dim,
                    "dimension must be a positive integer");
                continue;
            }
            (std::string(dim) == "rows" ? r : c) = v->to_ulong();
        }
        if (!data.contains("entries")) return;
        const Json& entries = data.at("entries");
        const std::string epath = path + "/entries";
        if (!entries.is_array()) {
            add(Kind::Schema, epath, "expected an array of rows");
            return;
        }
        if (r && entries.size() != *r) {
            add(Kind::Schema, epath,
                "expected " + std::to_string(*r) + " rows");
        }
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string rpath = epath + "/" + std::to_string(i);
            if (!entries[i].is_array()) {
                add(Kind::Schema, rpath, "expected an array");
                continue;
            }
            if (c && entries[i].size() != *c) {
                add(Kind::Schema, rpath,
                    "expected " + std::to_string(*c) + " entries");
            }
            for (std::size_t j = 0; j < entries[i].size(); ++j) {
                check_signed(entries[i][j],
                             rpath + "/" + std::to_string(j));
            }
        }
    }

    void check_refs() {
        if (!root_.contains("_refs")) return;
        const Json& refs = root_.at("_refs");
        if (!refs.is_object()) {
            add(Kind::Schema, "/_refs", "expected an object keyed by UUID");
            return;
        }
        // Shape pass: collect fragments by kind.
        std::vector<std::pair<std::string, const Json*>> field_frags;
        std::vector<std::pair<std::string, const Json*>> ring_frags;
        for (const auto& [key, frag] : refs.items()) {
            if (!is_uuid(key)) {
                add(Kind::Schema, "/_refs",
                    "key '" + key + "' is not a lowercase hyphenated UUID");
                continue;
            }
            const std::string fpath = "/_refs/" + key;
            if (!frag.is_object()) {
                add(Kind::Schema, fpath, "expected a {_type, data} fragment");
                continue;
            }
            expect_exact_keys(frag, {"_type", "data"}, fpath);
            if (!frag.contains("_type")) continue;
            TypeInfo ti = check_type_node(frag.at("_type"), fpath + "/_type");
            if (!ti.ok) continue;
            if (!check_registered(ti.name, fpath + "/_type")) continue;
            frag_kind_[key] = ti.name;
            if (is_field_type(ti.name)) {
                if (ti.has_params) {
                    add(Kind::Schema, fpath + "/_type",
                        "type '" + ti.name + "' takes no params");
                }
                if (frag.contains("data")) {
                    field_frags.emplace_back(key, &frag);
                }
            } else if (ti.name == "PolynomialRing") {
                if (!ti.has_params) {
                    add(Kind::Schema, fpath + "/_type",
                        "type 'PolynomialRing' requires params (the "
                        "coefficient field UUID)");
                }
                ring_params_[key] = ti.params;
                if (frag.contains("data")) {
                    ring_frags.emplace_back(key, &frag);
                }
            } else {
                add(Kind::Schema, fpath,
                    "_refs fragments hold parents (fields and rings) only, "
                    "not '" +
                        ti.name + "'");
            }
        }
        // Field payloads.
        for (const auto& [key, frag] : field_frags) {
            const std::string dpath = "/_refs/" + key + "/data";
            std::optional<FieldMeta> meta;
            if (frag_kind_[key] == "PrimeField") {
                meta = check_prime_field_payload(frag->at("data"), dpath);
            } else {
                meta = check_finite_field_payload(frag->at("data"), dpath);
            }
            if (meta) fields_[key] = *meta;
        }
        // Ring payloads (fields already known).
        for (const auto& [key, frag] : ring_frags) {
            const std::string fpath = "/_refs/" + key;
            const std::string& fuid = ring_params_[key];
            if (!fuid.empty() && frag_kind_.count(fuid) &&
                !is_field_type(frag_kind_[fuid])) {
                add(Kind::Schema, fpath + "/_type/params",
                    "params of 'PolynomialRing' must reference a field "
                    "fragment");
            }
            auto nvars = check_ring_payload(frag->at("data"), fpath + "/data");
            RingMeta rm;
            rm.field_uuid = fuid;
            if (nvars) {
                rm.nvars = *nvars;
                rm.nvars_known = true;
            }
            rings_[key] = rm;
        }
    }

    void check_top_value() {
        if (!root_.contains("_type")) return;
        TypeInfo ti = check_type_node(root_.at("_type"), "/_type");
        if (!ti.ok) return;
        if (!check_registered(ti.name, "/_type")) return;
        const bool plain = ti.name == "Integer" || ti.name == "IntMatrix" ||
                           is_field_type(ti.name);
        if (plain && ti.has_params) {
            add(Kind::Schema, "/_type",
                "type '" + ti.name + "' takes no params");
        }
        if (!plain && !ti.has_params) {
            add(Kind::Schema, "/_type",
                "type '" + ti.name + "' requires params (a parent UUID)");
            return;
        }
        if (!root_.contains("data")) return;
        const Json& data = root_.at("data");
        if (ti.name == "Integer") {
            check_signed(data, "/data");
        } else if (ti.name == "PrimeField") {
            check_prime_field_payload(data, "/data");
        } else if (ti.name == "FiniteField") {
            check_finite_field_payload(data, "/data");
        } else if (ti.name == "IntMatrix") {
            check_matrix_payload(data, "/data");
        } else if (ti.name == "FieldElement") {
            check_element_coeffs(data, resolve_field(ti.params, "/_type/params"),
                                 "/data");
        } else if (ti.name == "PolynomialRing") {
            resolve_field(ti.params, "/_type/params");
            check_ring_payload(data, "/data");
        } else if (ti.name == "Polynomial") {
            const RingMeta* rm = resolve_ring(ti.params, "/_type/params");
            const FieldMeta* fm = nullptr;
            if (rm && fields_.count(rm->field_uuid)) {
                fm = &fields_[rm->field_uuid];
            }
            check_poly_payload(data, rm, fm, "/data");
        }
    }

    /// Field metadata for a params UUID; flags a Schema violation when the
    /// UUID resolves to a non-field fragment. Missing UUIDs are left to the
    /// closure check.
    const FieldMeta* resolve_field(const std::string& uuid,
                                   const std::string& path) {
        if (uuid.empty()) return nullptr;
        if (frag_kind_.count(uuid) && !is_field_type(frag_kind_[uuid])) {
            add(Kind::Schema, path, "params must reference a field fragment");
            return nullptr;
        }
        auto it = fields_.find(uuid);
        return it == fields_.end() ? nullptr : &it->second;
    }

    const RingMeta* resolve_ring(const std::string& uuid,
                                 const std::string& path) {
        if (uuid.empty()) return nullptr;
        if (frag_kind_.count(uuid) && frag_kind_[uuid] != "PolynomialRing") {
            add(Kind::Schema, path,
                "params must reference a polynomial ring fragment");
            return nullptr;
        }
        auto it = rings_.find(uuid);
        return it == rings_.end() ? nullptr : &it->second;
    }

    // ----- closure, reachability, cycles ------------------------------------

    void scan_mentions(
        const Json& node, const std::string& path,
        std::vector<std::pair<std::string, std::string>>& out) const {
        if (node.is_string()) {
            if (is_uuid(node.get<std::string>())) {
                out.emplace_back(node.get<std::string>(), path);
            }
        } else if (node.is_object()) {
            for (const auto& [k, v] : node.items()) {
                scan_mentions(v, path + "/" + k, out);
            }
        } else if (node.is_array()) {
            for (std::size_t i = 0; i < node.size(); ++i) {
                scan_mentions(node[i], path + "/" + std::to_string(i), out);
            }
        }
    }

    void check_closure_and_cycles() {
        if (!root_.contains("_refs") || !root_.at("_refs").is_object()) return;
        const Json& refs = root_.at("_refs");
        std::set<std::string> keys;
        for (const auto& [key, frag] : refs.items()) {
            (void)frag;
            if (is_uuid(key)) keys.insert(key);
        }
        using Mentions = std::vector<std::pair<std::string, std::string>>;
        Mentions root_mentions;
        if (root_.contains("_type")) {
            scan_mentions(root_.at("_type"), "/_type", root_mentions);
        }
        if (root_.contains("data")) {
            scan_mentions(root_.at("data"), "/data", root_mentions);
        }
        std::map<std::string, Mentions> frag_mentions;
        for (const auto& key : keys) {
            scan_mentions(refs.at(key), "/_refs/" + key, frag_mentions[key]);
        }

        // Closure: every mention resolves to a fragment.
        auto check_mention = [&](const std::pair<std::string, std::string>& m) {
            if (!keys.count(m.first)) {
                add(Kind::Closure, m.second,
                    "UUID " + m.first +
                        " is referenced but has no fragment in _refs");
            }
        };
        for (const auto& m : root_mentions) check_mention(m);
        for (const auto& [key, ms] : frag_mentions) {
            (void)key;
            for (const auto& m : ms) check_mention(m);
        }

        // Strictness in the other direction: fragments that nothing
        // (transitively) references are drift, not payload.
        std::set<std::string> reachable;
        std::vector<std::string> work;
        for (const auto& m : root_mentions) {
            if (keys.count(m.first) && reachable.insert(m.first).second) {
                work.push_back(m.first);
            }
        }
        while (!work.empty()) {
            const std::string u = work.back();
            work.pop_back();
            for (const auto& m : frag_mentions[u]) {
                if (keys.count(m.first) && reachable.insert(m.first).second) {
                    work.push_back(m.first);
                }
            }
        }
        for (const auto& k : keys) {
            if (!reachable.count(k)) {
                add(Kind::Schema, "/_refs/" + k,
                    "fragment is not referenced by the document");
            }
        }

        // Acyclicity of the parent graph.
        std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
        std::vector<std::string> stack;
        std::function<void(const std::string&)> dfs =
            [&](const std::string& u) {
                color[u] = 1;
                stack.push_back(u);
                for (const auto& m : frag_mentions[u]) {
                    const std::string& v = m.first;
                    if (!keys.count(v)) continue;
                    if (color[v] == 1) {
                        std::string desc;
                        auto it = std::find(stack.begin(), stack.end(), v);
                        for (; it != stack.end(); ++it) desc += *it + " -> ";
                        desc += v;
                        add(Kind::Cycle, "/_refs/" + v,
                            "reference cycle: " + desc);
                    } else if (color[v] == 0) {
                        dfs(v);
                    }
                }
                stack.pop_back();
                color[u] = 2;
            };
        for (const auto& k : keys) {
            if (color[k] == 0) dfs(k);
        }
    }

    const Json& root_;
    std::vector<Violation> out_;
    std::map<std::string, std::string> frag_kind_;   // uuid -> type name
    std::map<std::string, std::string> ring_params_; // ring uuid -> field uuid
    std::map<std::string, FieldMeta> fields_;
    std::map<std::string, RingMeta> rings_;
};

}  // namespace

std::vector<Violation> validate(const Document& doc) {
    return Checker(doc.root).run();
}

}  // namespace mathrepro::mrdi
