#include "mathrepro/mrdi/serialize.hpp"

#include <utility>
#include <vector>

#include "mathrepro/error.hpp"
#include "mathrepro/mrdi/object_id.hpp"
#include "mathrepro/mrdi/upgrade.hpp"
#include "mathrepro/mrdi/validate.hpp"

#ifndef MATHREPRO_VERSION
#define MATHREPRO_VERSION "0.0.0"
#endif

namespace mathrepro::mrdi {

namespace {

using cas::ExponentVec;
using cas::Field;
using cas::FieldElement;
using cas::FieldPtr;
using cas::Integer;
using cas::IntMatrix;
using cas::Polynomial;
using cas::PolynomialRing;
using cas::RingPtr;
using cas::Value;

std::string type_name_of(const Json& type_node) {
    if (type_node.is_string()) return type_node.get<std::string>();
    return type_node.at("name").get<std::string>();
}

Json fragment(Json type, Json data) {
    Json f = Json::object();
    f["_type"] = std::move(type);
    f["data"] = std::move(data);
    return f;
}

// ----- save -----------------------------------------------------------------

std::pair<Json, Json> field_parts(const Field& f) {
    Json data = Json::object();
    data["characteristic"] = f.characteristic().to_string();
    if (f.is_prime_field()) return {Json("PrimeField"), std::move(data)};
    data["degree"] = std::to_string(f.degree());
    Json poly = Json::array();
    for (const Integer& c : f.defining_polynomial()) {
        poly.push_back(c.to_string());
    }
    data["defining_polynomial"] = std::move(poly);
    return {Json("FiniteField"), std::move(data)};
}

Json element_coeffs(const FieldElement& e) {
    Json arr = Json::array();
    for (const Integer& c : e.coeffs()) arr.push_back(c.to_string());
    return arr;
}

/// Collects parent fragments while the top-level value is serialized.
struct SaveContext {
    Json refs = Json::object();

    std::string intern_field(const Field& f) {
        auto [type, data] = field_parts(f);
        Json frag = fragment(std::move(type), std::move(data));
        std::string uuid = object_id_from_canonical(frag.dump());
        refs[uuid] = std::move(frag);
        return uuid;
    }

    std::string intern_ring(const PolynomialRing& r) {
        const std::string fuid = intern_field(*r.coefficient_field());
        Json type = Json::object();
        type["name"] = "PolynomialRing";
        type["params"] = fuid;
        Json vars = Json::array();
        for (const std::string& n : r.variable_names()) vars.push_back(n);
        Json data = Json::object();
        data["variables"] = std::move(vars);
        Json frag = fragment(std::move(type), std::move(data));
        std::string uuid = object_id_from_canonical(frag.dump());
        refs[uuid] = std::move(frag);
        return uuid;
    }
};

Json parametrized_type(const char* name, std::string params) {
    Json type = Json::object();
    type["name"] = name;
    type["params"] = std::move(params);
    return type;
}

std::pair<Json, Json> value_parts(const Value& v, SaveContext& ctx) {
    return std::visit(
        [&ctx](const auto& x) -> std::pair<Json, Json> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Integer>) {
                return {Json("Integer"), Json(x.to_string())};
            } else if constexpr (std::is_same_v<T, FieldPtr>) {
                return field_parts(*x);
            } else if constexpr (std::is_same_v<T, RingPtr>) {
                Json type = parametrized_type(
                    "PolynomialRing", ctx.intern_field(*x->coefficient_field()));
                Json vars = Json::array();
                for (const std::string& n : x->variable_names()) {
                    vars.push_back(n);
                }
                Json data = Json::object();
                data["variables"] = std::move(vars);
                return {std::move(type), std::move(data)};
            } else if constexpr (std::is_same_v<T, FieldElement>) {
                Json type = parametrized_type("FieldElement",
                                              ctx.intern_field(*x.parent()));
                return {std::move(type), element_coeffs(x)};
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                Json type = parametrized_type("Polynomial",
                                              ctx.intern_ring(*x.ring()));
                Json terms = Json::array();
                for (const auto& [exps, coeff] : x.terms()) {
                    Json e = Json::array();
                    for (std::uint32_t k : exps) {
                        e.push_back(std::to_string(k));
                    }
                    Json term = Json::array();
                    term.push_back(std::move(e));
                    term.push_back(element_coeffs(coeff));
                    terms.push_back(std::move(term));
                }
                Json data = Json::object();
                data["terms"] = std::move(terms);
                return {std::move(type), std::move(data)};
            } else {
                static_assert(std::is_same_v<T, IntMatrix>);
                Json rows = Json::array();
                for (std::size_t i = 0; i < x.rows(); ++i) {
                    Json row = Json::array();
                    for (std::size_t j = 0; j < x.cols(); ++j) {
                        row.push_back(x.at(i, j).to_string());
                    }
                    rows.push_back(std::move(row));
                }
                Json data = Json::object();
                data["cols"] = std::to_string(x.cols());
                data["entries"] = std::move(rows);
                data["rows"] = std::to_string(x.rows());
                return {Json("IntMatrix"), std::move(data)};
            }
        },
        v);
}

// ----- load -----------------------------------------------------------------

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::MalformedPayload,
                "malformed payload at " + path + ": " + what);
}

FieldPtr materialize_field(const std::string& type_name, const Json& data,
                           const std::string& dpath) {
    try {
        const Integer p(data.at("characteristic").get<std::string>());
        if (type_name == "PrimeField") return cas::make_prime_field(p);
        const Integer d(data.at("degree").get<std::string>());
        FieldPtr f = cas::make_finite_field(p, static_cast<int>(d.to_ulong()));
        const std::vector<Integer>& canonical = f->defining_polynomial();
        const Json& stored = data.at("defining_polynomial");
        bool same = stored.size() == canonical.size();
        for (std::size_t i = 0; same && i < canonical.size(); ++i) {
            same = stored[i].get<std::string>() == canonical[i].to_string();
        }
        if (!same) {
            malformed(dpath + "/defining_polynomial",
                      "not the canonical defining polynomial of GF(" +
                          p.to_string() + "^" + d.to_string() + ")");
        }
        return f;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedPayload) throw;
        malformed(dpath, e.what());
    }
}

RingPtr materialize_ring(FieldPtr field, const Json& data,
                         const std::string& dpath) {
    try {
        std::vector<std::string> names;
        for (const Json& v : data.at("variables")) {
            names.push_back(v.get<std::string>());
        }
        return cas::make_polynomial_ring(std::move(field), std::move(names))
            .first;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedPayload) throw;
        malformed(dpath, e.what());
    }
}

/// Rejects a UUID that the session has already seen with different content.
void check_fragment_consistency(Session& session, const std::string& uuid,
                                const Json& frag, const std::string& fpath) {
    std::string bytes = frag.dump();
    if (const std::string* known = session.fragment_bytes(uuid)) {
        if (*known != bytes) {
            malformed(fpath, "UUID " + uuid +
                                 " already names different content in this "
                                 "session");
        }
        return;
    }
    session.remember_fragment(uuid, std::move(bytes));
}

Value load_impl(const Document& input, Session& session,
                const std::string& origin) {
    const int fv = input.format_version();
    if (fv > CURRENT_FORMAT_VERSION) {
        throw Error(ErrorKind::VersionTooNew,
                    "document format version " + std::to_string(fv) +
                        " is newer than this build's " +
                        std::to_string(CURRENT_FORMAT_VERSION));
    }
    const Document doc =
        fv < CURRENT_FORMAT_VERSION ? upgrade(input, CURRENT_FORMAT_VERSION)
                                    : input;
    const Json& root = doc.root;

    if (root.is_object() && root.contains("_ns") &&
        root.at("_ns").is_object() && root.at("_ns").contains("name") &&
        root.at("_ns").at("name").is_string() &&
        root.at("_ns").at("name").get<std::string>() != NAMESPACE_NAME) {
        throw Error(ErrorKind::UnknownNamespace,
                    "unknown namespace '" +
                        root.at("_ns").at("name").get<std::string>() + "'");
    }

    const std::vector<Violation> violations = validate(doc);
    if (!violations.empty()) {
        const Violation* chosen = &violations.front();
        for (const Violation& v : violations) {
            if (v.kind == Violation::Kind::Registry) {
                chosen = &v;
                break;
            }
        }
        ErrorKind kind = ErrorKind::MalformedPayload;
        if (chosen->kind == Violation::Kind::Registry) {
            kind = chosen->path.rfind("/_ns", 0) == 0
                       ? ErrorKind::UnknownNamespace
                       : ErrorKind::UnknownType;
        }
        throw Error(kind, "malformed payload at " +
                              (chosen->path.empty() ? "/" : chosen->path) +
                              ": " + chosen->message);
    }

    const std::string doc_version =
        root.at("_ns").at("version").get<std::string>();
    if (doc_version != MATHREPRO_VERSION) {
        session.add_warning("document " + origin + " has namespace version " +
                            doc_version + "; this build is " +
                            MATHREPRO_VERSION);
    }

    // Parents: fields first, then the rings that use them.
    const Json& refs = root.at("_refs");
    for (const auto& [uuid, frag] : refs.items()) {
        const std::string name = type_name_of(frag.at("_type"));
        if (name != "PrimeField" && name != "FiniteField") continue;
        check_fragment_consistency(session, uuid, frag, "/_refs/" + uuid);
        if (!session.find_field(uuid)) {
            session.register_field(
                uuid, materialize_field(name, frag.at("data"),
                                        "/_refs/" + uuid + "/data"));
        }
    }
    for (const auto& [uuid, frag] : refs.items()) {
        const std::string name = type_name_of(frag.at("_type"));
        if (name != "PolynomialRing") continue;
        check_fragment_consistency(session, uuid, frag, "/_refs/" + uuid);
        if (!session.find_ring(uuid)) {
            const std::string fuid =
                frag.at("_type").at("params").get<std::string>();
            FieldPtr field = session.find_field(fuid);
            if (!field) malformed("/_refs/" + uuid, "unresolved field " + fuid);
            session.register_ring(
                uuid, materialize_ring(std::move(field), frag.at("data"),
                                       "/_refs/" + uuid + "/data"));
        }
    }

    const Json& tnode = root.at("_type");
    const std::string name = type_name_of(tnode);
    const Json& data = root.at("data");

    Value result = [&]() -> Value {
        if (name == "Integer") {
            return Integer(data.get<std::string>());
        }
        if (name == "PrimeField" || name == "FiniteField") {
            Json frag = fragment(tnode, data);
            const std::string cid = object_id_from_canonical(frag.dump());
            check_fragment_consistency(session, cid, frag, "/data");
            if (FieldPtr existing = session.find_field(cid)) return existing;
            FieldPtr f = materialize_field(name, data, "/data");
            session.register_field(cid, f);
            return f;
        }
        if (name == "PolynomialRing") {
            Json frag = fragment(tnode, data);
            const std::string cid = object_id_from_canonical(frag.dump());
            check_fragment_consistency(session, cid, frag, "/data");
            if (RingPtr existing = session.find_ring(cid)) return existing;
            FieldPtr field =
                session.find_field(tnode.at("params").get<std::string>());
            if (!field) {
                malformed("/_type/params", "unresolved field reference");
            }
            RingPtr r = materialize_ring(std::move(field), data, "/data");
            session.register_ring(cid, r);
            return r;
        }
        if (name == "FieldElement") {
            FieldPtr field =
                session.find_field(tnode.at("params").get<std::string>());
            if (!field) {
                malformed("/_type/params", "unresolved field reference");
            }
            std::vector<Integer> cs;
            for (const Json& c : data) cs.emplace_back(c.get<std::string>());
            return field->element(std::move(cs));
        }
        if (name == "Polynomial") {
            RingPtr ring =
                session.find_ring(tnode.at("params").get<std::string>());
            if (!ring) {
                malformed("/_type/params", "unresolved ring reference");
            }
            const FieldPtr& field = ring->coefficient_field();
            Polynomial::TermMap terms;
            for (const Json& term : data.at("terms")) {
                ExponentVec exps;
                for (const Json& e : term[0]) {
                    exps.push_back(static_cast<std::uint32_t>(
                        Integer(e.get<std::string>()).to_ulong()));
                }
                std::vector<Integer> cs;
                for (const Json& c : term[1]) {
                    cs.emplace_back(c.get<std::string>());
                }
                terms.emplace(std::move(exps), field->element(std::move(cs)));
            }
            return Polynomial(ring, std::move(terms));
        }
        if (name == "IntMatrix") {
            const std::size_t rows =
                Integer(data.at("rows").get<std::string>()).to_ulong();
            const std::size_t cols =
                Integer(data.at("cols").get<std::string>()).to_ulong();
            std::vector<Integer> entries;
            entries.reserve(rows * cols);
            for (const Json& row : data.at("entries")) {
                for (const Json& e : row) {
                    entries.emplace_back(e.get<std::string>());
                }
            }
            return IntMatrix(rows, cols, std::move(entries));
        }
        // validate() already rejected unregistered names.
        throw Error(ErrorKind::UnknownType,
                    "unregistered type name '" + name + "'");
    }();

    session.log_load(origin + ": " + name);
    return result;
}

}  // namespace

bool is_registered_type(const std::string& type_name) {
    for (const std::string& n : registered_type_names()) {
        if (n == type_name) return true;
    }
    return false;
}

const std::vector<std::string>& registered_type_names() {
    static const std::vector<std::string> names = {
        "FieldElement", "FiniteField",    "IntMatrix", "Integer",
        "Polynomial",   "PolynomialRing", "PrimeField"};
    return names;
}

std::string content_id(const cas::Value& v) {
    SaveContext ctx;
    auto [type, data] = value_parts(v, ctx);
    return object_id_from_canonical(
        fragment(std::move(type), std::move(data)).dump());
}

Document save(const cas::Value& v) {
    SaveContext ctx;
    auto [type, data] = value_parts(v, ctx);
    const std::string name = type_name_of(type);
    if (!is_registered_type(name)) {
        throw Error(ErrorKind::UnregisteredType,
                    "type '" + name + "' is not registered for namespace '" +
                        NAMESPACE_NAME + "'");
    }
    Json root = Json::object();
    root["_format"] = CURRENT_FORMAT_VERSION;
    Json ns = Json::object();
    ns["name"] = NAMESPACE_NAME;
    ns["version"] = MATHREPRO_VERSION;
    root["_ns"] = std::move(ns);
    root["_refs"] = std::move(ctx.refs);
    root["_type"] = std::move(type);
    root["data"] = std::move(data);
    return Document(std::move(root));
}

cas::Value load(const Document& doc, Session& session) {
    return load_impl(doc, session, "<memory>");
}

void save_file(const std::string& path, const cas::Value& v) {
    write_document_file(path, save(v));
}

cas::Value load_file(const std::string& path, Session& session) {
    const Document doc = read_document_file(path);
    return load_impl(doc, session, path);
}

}  // namespace mathrepro::mrdi
