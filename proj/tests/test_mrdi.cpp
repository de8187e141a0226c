#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "mathrepro/cas/field.hpp"
#include "mathrepro/cas/integer.hpp"
#include "mathrepro/cas/matrix.hpp"
#include "mathrepro/cas/polynomial.hpp"
#include "mathrepro/cas/value.hpp"
#include "mathrepro/error.hpp"
#include "mathrepro/mrdi/document.hpp"
#include "mathrepro/mrdi/object_id.hpp"
#include "mathrepro/mrdi/serialize.hpp"
#include "mathrepro/mrdi/session.hpp"
#include "mathrepro/mrdi/upgrade.hpp"
#include "mathrepro/mrdi/validate.hpp"
#include "test_util.hpp"
#include "test_values.hpp"

using namespace mathrepro;
using cas::FieldPtr;
using cas::Integer;
using cas::IntMatrix;
using cas::Polynomial;
using cas::RingPtr;
using mrdi::Document;
using mrdi::Json;
using mrdi::Session;
using mrdi::Violation;

namespace {

const char* kGf7Uuid = "50b5908d-ac2c-874f-a728-8e9b5247f58d";
const char* kGf49Uuid = "a4a73c6b-ef98-8656-beb3-931d91376b80";
const char* kRingUuid = "0961fc18-b554-8ca5-bba0-716c953595eb";

/// (x + y)^2 over GF(7^2)[x, y], the standing example document.
cas::Value sample_polynomial() {
    FieldPtr f = cas::make_finite_field(Integer(7), 2);
    auto [r, gens] = cas::make_polynomial_ring(f, {"x", "y"});
    return (gens[0] + gens[1]).pow(Integer(2));
}

bool has_violation(const std::vector<Violation>& vs, Violation::Kind kind,
                   const std::string& needle) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) {
        return v.kind == kind && (v.message.find(needle) != std::string::npos ||
                                  v.path.find(needle) != std::string::npos);
    });
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST_SUITE("object ids") {
    TEST_CASE("uuid grammar") {
        CHECK(mrdi::is_uuid("50b5908d-ac2c-874f-a728-8e9b5247f58d"));
        CHECK(!mrdi::is_uuid("50B5908D-AC2C-874F-A728-8E9B5247F58D"));
        CHECK(!mrdi::is_uuid("50b5908dac2c874fa7288e9b5247f58d"));
        CHECK(!mrdi::is_uuid("50b5908d-ac2c-874f-a728-8e9b5247f58"));
        CHECK(!mrdi::is_uuid("50b5908d-ac2c-874f-a728-8e9b5247f58g"));
    }

    TEST_CASE("identifier is a pure function of canonical bytes") {
        CHECK(mrdi::object_id_from_canonical("abc") ==
              mrdi::object_id_from_canonical("abc"));
        CHECK(mrdi::object_id_from_canonical("abc") !=
              mrdi::object_id_from_canonical("abd"));
    }

    TEST_CASE("version and variant bits follow the UUIDv8 layout") {
        testutil::ValueGen gen(101);
        for (const auto& v : gen.corpus(60)) {
            std::string id = mrdi::content_id(v);
            REQUIRE(mrdi::is_uuid(id));
            CHECK(id[14] == '8');  // version nibble
            CHECK((id[19] == '8' || id[19] == '9' || id[19] == 'a' ||
                   id[19] == 'b'));  // variant 10xx
        }
    }

    TEST_CASE("frozen content identifiers") {
        FieldPtr f7 = cas::make_prime_field(Integer(7));
        CHECK(mrdi::content_id(cas::Value(f7)) == kGf7Uuid);
        FieldPtr f49 = cas::make_finite_field(Integer(7), 2);
        CHECK(mrdi::content_id(cas::Value(f49)) == kGf49Uuid);
        auto [r, gens] = cas::make_polynomial_ring(f49, {"x", "y"});
        CHECK(mrdi::content_id(cas::Value(r)) == kRingUuid);
        CHECK(mrdi::content_id(sample_polynomial()) ==
              "29cc9bae-3403-881a-a13b-277691529ccc");
    }

    TEST_CASE("equal structures from different instances share an identifier") {
        FieldPtr a = cas::make_finite_field(Integer(7), 2);
        FieldPtr b = cas::make_finite_field(Integer(7), 2);
        CHECK(a != b);
        CHECK(mrdi::content_id(cas::Value(a)) == mrdi::content_id(cas::Value(b)));
    }
}

TEST_SUITE("canonical bytes") {
    TEST_CASE("frozen document bytes") {
        Document d = mrdi::save(cas::Value(Integer(42)));
        CHECK(d.canonical_bytes() ==
              R"({"_format":2,"_ns":{"name":"mathrepro","version":"0.1.0"},)"
              R"("_refs":{},"_type":"Integer","data":"42"})");
        CHECK(d.file_bytes() == d.canonical_bytes() + "\n");

        FieldPtr f7 = cas::make_prime_field(Integer(7));
        Document e = mrdi::save(cas::Value(f7->from_integer(Integer(3))));
        CHECK(e.canonical_bytes() ==
              R"({"_format":2,"_ns":{"name":"mathrepro","version":"0.1.0"},)"
              R"("_refs":{"50b5908d-ac2c-874f-a728-8e9b5247f58d":{"_type":"PrimeField",)"
              R"("data":{"characteristic":"7"}}},"_type":{"name":"FieldElement",)"
              R"("params":"50b5908d-ac2c-874f-a728-8e9b5247f58d"},"data":["3"]})");
    }

    TEST_CASE("canonical bytes contain no line feeds and parse back") {
        testutil::ValueGen gen(5);
        for (const auto& v : gen.corpus(40)) {
            Document d = mrdi::save(v);
            std::string bytes = d.canonical_bytes();
            CHECK(bytes.find('\n') == std::string::npos);
            Document back = Document::parse(bytes);
            CHECK(back.canonical_bytes() == bytes);
        }
    }

    TEST_CASE("saving twice and saving equal values is byte-identical") {
        cas::Value p1 = sample_polynomial();
        cas::Value p2 = sample_polynomial();  // different live instances
        CHECK(mrdi::save(p1).canonical_bytes() == mrdi::save(p2).canonical_bytes());

        testutil::ValueGen gen(7);
        for (const auto& v : gen.corpus(40)) {
            CHECK(mrdi::save(v).canonical_bytes() ==
                  mrdi::save(v).canonical_bytes());
        }
    }

    TEST_CASE("files carry canonical bytes plus one newline") {
        testutil::TempDir tmp;
        std::string path = tmp.path() + "/v.mrdi";
        mrdi::save_file(path, sample_polynomial());
        std::string raw = testutil::read_file(path);
        Document d = mrdi::save(sample_polynomial());
        CHECK(raw == d.canonical_bytes() + "\n");
        CHECK(raw.back() == '\n');
        CHECK(std::count(raw.begin(), raw.end(), '\n') == 1);
    }
}

TEST_SUITE("roundtrips") {
    TEST_CASE("every corpus value survives save/load") {
        testutil::ValueGen gen(23);
        for (const auto& v : gen.corpus(120)) {
            Document d = mrdi::save(v);
            Session s;
            cas::Value back = mrdi::load(d, s);
            CHECK(cas::value_equal(v, back));
            // And the reloaded value re-saves to the same bytes.
            CHECK(mrdi::save(back).canonical_bytes() == d.canonical_bytes());
        }
    }

    TEST_CASE("file roundtrip") {
        testutil::TempDir tmp;
        testutil::ValueGen gen(29);
        int i = 0;
        for (const auto& v : gen.corpus(24)) {
            std::string path = tmp.path() + "/v" + std::to_string(i++) + ".mrdi";
            mrdi::save_file(path, v);
            Session s;
            CHECK(cas::value_equal(v, mrdi::load_file(path, s)));
        }
    }
}

TEST_SUITE("sessions") {
    TEST_CASE("one session merges parents; separate sessions do not") {
        FieldPtr f = cas::make_finite_field(Integer(7), 2);
        auto [r, gens] = cas::make_polynomial_ring(f, {"x", "y"});
        Polynomial p = (gens[0] + gens[1]).pow(Integer(2));
        Polynomial q = gens[0] * gens[1] - r->from_integer(Integer(3));
        Document dp = mrdi::save(cas::Value(p));
        Document dq = mrdi::save(cas::Value(q));

        Session one;
        Polynomial lp = std::get<Polynomial>(mrdi::load(dp, one));
        Polynomial lq = std::get<Polynomial>(mrdi::load(dq, one));
        CHECK(lp.ring() == lq.ring());  // same live instance
        CHECK(lp + lq == p + q);

        Session s1, s2;
        Polynomial ap = std::get<Polynomial>(mrdi::load(dp, s1));
        Polynomial aq = std::get<Polynomial>(mrdi::load(dq, s2));
        CHECK_THROWS_AS(ap + aq, Error);
        CHECK(kind_of([&] { (void)(ap + aq); }) == ErrorKind::ParentMismatch);
    }

    TEST_CASE("a top-level parent doc merges with dependents") {
        FieldPtr f = cas::make_finite_field(Integer(7), 2);
        auto [r, gens] = cas::make_polynomial_ring(f, {"x", "y"});
        Document dring = mrdi::save(cas::Value(r));
        Document dpoly = mrdi::save(cas::Value(gens[0] + gens[1]));

        Session s;
        RingPtr loaded_ring = std::get<RingPtr>(mrdi::load(dring, s));
        Polynomial lp = std::get<Polynomial>(mrdi::load(dpoly, s));
        CHECK(lp.ring() == loaded_ring);

        // Order does not matter: dependent first, then the parent doc.
        Session s2;
        Polynomial lp2 = std::get<Polynomial>(mrdi::load(dpoly, s2));
        RingPtr ring2 = std::get<RingPtr>(mrdi::load(dring, s2));
        CHECK(lp2.ring() == ring2);
    }

    TEST_CASE("load log records each document") {
        Session s;
        mrdi::load(mrdi::save(cas::Value(Integer(1))), s);
        mrdi::load(mrdi::save(cas::Value(Integer(2))), s);
        CHECK(s.load_log().size() == 2);
    }

    TEST_CASE("a UUID cannot name different content within one session") {
        Document good = mrdi::save(sample_polynomial());
        Json tampered = good.root;
        // Same ring UUID, different payload.
        tampered["_refs"][kRingUuid]["data"]["variables"] = {"x", "z"};
        Session s;
        mrdi::load(good, s);
        try {
            mrdi::load(Document(tampered), s);
            FAIL("expected MalformedPayload");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::MalformedPayload);
            CHECK(std::string(e.what()).find("already names different content") !=
                  std::string::npos);
        }
    }
}

TEST_SUITE("load errors") {
    TEST_CASE("garbage is rejected as malformed") {
        CHECK(kind_of([] { Document::parse("{not json"); }) ==
              ErrorKind::MalformedPayload);
        CHECK(kind_of([] { Document::parse("[1,2,3"); }) ==
              ErrorKind::MalformedPayload);
    }

    TEST_CASE("missing files raise IoError") {
        Session s;
        CHECK(kind_of([&] { mrdi::load_file("/nonexistent/q.mrdi", s); }) ==
              ErrorKind::IoError);
        CHECK(kind_of([] { mrdi::read_document_file("/nonexistent/q.mrdi"); }) ==
              ErrorKind::IoError);
    }

    TEST_CASE("future formats are rejected, not guessed at") {
        Json j = mrdi::save(cas::Value(Integer(5))).root;
        j["_format"] = 99;
        Session s;
        CHECK(kind_of([&] { mrdi::load(Document(j), s); }) ==
              ErrorKind::VersionTooNew);
    }

    TEST_CASE("foreign namespaces and unknown types are named errors") {
        Json j = mrdi::save(cas::Value(Integer(5))).root;
        j["_ns"]["name"] = "otherlib";
        Session s;
        CHECK(kind_of([&] { mrdi::load(Document(j), s); }) ==
              ErrorKind::UnknownNamespace);

        Json k = mrdi::save(cas::Value(Integer(5))).root;
        k["_type"] = "Gadget";
        Session s2;
        CHECK(kind_of([&] { mrdi::load(Document(k), s2); }) ==
              ErrorKind::UnknownType);
    }

    TEST_CASE("older namespace versions load with a warning") {
        Json j = mrdi::save(cas::Value(Integer(5))).root;
        j["_ns"]["version"] = "0.0.9";
        Session s;
        cas::Value v = mrdi::load(Document(j), s);
        CHECK(cas::value_equal(v, cas::Value(Integer(5))));
        REQUIRE(s.warnings().size() == 1);
        CHECK(s.warnings()[0].find("0.0.9") != std::string::npos);
    }

    TEST_CASE("semantic checks run at load time") {
        // x^2 + 2 is irreducible mod 7 but not the canonical choice (x^2 + 1).
        FieldPtr f = cas::make_finite_field(Integer(7), 2);
        Json j = mrdi::save(cas::Value(f)).root;
        j["data"]["defining_polynomial"] = {"2", "0", "1"};
        CHECK(cas::is_irreducible_mod_p(
            {Integer(2), Integer(0), Integer(1)}, Integer(7)));
        Session s;
        try {
            mrdi::load(Document(j), s);
            FAIL("expected MalformedPayload");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::MalformedPayload);
            CHECK(std::string(e.what()).find("not the canonical defining") !=
                  std::string::npos);
        }

        // A composite characteristic passes structural validation but not load.
        Json k = mrdi::save(cas::Value(cas::make_prime_field(Integer(7)))).root;
        k["data"]["characteristic"] = "6";
        CHECK(mrdi::validate(Document(k)).empty());
        Session s2;
        CHECK(kind_of([&] { mrdi::load(Document(k), s2); }) ==
              ErrorKind::MalformedPayload);
    }
}

TEST_SUITE("validate") {
    TEST_CASE("well-formed documents have no violations") {
        testutil::ValueGen gen(31);
        for (const auto& v : gen.corpus(60)) {
            CHECK(mrdi::validate(mrdi::save(v)).empty());
        }
    }

    TEST_CASE("missing and unknown keys") {
        Json j = mrdi::save(cas::Value(Integer(7))).root;
        j.erase("data");
        auto vs = mrdi::validate(Document(j));
        CHECK(has_violation(vs, Violation::Kind::Schema,
                            "missing required key 'data'"));

        Json k = mrdi::save(cas::Value(Integer(7))).root;
        k["extra"] = 1;
        CHECK(has_violation(mrdi::validate(Document(k)), Violation::Kind::Schema,
                            "unknown key 'extra'"));
    }

    TEST_CASE("numbers must be canonical decimal strings") {
        for (const char* bad : {"007", "-0", "+1", "1.5", ""}) {
            Json j = mrdi::save(cas::Value(Integer(7))).root;
            j["data"] = bad;
            CHECK_MESSAGE(!mrdi::validate(Document(j)).empty(), bad);
        }
        Json j = mrdi::save(cas::Value(Integer(7))).root;
        j["data"] = 7;  // a JSON number, not a string
        CHECK(!mrdi::validate(Document(j)).empty());
        // "-7" stays fine.
        Json k = mrdi::save(cas::Value(Integer(-7))).root;
        CHECK(mrdi::validate(Document(k)).empty());
    }

    TEST_CASE("polynomial payload grammar") {
        Json base = mrdi::save(sample_polynomial()).root;

        Json zero_coeff = base;
        zero_coeff["data"]["terms"][0][1] = {"0", "0"};
        CHECK(has_violation(mrdi::validate(Document(zero_coeff)),
                            Violation::Kind::Schema,
                            "zero coefficients are never stored"));

        Json swapped = base;
        std::swap(swapped["data"]["terms"][0], swapped["data"]["terms"][1]);
        CHECK(has_violation(mrdi::validate(Document(swapped)),
                            Violation::Kind::Schema, "strictly descending"));

        Json dup = base;
        dup["data"]["terms"][1] = dup["data"]["terms"][0];
        CHECK(has_violation(mrdi::validate(Document(dup)),
                            Violation::Kind::Schema, "strictly descending"));

        Json arity = base;
        arity["data"]["terms"][0][0] = {"2", "0", "1"};
        CHECK(has_violation(mrdi::validate(Document(arity)),
                            Violation::Kind::Schema, "expected 2 exponents"));

        Json coeff_len = base;
        coeff_len["data"]["terms"][0][1] = {"1"};  // degree-2 field
        CHECK(!mrdi::validate(Document(coeff_len)).empty());
    }

    TEST_CASE("matrix payload grammar") {
        Json j = mrdi::save(cas::Value(IntMatrix(
                     2, 2, {Integer(1), Integer(2), Integer(3), Integer(4)})))
                     .root;
        Json wrong_rows = j;
        wrong_rows["data"]["rows"] = "3";
        CHECK(!mrdi::validate(Document(wrong_rows)).empty());

        Json ragged = j;
        ragged["data"]["entries"][0] = {"1"};
        CHECK(!mrdi::validate(Document(ragged)).empty());
    }

    TEST_CASE("refs closure and strictness") {
        Json base = mrdi::save(sample_polynomial()).root;

        // Dangling parent: point the top value at a UUID with no fragment.
        Json dangling = base;
        dangling["_type"]["params"] = "00000000-0000-8000-8000-000000000000";
        CHECK(has_violation(mrdi::validate(Document(dangling)),
                            Violation::Kind::Closure, "has no fragment"));

        // A fragment nothing references is drift.
        Json extra = base;
        extra["_refs"]["11111111-1111-8111-9111-111111111111"] = {
            {"_type", "PrimeField"}, {"data", {{"characteristic", "5"}}}};
        CHECK(has_violation(mrdi::validate(Document(extra)),
                            Violation::Kind::Schema,
                            "not referenced by the document"));

        // Fragments hold parents only.
        Json elem = base;
        elem["_refs"]["22222222-2222-8222-9222-222222222222"] = {
            {"_type", Json{{"name", "FieldElement"}, {"params", kGf49Uuid}}},
            {"data", {"1", "0"}}};
        CHECK(has_violation(mrdi::validate(Document(elem)),
                            Violation::Kind::Schema, "parents"));
    }

    TEST_CASE("reference cycles are reported") {
        Json base = mrdi::save(sample_polynomial()).root;
        const char* a = "33333333-3333-8333-9333-333333333333";
        const char* b = "44444444-4444-8444-9444-444444444444";
        Json doc = base;
        doc["_type"]["params"] = a;
        doc["_refs"] = Json::object();
        doc["_refs"][a] = {{"_type", Json{{"name", "PolynomialRing"},
                                          {"params", b}}},
                           {"data", {{"variables", {"x"}}}}};
        doc["_refs"][b] = {{"_type", Json{{"name", "PolynomialRing"},
                                          {"params", a}}},
                           {"data", {{"variables", {"y"}}}}};
        CHECK(has_violation(mrdi::validate(Document(doc)),
                            Violation::Kind::Cycle, "reference cycle"));
    }

    TEST_CASE("registry violations") {
        Json j = mrdi::save(cas::Value(Integer(7))).root;
        j["_ns"]["name"] = "otherlib";
        CHECK(has_violation(mrdi::validate(Document(j)),
                            Violation::Kind::Registry, "otherlib"));

        Json k = mrdi::save(cas::Value(Integer(7))).root;
        k["_type"] = "Gadget";
        CHECK(has_violation(mrdi::validate(Document(k)),
                            Violation::Kind::Registry, "Gadget"));
    }

    TEST_CASE("kind names are stable") {
        CHECK(mrdi::to_string(Violation::Kind::Closure) == "closure");
        CHECK(mrdi::to_string(Violation::Kind::Cycle) == "cycle");
        CHECK(mrdi::to_string(Violation::Kind::Schema) == "schema");
        CHECK(mrdi::to_string(Violation::Kind::Registry) == "registry");
    }
}

TEST_SUITE("format history") {
    TEST_CASE("registered types cover the kernel surface") {
        for (const char* t : {"Integer", "PrimeField", "FiniteField",
                              "FieldElement", "PolynomialRing", "Polynomial",
                              "IntMatrix"}) {
            CHECK(mrdi::is_registered_type(t));
        }
        CHECK(!mrdi::is_registered_type("Gadget"));
    }

    TEST_CASE("upgrade is the identity at the current version") {
        Document d = mrdi::save(cas::Value(Integer(9)));
        Document u = mrdi::upgrade(d, mrdi::CURRENT_FORMAT_VERSION);
        CHECK(u.canonical_bytes() == d.canonical_bytes());
    }

    TEST_CASE("downgrades and gaps raise MissingUpgradePath") {
        Document d = mrdi::save(cas::Value(Integer(9)));
        CHECK(kind_of([&] { mrdi::upgrade(d, 1); }) ==
              ErrorKind::MissingUpgradePath);
        CHECK(kind_of([&] { mrdi::upgrade(d, 0); }) == ErrorKind::InvalidInput);
        CHECK(kind_of([&] { mrdi::upgrade(d, 5); }) ==
              ErrorKind::MissingUpgradePath);
    }

    TEST_CASE("v1 fixtures upgrade byte-identically to their v2 twins") {
        const std::string dir = std::string(MATHREPRO_FIXTURES) + "/mrdi_v1";
        for (const char* stem : {"integer", "element", "poly_prime", "poly_ext",
                                 "matrix"}) {
            Document v1 = mrdi::read_document_file(dir + "/" + stem + "_v1.mrdi");
            Document v2 = mrdi::read_document_file(dir + "/" + stem + "_v2.mrdi");
            REQUIRE(v1.format_version() == 1);
            REQUIRE(v2.format_version() == 2);
            Document up = mrdi::upgrade(v1, 2);
            CHECK(up.canonical_bytes() == v2.canonical_bytes());
            CHECK(mrdi::validate(up).empty());
            // The old file loads directly (the chain runs inside load).
            Session s1, s2;
            CHECK(cas::value_equal(mrdi::load(v1, s1), mrdi::load(v2, s2)));
        }
    }

    TEST_CASE("a local registry can extend the chain") {
        mrdi::UpgradeRegistry reg;
        mrdi::UpgradeScript v1to2;
        v1to2.from_version = 1;
        v1to2.transform = [](const Json& j) { return j; };
        mrdi::UpgradeScript v2to3;
        v2to3.from_version = 2;
        v2to3.description = "tag documents with a checked flag";
        v2to3.transform = [](const Json& j) {
            Json out = j;
            out["data"] = Json{{"value", j.at("data")}, {"checked", true}};
            return out;
        };
        reg.register_script(v1to2);
        reg.register_script(v2to3);
        CHECK(reg.find(2) != nullptr);
        CHECK(reg.find(3) == nullptr);

        Document d = mrdi::save(cas::Value(Integer(6)));
        Document u = mrdi::upgrade(d, 3, reg);
        CHECK(u.format_version() == 3);
        CHECK(u.root["data"]["value"] == "6");
        CHECK(u.root["data"]["checked"] == true);
        // The source document is untouched.
        CHECK(d.format_version() == 2);
    }
}
