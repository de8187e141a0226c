#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <regex>
#include <string>
#include <vector>

#include "doctest.h"
#include "mathrepro/env/manifest.hpp"
#include "mathrepro/env/semver.hpp"
#include "mathrepro/env/toml.hpp"
#include "mathrepro/env/tree_hash.hpp"
#include "mathrepro/env/versioninfo.hpp"
#include "mathrepro/error.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace mathrepro;
using env::DependencySpec;
using env::Discrepancy;
using env::ManifestFile;
using env::ProjectFile;
using env::SemVer;
using env::TomlDoc;
using env::VersionBound;

namespace {

constexpr const char* kEmptyTreeHash =
    "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
constexpr const char* kFixtureTreeHash =
    "a92395aeadda1bf3bc9338ffdec4f9c177cdf89af2ffd41b870bf39e6701a870";

/// Lays out a small registry:
///   Alpha 1.0.0 / 1.2.0 / 2.0.0  (leaf)
///   Beta  0.3.0                  (depends on Alpha, compat >=1.0, <2.0)
struct RegistryFixture {
    testutil::TempDir tmp;
    std::string root;

    RegistryFixture() : root(tmp.path() + "/registry") {
        add_package("Alpha", "1.0.0", "a1a1", {}, {});
        add_package("Alpha", "1.2.0", "a1a1", {}, {});
        add_package("Alpha", "2.0.0", "a1a1", {}, {});
        add_package("Beta", "0.3.0", "b2b2", {{"Alpha", "a1a1"}},
                    {{"Alpha", ">=1.0, <2.0"}});
    }

    void add_package(const std::string& name, const std::string& version,
                     const std::string& uuid,
                     std::map<std::string, std::string> deps,
                     std::map<std::string, std::string> compat) {
        fs::create_directories(root + "/" + name + "/" + version + "/src");
        ProjectFile p;
        p.name = name;
        p.uuid = uuid;
        p.version = version;
        p.deps = std::move(deps);
        p.compat = std::move(compat);
        env::write_project_file(
            root + "/" + name + "/" + version + "/Project.toml", p);
        testutil::write_file(
            root + "/" + name + "/" + version + "/src/lib.txt",
            name + " " + version + "\n");
    }
};

bool bound_admits(const std::string& bound, const std::string& version) {
    return VersionBound::parse(bound).admits(SemVer::parse(version));
}

}  // namespace

TEST_SUITE("semver") {
    TEST_CASE("parsing zero-fills missing components") {
        CHECK(SemVer::parse("1.2.3") == SemVer{1, 2, 3});
        CHECK(SemVer::parse("1.2") == SemVer{1, 2, 0});
        CHECK(SemVer::parse("7") == SemVer{7, 0, 0});
        CHECK(SemVer::parse("0.0.0") == SemVer{0, 0, 0});
    }

    TEST_CASE("rejects malformed versions") {
        for (const char* bad :
             {"", "1.2.3.4", "a.b.c", "1..2", "01.0.0", "1.-2.0", "1.2 .3",
              "v1.2.3", "1.2.3-rc1"}) {
            CHECK_THROWS_AS(SemVer::parse(bad), Error);
        }
    }

    TEST_CASE("ordering is numeric, not lexicographic") {
        CHECK(SemVer::parse("1.10.0") > SemVer::parse("1.9.9"));
        CHECK(SemVer::parse("2.0.0") > SemVer::parse("1.99.99"));
        CHECK(SemVer::parse("1.2") == SemVer::parse("1.2.0"));
        CHECK(SemVer{1, 2, 3}.to_string() == "1.2.3");
    }

    TEST_CASE("bounds") {
        CHECK(bound_admits(">=1.0, <2.0", "1.5.0"));
        CHECK(bound_admits(">=1.0, <2.0", "1.0.0"));
        CHECK(!bound_admits(">=1.0, <2.0", "2.0.0"));
        CHECK(!bound_admits(">=1.0, <2.0", "0.9.9"));
        CHECK(bound_admits("1.2.3", "1.2.3"));    // bare version = exact
        CHECK(!bound_admits("1.2.3", "1.2.4"));
        CHECK(bound_admits("=1.2", "1.2.0"));
        CHECK(!bound_admits(">1.0", "1.0.0"));
        CHECK(bound_admits("<=1.0", "1.0.0"));
        CHECK(!bound_admits("<=1.0", "1.0.1"));
        CHECK(bound_admits("", "42.0.0"));  // empty bound admits everything
        CHECK_THROWS_AS(VersionBound::parse("~1.0"), Error);
        CHECK_THROWS_AS(VersionBound::parse(">="), Error);
        CHECK_THROWS_AS(VersionBound::parse(">=1.0,,<2"), Error);
    }
}

TEST_SUITE("toml") {
    TEST_CASE("parses the pinning subset") {
        TomlDoc doc = env::toml_parse(
            "# header comment\n"
            "name = \"Demo\"\n"
            "version = \"1.0.0\"\n"
            "\n"
            "[deps]\n"
            "Alpha = \"a1a1\"  # trailing comment\n"
            "\n"
            "[deps.nested]\n"
            "key = \"with \\\"quotes\\\" and \\\\ backslash\"\n");
        CHECK(doc.get("", "name") == "Demo");
        CHECK(doc.get("deps", "Alpha") == "a1a1");
        CHECK(doc.get("deps.nested", "key") == "with \"quotes\" and \\ backslash");
        CHECK(doc.has("deps", "Alpha"));
        CHECK(!doc.has("deps", "Gamma"));
        CHECK(doc.get("missing", "x") == "");
    }

    TEST_CASE("rejects what the subset excludes, naming the line") {
        for (const char* bad : {
                 "x = 1\n",                  // unquoted value
                 "x = \"unterminated\n",     // missing close quote
                 "[table\n",                 // unterminated header
                 "just some text\n",         // not a key-value
                 "x = \"a\"\nx = \"b\"\n",   // duplicate key
                 "[t]\n[t]\n",               // duplicate table
             }) {
            CHECK_THROWS_AS(env::toml_parse(bad), Error);
        }
        try {
            env::toml_parse("ok = \"fine\"\nbroken line\n");
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ParseError);
            CHECK(std::string(e.what()).find("2") != std::string::npos);
        }
    }

    TEST_CASE("write is deterministic and round-trips") {
        TomlDoc doc;
        doc.set("zeta", "k", "v");
        doc.set("", "b", "2");
        doc.set("", "a", "1");
        doc.set("alpha", "y", "yy");
        doc.set("alpha", "x", "xx");
        std::string text = env::toml_write(doc);
        // Root keys first, tables sorted, keys sorted inside each.
        CHECK(text.find("a = ") < text.find("b = "));
        CHECK(text.find("b = ") < text.find("[alpha]"));
        CHECK(text.find("[alpha]") < text.find("[zeta]"));
        CHECK(text.find("x = ") < text.find("y = "));
        TomlDoc back = env::toml_parse(text);
        CHECK(back.tables == doc.tables);
        CHECK(env::toml_write(back) == text);
    }

    TEST_CASE("escapes survive a round-trip") {
        TomlDoc doc;
        doc.set("", "s", "quote \" backslash \\ end");
        TomlDoc back = env::toml_parse(env::toml_write(doc));
        CHECK(back.get("", "s") == "quote \" backslash \\ end");
    }
}

TEST_SUITE("tree hash") {
    TEST_CASE("frozen digest of the checked-in fixture tree") {
        CHECK(env::tree_hash(std::string(MATHREPRO_FIXTURES) + "/tree") ==
              kFixtureTreeHash);
    }

    TEST_CASE("empty roots hash to the empty-string digest") {
        testutil::TempDir tmp;
        CHECK(env::tree_hash(tmp.path()) == kEmptyTreeHash);
        // Recursively empty directories are invisible.
        fs::create_directories(tmp.path() + "/a/b/c");
        CHECK(env::tree_hash(tmp.path()) == kEmptyTreeHash);
    }

    TEST_CASE("digest ignores timestamps and symlinks, tracks bytes and names") {
        testutil::TempDir tmp;
        testutil::write_file(tmp.path() + "/f.txt", "payload\n");
        testutil::write_file(tmp.path() + "/sub/g.txt", "nested\n");
        const std::string h0 = env::tree_hash(tmp.path());

        // mtime changes are invisible.
        fs::last_write_time(tmp.path() + "/f.txt",
                            fs::file_time_type::clock::now() -
                                std::chrono::hours(999));
        CHECK(env::tree_hash(tmp.path()) == h0);

        // Symlinks are skipped entirely.
        std::error_code ec;
        fs::create_symlink(tmp.path() + "/f.txt", tmp.path() + "/link.txt", ec);
        if (!ec) CHECK(env::tree_hash(tmp.path()) == h0);

        // A single content byte is visible.
        testutil::write_file(tmp.path() + "/f.txt", "Payload\n");
        const std::string h1 = env::tree_hash(tmp.path());
        CHECK(h1 != h0);
        testutil::write_file(tmp.path() + "/f.txt", "payload\n");
        CHECK(env::tree_hash(tmp.path()) == h0);

        // So is a name.
        fs::rename(tmp.path() + "/sub/g.txt", tmp.path() + "/sub/h.txt");
        CHECK(env::tree_hash(tmp.path()) != h0);
    }

    TEST_CASE("non-directories raise IoError") {
        testutil::TempDir tmp;
        testutil::write_file(tmp.path() + "/plain.txt", "x\n");
        CHECK_THROWS_AS(env::tree_hash(tmp.path() + "/plain.txt"), Error);
        CHECK_THROWS_AS(env::tree_hash(tmp.path() + "/missing"), Error);
    }
}

TEST_SUITE("manifest") {
    TEST_CASE("project and manifest files round-trip") {
        testutil::TempDir tmp;
        ProjectFile p;
        p.name = "Demo";
        p.uuid = "d3d3";
        p.version = "0.1.0";
        p.deps = {{"Alpha", "a1a1"}, {"Beta", "b2b2"}};
        p.compat = {{"Alpha", ">=1.0"}};
        env::write_project_file(tmp.path() + "/Project.toml", p);
        ProjectFile q = env::read_project_file(tmp.path() + "/Project.toml");
        CHECK(q.name == p.name);
        CHECK(q.uuid == p.uuid);
        CHECK(q.version == p.version);
        CHECK(q.deps == p.deps);
        CHECK(q.compat == p.compat);

        ManifestFile m;
        m.deps = {{"Alpha", "a1a1", "1.2.0", "feed"},
                  {"Beta", "b2b2", "0.3.0", ""}};
        env::write_manifest_file(tmp.path() + "/Manifest.toml", m);
        CHECK(env::read_manifest_file(tmp.path() + "/Manifest.toml") == m);

        CHECK_THROWS_AS(env::read_project_file(tmp.path() + "/none.toml"),
                        Error);
    }

    TEST_CASE("resolver pins transitive deps at the max admitted version") {
        RegistryFixture reg;
        ProjectFile p;
        p.name = "App";
        p.deps = {{"Beta", "b2b2"}};
        ManifestFile m = env::write_manifest(p, reg.root);
        REQUIRE(m.deps.size() == 2);  // Beta plus transitive Alpha
        CHECK(m.deps[0].name == "Alpha");
        CHECK(m.deps[0].version == "1.2.0");  // max under Beta's "<2.0"
        CHECK(m.deps[1].name == "Beta");
        CHECK(m.deps[1].version == "0.3.0");
        for (const auto& d : m.deps) {
            CHECK(d.tree_hash.size() == 64);
            CHECK(d.tree_hash ==
                  env::tree_hash(reg.root + "/" + d.name + "/" + d.version));
        }
    }

    TEST_CASE("a direct unbounded dep picks the newest version") {
        RegistryFixture reg;
        ProjectFile p;
        p.deps = {{"Alpha", ""}};
        ManifestFile m = env::write_manifest(p, reg.root);
        REQUIRE(m.deps.size() == 1);
        CHECK(m.deps[0].version == "2.0.0");
    }

    TEST_CASE("bounds from all consumers apply at once") {
        RegistryFixture reg;
        ProjectFile p;
        p.deps = {{"Alpha", ""}, {"Beta", ""}};
        p.compat = {{"Alpha", ">=1.1"}};  // with Beta's "<2.0" leaves 1.2.0
        ManifestFile m = env::write_manifest(p, reg.root);
        REQUIRE(m.deps.size() == 2);
        CHECK(m.deps[0].name == "Alpha");
        CHECK(m.deps[0].version == "1.2.0");
    }

    TEST_CASE("conflicts and unknown packages are errors, not guesses") {
        RegistryFixture reg;
        ProjectFile conflicted;
        conflicted.name = "App";
        conflicted.deps = {{"Alpha", ""}, {"Beta", ""}};
        conflicted.compat = {{"Alpha", ">=2.0"}};  // Beta insists on <2.0
        try {
            env::write_manifest(conflicted, reg.root);
            FAIL("expected UnresolvableDependency");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnresolvableDependency);
            CHECK(std::string(e.what()).find("Alpha") != std::string::npos);
        }

        ProjectFile missing;
        missing.deps = {{"Gamma", ""}};
        CHECK_THROWS_AS(env::write_manifest(missing, reg.root), Error);
    }

    TEST_CASE("registry packages must agree with their directory") {
        RegistryFixture reg;
        // Declare a version that contradicts the directory name.
        ProjectFile bad;
        bad.name = "Alpha";
        bad.version = "9.9.9";
        env::write_project_file(reg.root + "/Alpha/2.0.0/Project.toml", bad);
        ProjectFile p;
        p.deps = {{"Alpha", ""}};
        try {
            env::write_manifest(p, reg.root);
            FAIL("expected UnresolvableDependency");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnresolvableDependency);
            CHECK(std::string(e.what()).find("9.9.9") != std::string::npos);
        }
    }

    TEST_CASE("manifests are deterministic") {
        RegistryFixture reg;
        ProjectFile p;
        p.deps = {{"Beta", ""}};
        ManifestFile a = env::write_manifest(p, reg.root);
        ManifestFile b = env::write_manifest(p, reg.root);
        CHECK(a == b);
        testutil::TempDir tmp;
        env::write_manifest_file(tmp.path() + "/m1.toml", a);
        env::write_manifest_file(tmp.path() + "/m2.toml", b);
        CHECK(testutil::read_file(tmp.path() + "/m1.toml") ==
              testutil::read_file(tmp.path() + "/m2.toml"));
    }

    TEST_CASE("verify reports exactly what changed") {
        RegistryFixture reg;
        ProjectFile p;
        p.deps = {{"Beta", ""}};
        ManifestFile m = env::write_manifest(p, reg.root);
        CHECK(env::verify_manifest(m, reg.root).empty());

        // Content drift: one byte inside the pinned Alpha tree.
        testutil::write_file(reg.root + "/Alpha/1.2.0/src/lib.txt",
                             "Alpha 1.2.0 tampered\n");
        auto ds = env::verify_manifest(m, reg.root);
        REQUIRE(ds.size() == 1);
        CHECK(ds[0].kind == Discrepancy::Kind::ContentChanged);
        CHECK(ds[0].name == "Alpha");

        // Version drift: pinned directory gone, others remain.
        fs::remove_all(reg.root + "/Alpha/1.2.0");
        ds = env::verify_manifest(m, reg.root);
        REQUIRE(ds.size() == 1);
        CHECK(ds[0].kind == Discrepancy::Kind::VersionChanged);

        // Whole package gone.
        fs::remove_all(reg.root + "/Alpha");
        ds = env::verify_manifest(m, reg.root);
        REQUIRE(ds.size() == 1);
        CHECK(ds[0].kind == Discrepancy::Kind::Missing);
    }

    TEST_CASE("discrepancy kind names are stable") {
        CHECK(env::to_string(Discrepancy::Kind::Missing) == "missing");
        CHECK(env::to_string(Discrepancy::Kind::VersionChanged) ==
              "version-changed");
        CHECK(env::to_string(Discrepancy::Kind::ContentChanged) ==
              "content-changed");
    }
}

TEST_SUITE("versioninfo") {
    TEST_CASE("brief report carries tool, build, os, cpu, timestamp") {
        env::EnvironmentReport r = env::collect_versioninfo(env::Verbosity::Brief);
        CHECK(r.tool_version == MATHREPRO_VERSION);
        CHECK(!r.build_id.empty());
        CHECK(r.memory_total.empty());
        CHECK(r.dependencies.empty());
        CHECK(std::regex_match(
            r.timestamp,
            std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));

        auto lines = env::format_report(r);
        REQUIRE(lines.size() == 5);
        CHECK(lines[0].rfind("tool: mathrepro ", 0) == 0);
        CHECK(lines[1].rfind("build id: ", 0) == 0);
        CHECK(lines[2].rfind("os: ", 0) == 0);
        CHECK(lines[3].rfind("cpu: ", 0) == 0);
        CHECK(lines[4].rfind("timestamp: ", 0) == 0);
    }

    TEST_CASE("full report reads dependencies from a manifest") {
        RegistryFixture reg;
        ProjectFile p;
        p.deps = {{"Beta", ""}};
        ManifestFile m = env::write_manifest(p, reg.root);
        testutil::TempDir tmp;
        const std::string mpath = tmp.path() + "/Manifest.toml";
        env::write_manifest_file(mpath, m);

        env::EnvironmentReport r =
            env::collect_versioninfo(env::Verbosity::Full, mpath);
        CHECK(!r.memory_total.empty());
        REQUIRE(r.dependencies.size() == 2);
        CHECK(r.dependencies[0].name == "Alpha");
        CHECK(r.dependencies[1].name == "Beta");
        auto lines = env::format_report(r);
        bool saw_deps_header = false;
        for (const auto& l : lines) {
            if (l.rfind("dependencies (2):", 0) == 0) saw_deps_header = true;
        }
        CHECK(saw_deps_header);

        // Unreadable manifests degrade to an empty list, never an error.
        env::EnvironmentReport r2 = env::collect_versioninfo(
            env::Verbosity::Full, tmp.path() + "/absent.toml");
        CHECK(r2.dependencies.empty());
    }
}
