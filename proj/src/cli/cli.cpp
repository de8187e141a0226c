#include "mathrepro/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mathrepro/cas/printer.hpp"
#include "mathrepro/cas/snf.hpp"
#include "mathrepro/env/manifest.hpp"
#include "mathrepro/env/tree_hash.hpp"
#include "mathrepro/env/versioninfo.hpp"
#include "mathrepro/error.hpp"
#include "mathrepro/mrdi/document.hpp"
#include "mathrepro/mrdi/serialize.hpp"
#include "mathrepro/mrdi/session.hpp"
#include "mathrepro/mrdi/upgrade.hpp"
#include "mathrepro/mrdi/validate.hpp"
#include "mathrepro/runner/extract.hpp"
#include "mathrepro/runner/interp.hpp"
#include "mathrepro/runner/run.hpp"

namespace mathrepro::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;
constexpr int kIoError = 3;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::IoError, "cannot read file: " + path);
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(line);
            line.clear();
        } else {
            line += c;
        }
    }
    if (!line.empty()) lines.push_back(line);
    return lines;
}

int do_eval(const std::string& script_path, std::ostream& out) {
    const std::string text = read_text_file(script_path);
    runner::Environment env;
    for (const std::string& stmt : split_lines(text)) {
        runner::EvalResult r = runner::eval_line(stmt, env);
        for (const auto& l : r.lines) out << l << "\n";
        if (r.error) return kVerificationFailure;
    }
    return kOk;
}

int do_save(const std::string& out_path, const std::string& expr,
            std::ostream& out) {
    runner::Environment env;
    runner::IValue v = runner::eval_expression(expr, env);
    if (v.kind != runner::IValue::Kind::Cas) {
        throw Error(ErrorKind::InvalidInput,
                    "save needs a kernel value, the expression produced something else");
    }
    mrdi::save_file(out_path, v.value);
    out << "saved " << out_path << "\n";
    return kOk;
}

int do_show(const std::string& path, std::ostream& out, std::ostream& err) {
    mrdi::Session session;
    cas::Value v = mrdi::load_file(path, session);
    for (const auto& w : session.warnings()) err << "warning: " << w << "\n";
    for (const auto& line : cas::print_value(v)) out << line << "\n";
    return kOk;
}

int do_validate(const std::string& path, std::ostream& out) {
    mrdi::Document doc = mrdi::read_document_file(path);
    // Older formats are judged the way load sees them: upgraded first.
    if (doc.format_version() < mrdi::CURRENT_FORMAT_VERSION && doc.format_version() >= 1) {
        doc = mrdi::upgrade(doc, mrdi::CURRENT_FORMAT_VERSION);
    }
    std::vector<mrdi::Violation> violations = mrdi::validate(doc);
    if (violations.empty()) {
        out << "ok\n";
        return kOk;
    }
    for (const auto& v : violations) {
        out << to_string(v.kind) << ": " << v.path << ": " << v.message << "\n";
    }
    return kVerificationFailure;
}

int do_upgrade(const std::string& path, int target, std::ostream& out) {
    mrdi::Document doc = mrdi::read_document_file(path);
    const int from = doc.format_version();
    if (from == target) {
        // Byte-level no-op: the file is not rewritten at all.
        out << path << " already at format version " << target << "\n";
        return kOk;
    }
    mrdi::Document upgraded = mrdi::upgrade(doc, target);
    mrdi::write_document_file(path, upgraded);
    out << "upgraded " << path << " from format version " << from << " to "
        << target << "\n";
    return kOk;
}

cas::IntMatrix read_matrix_file(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<std::vector<cas::Integer>> rows;
    std::size_t line_no = 0;
    for (const std::string& line : split_lines(text)) {
        ++line_no;
        std::istringstream is(line);
        std::vector<cas::Integer> row;
        std::string tok;
        while (is >> tok) {
            try {
                row.emplace_back(tok);
            } catch (const Error&) {
                throw Error(ErrorKind::ParseError,
                            path + ":" + std::to_string(line_no) +
                                ": not an integer: '" + tok + "'");
            }
        }
        if (row.empty()) continue;  // blank line
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorKind::ParseError,
                        path + ":" + std::to_string(line_no) + ": row has " +
                            std::to_string(row.size()) + " entries, expected " +
                            std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(ErrorKind::ParseError, path + ": no matrix rows found");
    }
    std::vector<cas::Integer> entries;
    for (const auto& row : rows) {
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return cas::IntMatrix(rows.size(), rows.front().size(), entries);
}

int do_snf(const std::string& path, bool generic, std::ostream& out) {
    cas::IntMatrix m = read_matrix_file(path);
    cas::IntMatrix d = generic ? cas::snf_euclidean(m) : cas::snf_integer(m);
    for (const auto& line : cas::print_matrix(d)) out << line << "\n";
    return kOk;
}

int do_versioninfo(bool full, std::ostream& out) {
    auto report = env::collect_versioninfo(full ? env::Verbosity::Full
                                                : env::Verbosity::Brief);
    for (const auto& line : env::format_report(report)) out << line << "\n";
    return kOk;
}

int do_hash_tree(const std::string& dir, std::ostream& out) {
    out << env::tree_hash(dir) << "\n";
    return kOk;
}

int do_env_write_manifest(const std::string& project_dir,
                          const std::string& registry, std::ostream& out) {
    namespace fs = std::filesystem;
    const std::string project_path = (fs::path(project_dir) / "Project.toml").string();
    const std::string manifest_path = (fs::path(project_dir) / "Manifest.toml").string();
    env::ProjectFile project = env::read_project_file(project_path);
    env::ManifestFile manifest = env::write_manifest(project, registry);
    env::write_manifest_file(manifest_path, manifest);
    out << "wrote " << manifest_path << " (" << manifest.deps.size()
        << (manifest.deps.size() == 1 ? " dependency" : " dependencies") << ")\n";
    return kOk;
}

int do_env_verify(const std::string& project_dir, const std::string& registry,
                  std::ostream& out) {
    namespace fs = std::filesystem;
    const std::string manifest_path = (fs::path(project_dir) / "Manifest.toml").string();
    env::ManifestFile manifest = env::read_manifest_file(manifest_path);
    std::vector<env::Discrepancy> found = env::verify_manifest(manifest, registry);
    if (found.empty()) {
        out << "ok\n";
        return kOk;
    }
    for (const auto& d : found) {
        out << "discrepancy: " << env::to_string(d.kind) << ": " << d.name << ": "
            << d.detail << "\n";
    }
    return kVerificationFailure;
}

struct DocRun {
    std::string path;
    runner::RunReport report;
};

int do_doctest(const std::vector<std::string>& docs, const std::string& prelude_path,
               bool json, bool fix, std::ostream& out) {
    std::vector<std::string> prelude;
    if (!prelude_path.empty()) prelude = split_lines(read_text_file(prelude_path));

    std::vector<DocRun> runs;
    for (const std::string& path : docs) {
        const std::string text = read_text_file(path);
        std::vector<runner::DoctestBlock> blocks = runner::extract_blocks(text);
        DocRun run{path, runner::run_blocks(blocks, text, prelude)};
        if (fix) {
            const std::string fixed = runner::fix_document(text, run.report);
            if (fixed != text) {
                std::ofstream outf(path, std::ios::binary | std::ios::trunc);
                if (!outf || !(outf << fixed) || (outf.close(), outf.fail())) {
                    throw Error(ErrorKind::IoError, "cannot write file: " + path);
                }
            }
        }
        runs.push_back(std::move(run));
    }

    bool all_pass = true;
    for (const auto& run : runs) {
        if (run.report.failed > 0 || run.report.errored > 0) all_pass = false;
    }

    if (json) {
        // One stable top-level shape regardless of how many documents ran.
        std::string payload = "{\n  \"documents\": [";
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (i) payload += ",";
            std::string body = runner::run_report_json(runs[i].report);
            // Wrap each report with its path, keeping the report's own keys.
            payload += "\n    {\"path\": \"" + runs[i].path + "\", \"report\": ";
            payload += body;
            payload += "}";
        }
        payload += "\n  ]\n}";
        out << payload << "\n";
    } else {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (runs.size() > 1) out << "== " << runs[i].path << "\n";
            for (const auto& line : runner::format_run_report(runs[i].report)) {
                out << line << "\n";
            }
        }
    }
    if (fix) return kOk;
    return all_pass ? kOk : kVerificationFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact computer algebra with reproducible serialization"};
    app.name("mathrepro");
    app.require_subcommand(1);

    std::string eval_script;
    auto* cmd_eval = app.add_subcommand("eval", "run a script of interpreter statements");
    cmd_eval->add_option("script", eval_script, "script file, one statement per line")
        ->required();

    std::string save_out, save_expr;
    auto* cmd_save = app.add_subcommand("save", "evaluate an expression and save it");
    cmd_save->add_option("file", save_out, "output .mrdi path")->required();
    cmd_save->add_option("expr", save_expr, "expression to evaluate")->required();

    std::string show_path;
    auto* cmd_show = app.add_subcommand("show", "load a .mrdi file and print the value");
    cmd_show->add_option("file", show_path, ".mrdi file")->required();

    std::string validate_path;
    auto* cmd_validate =
        app.add_subcommand("validate", "check a .mrdi file against the format rules");
    cmd_validate->add_option("file", validate_path, ".mrdi file")->required();

    std::string upgrade_path;
    int upgrade_to = mrdi::CURRENT_FORMAT_VERSION;
    auto* cmd_upgrade =
        app.add_subcommand("upgrade", "rewrite a .mrdi file at a newer format version");
    cmd_upgrade->add_option("file", upgrade_path, ".mrdi file")->required();
    cmd_upgrade->add_option("--to", upgrade_to, "target format version")->required();

    std::string snf_path;
    bool snf_generic = false;
    auto* cmd_snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    cmd_snf->add_option("matrix-file", snf_path,
                        "text file, one row per line, whitespace-separated integers")
        ->required();
    cmd_snf->add_flag("--generic", snf_generic,
                      "use the generic Euclidean-domain elimination");

    bool vi_full = false;
    auto* cmd_versioninfo =
        app.add_subcommand("versioninfo", "print tool and environment details");
    cmd_versioninfo->add_flag("--full", vi_full,
                              "include memory and pinned dependencies");

    std::string hash_dir;
    auto* cmd_hash = app.add_subcommand("hash-tree", "content hash of a directory tree");
    cmd_hash->add_option("dir", hash_dir, "directory to hash")->required();

    auto* cmd_env = app.add_subcommand("env", "project dependency pinning");
    cmd_env->require_subcommand(1);
    std::string env_project = ".";
    std::string env_registry;
    cmd_env->add_option("--project", env_project, "directory holding Project.toml");
    cmd_env->add_option("--registry", env_registry,
                        "package registry directory (default: $MATHREPRO_REGISTRY)");
    auto* cmd_env_write =
        cmd_env->add_subcommand("write-manifest", "resolve and pin all dependencies");
    auto* cmd_env_verify =
        cmd_env->add_subcommand("verify", "compare the manifest against the registry");

    auto* cmd_doctest = app.add_subcommand("doctest", "run documents' repl blocks");
    cmd_doctest->require_subcommand(1);
    std::vector<std::string> doctest_docs;
    std::string doctest_prelude;
    bool doctest_json = false;
    auto* cmd_check = cmd_doctest->add_subcommand("check", "verify expected output");
    auto* cmd_fix =
        cmd_doctest->add_subcommand("fix", "rewrite stale expected output in place");
    for (auto* sub : {cmd_check, cmd_fix}) {
        sub->add_option("doc", doctest_docs, "documents with repl blocks")
            ->required()
            ->expected(-1);
        sub->add_option("--prelude", doctest_prelude,
                        "statements to run before each label's first block");
        sub->add_flag("--json", doctest_json, "machine-readable report");
    }

    try {
        std::vector<const char*> argv;
        argv.push_back("mathrepro");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        if (cmd_eval->parsed()) return do_eval(eval_script, out);
        if (cmd_save->parsed()) return do_save(save_out, save_expr, out);
        if (cmd_show->parsed()) return do_show(show_path, out, err);
        if (cmd_validate->parsed()) return do_validate(validate_path, out);
        if (cmd_upgrade->parsed()) return do_upgrade(upgrade_path, upgrade_to, out);
        if (cmd_snf->parsed()) return do_snf(snf_path, snf_generic, out);
        if (cmd_versioninfo->parsed()) return do_versioninfo(vi_full, out);
        if (cmd_hash->parsed()) return do_hash_tree(hash_dir, out);
        if (cmd_env->parsed()) {
            std::string registry = env_registry;
            if (registry.empty()) {
                const char* from_env = std::getenv("MATHREPRO_REGISTRY");
                if (from_env != nullptr) registry = from_env;
            }
            if (registry.empty()) {
                err << "error: no registry: set MATHREPRO_REGISTRY or pass "
                       "--registry\n\n"
                    << app.help();
                return kUsageError;
            }
            if (cmd_env_write->parsed())
                return do_env_write_manifest(env_project, registry, out);
            if (cmd_env_verify->parsed())
                return do_env_verify(env_project, registry, out);
        }
        if (cmd_doctest->parsed()) {
            return do_doctest(doctest_docs, doctest_prelude, doctest_json,
                              cmd_fix->parsed(), out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    err << "error: no subcommand\n\n" << app.help();
    return kUsageError;
}

}  // namespace mathrepro::cli
