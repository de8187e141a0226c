#include "mathrepro/runner/interp.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mathrepro/cas/printer.hpp"
#include "mathrepro/cas/snf.hpp"
#include "mathrepro/env/versioninfo.hpp"
#include "mathrepro/error.hpp"
#include "mathrepro/mrdi/serialize.hpp"

namespace mathrepro::runner {

using cas::FieldElement;
using cas::FieldPtr;
using cas::Integer;
using cas::IntMatrix;
using cas::Polynomial;
using cas::RingPtr;
using cas::Value;

IValue IValue::from(Value v) {
    IValue r;
    r.kind = Kind::Cas;
    r.value = std::move(v);
    return r;
}
IValue IValue::string(std::string s) {
    IValue r;
    r.kind = Kind::Str;
    r.str = std::move(s);
    return r;
}
IValue IValue::tuple(std::vector<IValue> xs) {
    IValue r;
    r.kind = Kind::Tuple;
    r.items = std::move(xs);
    return r;
}
IValue IValue::list(std::vector<IValue> xs) {
    IValue r;
    r.kind = Kind::List;
    r.items = std::move(xs);
    return r;
}
IValue IValue::unit() { return IValue{}; }

namespace {

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

/// Single-line form, for elements of tuples and lists. Matrices collapse
/// their rows with "; ".
std::string inline_ivalue(const IValue& v) {
    switch (v.kind) {
        case IValue::Kind::Cas: return join(cas::print_value(v.value), "; ");
        case IValue::Kind::Str: return quote_string(v.str);
        case IValue::Kind::Tuple:
        case IValue::Kind::List: {
            std::vector<std::string> parts;
            parts.reserve(v.items.size());
            for (const auto& item : v.items) parts.push_back(inline_ivalue(item));
            const bool list = v.kind == IValue::Kind::List;
            return (list ? "[" : "(") + join(parts, ", ") + (list ? "]" : ")");
        }
        case IValue::Kind::Unit: return "()";
    }
    return "()";
}

std::string ivalue_kind(const IValue& v) {
    switch (v.kind) {
        case IValue::Kind::Cas: return cas::value_kind(v.value);
        case IValue::Kind::Str: return "string";
        case IValue::Kind::Tuple: return "tuple";
        case IValue::Kind::List: return "list";
        case IValue::Kind::Unit: return "unit";
    }
    return "unit";
}

// ---------------------------------------------------------------- lexer --

struct Token {
    enum class Kind { Int, Ident, Str, Sym, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t col = 0;  // 1-based column of the first character
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> toks;
    std::size_t i = 0;
    auto is_ident_start = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto is_ident = [&](char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); };
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;  // comment to end of line
        Token t;
        t.col = i + 1;
        if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < line.size() && line[j] >= '0' && line[j] <= '9') ++j;
            t.kind = Token::Kind::Int;
            t.text = line.substr(i, j - i);
            i = j;
        } else if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < line.size() && is_ident(line[j])) ++j;
            t.kind = Token::Kind::Ident;
            t.text = line.substr(i, j - i);
            i = j;
        } else if (c == '"') {
            std::size_t j = i + 1;
            std::string value;
            bool closed = false;
            while (j < line.size()) {
                char d = line[j];
                if (d == '"') {
                    closed = true;
                    ++j;
                    break;
                }
                if (d == '\\') {
                    if (j + 1 >= line.size()) break;
                    char e = line[j + 1];
                    if (e == '"') value += '"';
                    else if (e == '\\') value += '\\';
                    else if (e == 'n') value += '\n';
                    else if (e == 't') value += '\t';
                    else
                        throw Error(ErrorKind::ParseError,
                                    "invalid escape '\\" + std::string(1, e) +
                                        "' in string literal");
                    j += 2;
                    continue;
                }
                value += d;
                ++j;
            }
            if (!closed) {
                throw Error(ErrorKind::ParseError, "unterminated string literal");
            }
            t.kind = Token::Kind::Str;
            t.text = value;
            i = j;
        } else if (std::string("+-*^=,;()[]").find(c) != std::string::npos) {
            t.kind = Token::Kind::Sym;
            t.text = std::string(1, c);
            ++i;
        } else {
            throw Error(ErrorKind::ParseError, "unexpected character '" +
                                                   std::string(1, c) + "' at column " +
                                                   std::to_string(i + 1));
        }
        toks.push_back(std::move(t));
    }
    return toks;
}

// ----------------------------------------------------------- arithmetic --

Integer require_integer(const IValue& v, const std::string& what) {
    if (v.kind == IValue::Kind::Cas && std::holds_alternative<Integer>(v.value)) {
        return std::get<Integer>(v.value);
    }
    throw Error(ErrorKind::InvalidInput, what + " must be an integer, got " +
                                             ivalue_kind(v));
}

Value negate_value(const Value& v) {
    if (const auto* n = std::get_if<Integer>(&v)) return -*n;
    if (const auto* e = std::get_if<FieldElement>(&v)) return -*e;
    if (const auto* p = std::get_if<Polynomial>(&v)) return -*p;
    throw Error(ErrorKind::InvalidInput,
                "no unary '-' for " + cas::value_kind(v));
}

template <typename T>
T apply_op(char op, const T& a, const T& b) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        default: return a * b;
    }
}

Value binary_value(char op, const Value& lhs, const Value& rhs) {
    auto fail = [&]() -> Value {
        throw Error(ErrorKind::InvalidInput,
                    std::string("no operator '") + op + "' between " +
                        cas::value_kind(lhs) + " and " + cas::value_kind(rhs));
    };
    const auto* li = std::get_if<Integer>(&lhs);
    const auto* ri = std::get_if<Integer>(&rhs);
    const auto* le = std::get_if<FieldElement>(&lhs);
    const auto* re = std::get_if<FieldElement>(&rhs);
    const auto* lp = std::get_if<Polynomial>(&lhs);
    const auto* rp = std::get_if<Polynomial>(&rhs);

    if (li && ri) return apply_op(op, *li, *ri);
    // Coerce integers and coefficients upward; the kernel enforces that
    // both operands hang off the same parent instance.
    if (lp || rp) {
        const Polynomial& p = lp ? *lp : *rp;
        auto lift = [&](const Value& v) -> Polynomial {
            if (const auto* q = std::get_if<Polynomial>(&v)) return *q;
            if (const auto* n = std::get_if<Integer>(&v))
                return p.ring()->from_integer(*n);
            if (const auto* e = std::get_if<FieldElement>(&v))
                return p.ring()->constant(*e);
            fail();
            return p;  // unreachable
        };
        return apply_op(op, lift(lhs), lift(rhs));
    }
    if (le || re) {
        const FieldElement& e = le ? *le : *re;
        auto lift = [&](const Value& v) -> FieldElement {
            if (const auto* f = std::get_if<FieldElement>(&v)) return *f;
            if (const auto* n = std::get_if<Integer>(&v))
                return e.parent()->from_integer(*n);
            fail();
            return e;  // unreachable
        };
        return apply_op(op, lift(lhs), lift(rhs));
    }
    return fail();
}

Value pow_value(const Value& base, const Integer& exp) {
    if (const auto* n = std::get_if<Integer>(&base)) {
        if (exp.sign() < 0)
            throw Error(ErrorKind::InvalidInput, "negative exponent");
        if (!exp.fits_ulong())
            throw Error(ErrorKind::InvalidInput, "exponent too large");
        return n->pow(exp.to_ulong());
    }
    if (const auto* e = std::get_if<FieldElement>(&base)) return e->pow(exp);
    if (const auto* p = std::get_if<Polynomial>(&base)) return p->pow(exp);
    throw Error(ErrorKind::InvalidInput,
                "no operator '^' for " + cas::value_kind(base));
}

// ---------------------------------------------------------------- parser --

class Parser {
 public:
    Parser(std::vector<Token> toks, Environment& env, std::vector<std::string>& sink)
        : toks_(std::move(toks)), env_(env), sink_(sink) {}

    /// Runs a bare expression: no assignment, everything consumed.
    IValue run_expression() {
        if (toks_.empty()) {
            throw Error(ErrorKind::ParseError, "empty expression");
        }
        IValue v = parse_expr();
        if (pos_ != toks_.size()) {
            throw Error(ErrorKind::ParseError,
                        "unexpected '" + toks_[pos_].text + "' at column " +
                            std::to_string(toks_[pos_].col));
        }
        return v;
    }

    /// Runs the whole statement; returns the value to print (already Unit
    /// when a trailing ';' suppressed it).
    IValue run() {
        bool suppress = false;
        if (!toks_.empty() && is_sym(toks_.back(), ";")) {
            suppress = true;
            toks_.pop_back();
        }
        if (toks_.empty()) return IValue::unit();

        std::vector<std::string> targets = match_assignment();
        IValue v = parse_expr();
        if (pos_ != toks_.size()) {
            throw Error(ErrorKind::ParseError,
                        "unexpected '" + toks_[pos_].text + "' at column " +
                            std::to_string(toks_[pos_].col));
        }
        if (!targets.empty()) bind(targets, v);
        return suppress ? IValue::unit() : v;
    }

 private:
    static bool is_sym(const Token& t, const char* s) {
        return t.kind == Token::Kind::Sym && t.text == s;
    }
    const Token& peek() const {
        static const Token end{};
        return pos_ < toks_.size() ? toks_[pos_] : end;
    }
    Token take() { return toks_[pos_++]; }
    bool accept_sym(const char* s) {
        if (pos_ < toks_.size() && is_sym(toks_[pos_], s)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_sym(const char* s) {
        if (!accept_sym(s)) {
            throw Error(ErrorKind::ParseError,
                        std::string("expected '") + s + "'" +
                            (pos_ < toks_.size()
                                 ? " before '" + toks_[pos_].text + "'"
                                 : " at end of line"));
        }
    }

    /// Recognizes `name (, name)* =` at the start; on a match consumes it
    /// and returns the target names, otherwise consumes nothing.
    std::vector<std::string> match_assignment() {
        std::vector<std::string> targets;
        std::size_t k = 0;
        while (k < toks_.size() && toks_[k].kind == Token::Kind::Ident) {
            targets.push_back(toks_[k].text);
            if (k + 1 < toks_.size() && is_sym(toks_[k + 1], ",")) {
                k += 2;
                continue;
            }
            if (k + 1 < toks_.size() && is_sym(toks_[k + 1], "=")) {
                pos_ = k + 2;
                return targets;
            }
            break;
        }
        return {};
    }

    void bind(const std::vector<std::string>& targets, const IValue& v) {
        if (targets.size() == 1) {
            env_.bindings[targets[0]] = v;
            return;
        }
        if (v.kind != IValue::Kind::Tuple) {
            throw Error(ErrorKind::InvalidInput,
                        "cannot destructure " + ivalue_kind(v) + " into " +
                            std::to_string(targets.size()) + " names");
        }
        if (v.items.size() != targets.size()) {
            throw Error(ErrorKind::InvalidInput,
                        "cannot destructure a tuple of " +
                            std::to_string(v.items.size()) + " values into " +
                            std::to_string(targets.size()) + " names");
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
            env_.bindings[targets[i]] = v.items[i];
        }
    }

    IValue parse_expr() {
        IValue v = parse_term();
        while (pos_ < toks_.size() &&
               (is_sym(toks_[pos_], "+") || is_sym(toks_[pos_], "-"))) {
            char op = take().text[0];
            IValue rhs = parse_term();
            v = cas_binary(op, v, rhs);
        }
        return v;
    }

    IValue parse_term() {
        IValue v = parse_factor();
        while (pos_ < toks_.size() && is_sym(toks_[pos_], "*")) {
            take();
            IValue rhs = parse_factor();
            v = cas_binary('*', v, rhs);
        }
        return v;
    }

    IValue parse_factor() {
        if (accept_sym("-")) {
            IValue v = parse_factor();
            if (v.kind != IValue::Kind::Cas) {
                throw Error(ErrorKind::InvalidInput,
                            "no unary '-' for " + ivalue_kind(v));
            }
            return IValue::from(negate_value(v.value));
        }
        return parse_power();
    }

    IValue parse_power() {
        IValue base = parse_atom();
        if (accept_sym("^")) {
            IValue exp = parse_factor();  // right-associative
            if (base.kind != IValue::Kind::Cas) {
                throw Error(ErrorKind::InvalidInput,
                            "no operator '^' for " + ivalue_kind(base));
            }
            Integer e = require_integer(exp, "exponent");
            return IValue::from(pow_value(base.value, e));
        }
        return base;
    }

    IValue cas_binary(char op, const IValue& a, const IValue& b) {
        if (a.kind != IValue::Kind::Cas || b.kind != IValue::Kind::Cas) {
            throw Error(ErrorKind::InvalidInput,
                        std::string("no operator '") + op + "' between " +
                            ivalue_kind(a) + " and " + ivalue_kind(b));
        }
        return IValue::from(binary_value(op, a.value, b.value));
    }

    IValue parse_atom() {
        if (pos_ >= toks_.size()) {
            throw Error(ErrorKind::ParseError, "unexpected end of line");
        }
        Token t = take();
        switch (t.kind) {
            case Token::Kind::Int:
                return IValue::from(Integer(t.text));
            case Token::Kind::Str:
                return IValue::string(t.text);
            case Token::Kind::Ident: {
                if (pos_ < toks_.size() && is_sym(toks_[pos_], "(")) {
                    take();
                    return call(t.text);
                }
                auto it = env_.bindings.find(t.text);
                if (it == env_.bindings.end()) {
                    throw Error(ErrorKind::UndefinedVariable,
                                "undefined variable '" + t.text + "'");
                }
                return it->second;
            }
            case Token::Kind::Sym: {
                if (t.text == "(") {
                    IValue v = parse_expr();
                    expect_sym(")");
                    return v;
                }
                if (t.text == "[") {
                    std::vector<IValue> items;
                    if (!accept_sym("]")) {
                        items.push_back(parse_expr());
                        while (accept_sym(",")) items.push_back(parse_expr());
                        expect_sym("]");
                    }
                    return IValue::list(std::move(items));
                }
                throw Error(ErrorKind::ParseError,
                            "unexpected '" + t.text + "' at column " +
                                std::to_string(t.col));
            }
            case Token::Kind::End: break;
        }
        throw Error(ErrorKind::ParseError, "unexpected end of line");
    }

    std::vector<IValue> parse_args() {
        std::vector<IValue> args;
        if (accept_sym(")")) return args;
        args.push_back(parse_expr());
        while (accept_sym(",")) args.push_back(parse_expr());
        expect_sym(")");
        return args;
    }

    IValue call(const std::string& name);

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Environment& env_;
    std::vector<std::string>& sink_;
};

// --------------------------------------------------------------- builtins --

void expect_arity(const std::string& name, const std::vector<IValue>& args,
                  std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
        std::string want = std::to_string(lo);
        if (hi != lo) want += " or " + std::to_string(hi);
        throw Error(ErrorKind::InvalidInput,
                    name + " expects " + want + " argument" +
                        (hi == 1 ? "" : "s") + ", got " +
                        std::to_string(args.size()));
    }
}

FieldPtr require_field(const IValue& v, const std::string& what) {
    if (v.kind == IValue::Kind::Cas && std::holds_alternative<FieldPtr>(v.value)) {
        return std::get<FieldPtr>(v.value);
    }
    throw Error(ErrorKind::InvalidInput,
                what + " must be a field, got " + ivalue_kind(v));
}

IntMatrix require_matrix(const IValue& v, const std::string& what) {
    if (v.kind == IValue::Kind::Cas && std::holds_alternative<IntMatrix>(v.value)) {
        return std::get<IntMatrix>(v.value);
    }
    throw Error(ErrorKind::InvalidInput,
                what + " must be a matrix, got " + ivalue_kind(v));
}

std::string require_string(const IValue& v, const std::string& what) {
    if (v.kind == IValue::Kind::Str) return v.str;
    throw Error(ErrorKind::InvalidInput,
                what + " must be a string, got " + ivalue_kind(v));
}

IValue builtin_gf(const std::vector<IValue>& args) {
    expect_arity("GF", args, 1, 2);
    Integer p = require_integer(args[0], "GF: characteristic");
    if (args.size() == 1) return IValue::from(Value(cas::make_prime_field(p)));
    Integer n = require_integer(args[1], "GF: extension degree");
    if (n.sign() <= 0 || !n.fits_ulong() || n.to_ulong() > 64) {
        throw Error(ErrorKind::InvalidInput,
                    "GF: extension degree must be between 1 and 64");
    }
    return IValue::from(Value(cas::make_finite_field(p, static_cast<int>(n.to_ulong()))));
}

IValue builtin_gen(const std::vector<IValue>& args) {
    expect_arity("gen", args, 1, 1);
    FieldPtr f = require_field(args[0], "gen: argument");
    return IValue::from(Value(f->generator()));
}

IValue builtin_polynomial_ring(const std::vector<IValue>& args) {
    expect_arity("polynomial_ring", args, 2, 2);
    FieldPtr f = require_field(args[0], "polynomial_ring: coefficient field");
    if (args[1].kind != IValue::Kind::List) {
        throw Error(ErrorKind::InvalidInput,
                    "polynomial_ring: variable names must be a list of strings");
    }
    std::vector<std::string> names;
    for (const auto& item : args[1].items) {
        names.push_back(require_string(item, "polynomial_ring: variable name"));
    }
    auto [ring, gens] = cas::make_polynomial_ring(f, names);
    std::vector<IValue> parts;
    parts.push_back(IValue::from(Value(ring)));
    for (auto& g : gens) parts.push_back(IValue::from(Value(std::move(g))));
    return IValue::tuple(std::move(parts));
}

IValue builtin_matrix(const std::vector<IValue>& args) {
    expect_arity("matrix", args, 1, 1);
    if (args[0].kind != IValue::Kind::List || args[0].items.empty()) {
        throw Error(ErrorKind::InvalidInput,
                    "matrix expects a non-empty list of rows");
    }
    const auto& rows = args[0].items;
    std::size_t ncols = 0;
    std::vector<Integer> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].kind != IValue::Kind::List || rows[i].items.empty()) {
            throw Error(ErrorKind::InvalidInput,
                        "matrix rows must be non-empty lists of integers");
        }
        if (i == 0) {
            ncols = rows[i].items.size();
        } else if (rows[i].items.size() != ncols) {
            throw Error(ErrorKind::InvalidInput,
                        "matrix rows must all have the same length");
        }
        for (const auto& cell : rows[i].items) {
            entries.push_back(require_integer(cell, "matrix entry"));
        }
    }
    return IValue::from(Value(IntMatrix(rows.size(), ncols, entries)));
}

IValue builtin_snf(const std::vector<IValue>& args, bool generic) {
    const std::string name = generic ? "snf_generic" : "snf";
    expect_arity(name, args, 1, 1);
    IntMatrix m = require_matrix(args[0], name + ": argument");
    return IValue::from(Value(generic ? cas::snf_euclidean(m) : cas::snf_integer(m)));
}

}  // namespace

IValue Parser::call(const std::string& name) {
    std::vector<IValue> args = parse_args();
    if (name == "GF") return builtin_gf(args);
    if (name == "gen") return builtin_gen(args);
    if (name == "polynomial_ring") return builtin_polynomial_ring(args);
    if (name == "matrix") return builtin_matrix(args);
    if (name == "snf") return builtin_snf(args, false);
    if (name == "snf_generic") return builtin_snf(args, true);
    if (name == "save") {
        expect_arity("save", args, 2, 2);
        std::string path = require_string(args[0], "save: path");
        if (args[1].kind != IValue::Kind::Cas) {
            throw Error(ErrorKind::InvalidInput,
                        "save: cannot serialize " + ivalue_kind(args[1]));
        }
        mrdi::save_file(path, args[1].value);
        return IValue::unit();
    }
    if (name == "load") {
        expect_arity("load", args, 1, 1);
        std::string path = require_string(args[0], "load: path");
        return IValue::from(mrdi::load_file(path, env_.session));
    }
    if (name == "versioninfo") {
        expect_arity("versioninfo", args, 0, 0);
        auto report = env::collect_versioninfo(env::Verbosity::Brief);
        for (auto& line : env::format_report(report)) sink_.push_back(std::move(line));
        return IValue::unit();
    }
    throw Error(ErrorKind::UnknownFunction, "unknown function '" + name + "'");
}

std::vector<std::string> print_ivalue(const IValue& v) {
    switch (v.kind) {
        case IValue::Kind::Cas: return cas::print_value(v.value);
        case IValue::Kind::Str: return {quote_string(v.str)};
        case IValue::Kind::Tuple:
        case IValue::Kind::List: return {inline_ivalue(v)};
        case IValue::Kind::Unit: return {};
    }
    return {};
}

IValue eval_expression(const std::string& text, Environment& env) {
    std::vector<std::string> sink;
    Parser parser(tokenize(text), env, sink);
    return parser.run_expression();
}

EvalResult eval_line(const std::string& line, Environment& env) {
    EvalResult result;
    try {
        Parser parser(tokenize(line), env, result.lines);
        IValue v = parser.run();
        for (auto& printed : print_ivalue(v)) result.lines.push_back(std::move(printed));
    } catch (const Error& e) {
        result.lines.clear();
        result.lines.push_back(std::string("error: ") + e.what());
        result.error = true;
    }
    return result;
}

}  // namespace mathrepro::runner
