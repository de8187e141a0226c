#ifndef MATHREPRO_RUNNER_INTERP_HPP
#define MATHREPRO_RUNNER_INTERP_HPP

#include <map>
#include <string>
#include <vector>

#include "mathrepro/cas/value.hpp"
#include "mathrepro/mrdi/session.hpp"

namespace mathrepro::runner {

/// Interpreter value: a kernel value, a string literal, a tuple (what
/// polynomial_ring returns, destructurable), a list literal, or unit
/// (what save() returns; prints nothing).
struct IValue {
    enum class Kind { Cas, Str, Tuple, List, Unit };
    Kind kind = Kind::Unit;
    cas::Value value = cas::Integer(0);  // meaningful when kind == Cas
    std::string str;                     // meaningful when kind == Str
    std::vector<IValue> items;           // Tuple / List

    static IValue from(cas::Value v);
    static IValue string(std::string s);
    static IValue tuple(std::vector<IValue> xs);
    static IValue list(std::vector<IValue> xs);
    static IValue unit();
};

/// Printed lines for a value: kernel values use the canonical printer,
/// strings print quoted, tuples/lists print on one line, unit prints
/// nothing.
std::vector<std::string> print_ivalue(const IValue& v);

/// One interpreter state: variable bindings plus the session identifying
/// parents across load() calls. Each doctest label gets its own.
struct Environment {
    std::map<std::string, IValue> bindings;
    mrdi::Session session;
};

/// Output of one statement.
struct EvalResult {
    std::vector<std::string> lines;
    bool error = false;  // true when `lines` is a rendered error message
};

/// Evaluates a single statement and returns exactly what a REPL would
/// print. Grammar, one statement per line, `#` starts a comment:
///
///   statement := name (, name)* = expr   (prints the assigned value)
///              | expr                     (prints its value)
///   a trailing `;` suppresses the value print
///   expr      := precedence climbing over + - (binary), * , unary -, and
///                right-associative ^; atoms are integers, "strings",
///                variables, calls, [lists], and parenthesized exprs
///
/// Builtins: GF(p), GF(p, n), gen(F), polynomial_ring(F, [names...]),
/// matrix([[rows]]), snf(m), snf_generic(m), save("path", v),
/// load("path"), versioninfo().
///
/// Failures never throw; they come back rendered as a single line such as
/// `error: undefined variable 'x'` with `error == true`.
EvalResult eval_line(const std::string& line, Environment& env);

/// Evaluates `text` as one expression (no assignment, no trailing ';') and
/// returns its value instead of its printed form. Throws Error.
IValue eval_expression(const std::string& text, Environment& env);

}  // namespace mathrepro::runner

#endif
