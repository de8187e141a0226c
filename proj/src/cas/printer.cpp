#include "mathrepro/cas/printer.hpp"

#include <algorithm>
#include <sstream>

namespace mathrepro::cas {

namespace {

/// One monomial in the field generator: o^k with the usual abbreviations.
std::string generator_power(std::size_t k) {
    if (k == 0) return "1";
    if (k == 1) return "o";
    return "o^" + std::to_string(k);
}

/// Monomial part of a polynomial term ("" for the constant term).
std::string monomial_string(const std::vector<std::string>& names,
                            const ExponentVec& exps) {
    std::string out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[i];
        if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
    }
    return out;
}

}  // namespace

std::string print_integer(const Integer& n) { return n.to_string(); }

std::string print_field(const Field& f) {
    std::string base = "GF(" + f.characteristic().to_string();
    if (f.degree() > 1) base += "^" + std::to_string(f.degree());
    return base + ")";
}

std::string print_field_element(const FieldElement& e) {
    const auto& coeffs = e.coeffs();  // ascending in o
    if (e.parent()->is_prime_field()) {
        return coeffs.empty() ? "0" : coeffs[0].to_string();
    }
    std::string out;
    for (std::size_t idx = coeffs.size(); idx-- > 0;) {
        const Integer& c = coeffs[idx];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (idx == 0) {
            out += c.to_string();
        } else if (c == Integer(1)) {
            out += generator_power(idx);
        } else {
            out += c.to_string() + "*" + generator_power(idx);
        }
    }
    return out.empty() ? "0" : out;
}

std::string print_ring(const PolynomialRing& r) {
    std::string vars;
    if (r.variable_names().empty()) {
        vars = "no variables";
    } else {
        for (std::size_t i = 0; i < r.variable_names().size(); ++i) {
            if (i > 0) vars += ", ";
            vars += r.variable_names()[i];
        }
    }
    return "polynomial ring in " + vars + " over " +
           print_field(*r.coefficient_field());
}

std::string print_polynomial(const Polynomial& p) {
    const auto& names = p.ring()->variable_names();
    std::string out;
    for (const auto& [exps, coeff] : p.terms()) {  // already lex descending
        if (!out.empty()) out += " + ";
        std::string mono = monomial_string(names, exps);
        std::string cs = print_field_element(coeff);
        if (mono.empty()) {
            out += cs;
            continue;
        }
        if (cs == "1") {
            out += mono;
        } else if (cs.find(' ') != std::string::npos) {
            out += "(" + cs + ")*" + mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out.empty() ? "0" : out;
}

std::vector<std::string> print_matrix(const IntMatrix& m) {
    std::vector<std::vector<std::string>> cells(m.rows());
    std::vector<std::size_t> width(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cells[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cells[i][j] = m.at(i, j).to_string();
            width[j] = std::max(width[j], cells[i][j].size());
        }
    }
    std::vector<std::string> lines;
    lines.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::string line = "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) line += " ";
            line += std::string(width[j] - cells[i][j].size(), ' ');
            line += cells[i][j];
        }
        line += "]";
        lines.push_back(std::move(line));
    }
    return lines;
}

std::vector<std::string> print_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::vector<std::string> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Integer>) {
                return {print_integer(x)};
            } else if constexpr (std::is_same_v<T, FieldElement>) {
                return {print_field_element(x)};
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                return {print_polynomial(x)};
            } else if constexpr (std::is_same_v<T, IntMatrix>) {
                return print_matrix(x);
            } else if constexpr (std::is_same_v<T, FieldPtr>) {
                return {print_field(*x)};
            } else {
                return {print_ring(*x)};
            }
        },
        v);
}

}  // namespace mathrepro::cas
