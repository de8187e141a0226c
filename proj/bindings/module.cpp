#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mathrepro/cas/field.hpp"
#include "mathrepro/cas/integer.hpp"
#include "mathrepro/cas/matrix.hpp"
#include "mathrepro/cas/polynomial.hpp"
#include "mathrepro/cas/printer.hpp"
#include "mathrepro/cas/snf.hpp"
#include "mathrepro/cas/value.hpp"
#include "mathrepro/cli/cli.hpp"
#include "mathrepro/env/tree_hash.hpp"
#include "mathrepro/env/versioninfo.hpp"
#include "mathrepro/error.hpp"
#include "mathrepro/mrdi/document.hpp"
#include "mathrepro/mrdi/serialize.hpp"
#include "mathrepro/mrdi/session.hpp"
#include "mathrepro/mrdi/upgrade.hpp"
#include "mathrepro/mrdi/validate.hpp"

namespace py = pybind11;
using namespace mathrepro;

namespace {

// The kernel hands out shared_ptr<const T> for parents; pybind11 holders
// want non-const. Parents are immutable, so the cast cannot enable
// mutation.
cas::FieldPtr freeze_ptr(const std::shared_ptr<cas::Field>& f) { return f; }
std::shared_ptr<cas::Field> as_mut(const cas::FieldPtr& f) {
    return std::const_pointer_cast<cas::Field>(f);
}
std::shared_ptr<cas::PolynomialRing> as_mut(const cas::RingPtr& r) {
    return std::const_pointer_cast<cas::PolynomialRing>(r);
}

cas::Integer to_integer(const py::object& o) {
    if (py::isinstance<cas::Integer>(o)) return o.cast<cas::Integer>();
    if (py::isinstance<py::int_>(o)) {
        return cas::Integer(py::str(o).cast<std::string>());
    }
    throw Error(ErrorKind::InvalidInput, "expected an integer");
}

py::object value_to_py(const cas::Value& v) {
    return std::visit(
        [](const auto& x) -> py::object {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, cas::FieldPtr>) {
                return py::cast(as_mut(x));
            } else if constexpr (std::is_same_v<T, cas::RingPtr>) {
                return py::cast(as_mut(x));
            } else {
                return py::cast(x);
            }
        },
        v);
}

cas::Value py_to_value(const py::object& o) {
    if (py::isinstance<cas::Integer>(o)) return o.cast<cas::Integer>();
    if (py::isinstance<py::int_>(o)) return to_integer(o);
    if (py::isinstance<cas::FieldElement>(o)) return o.cast<cas::FieldElement>();
    if (py::isinstance<cas::Polynomial>(o)) return o.cast<cas::Polynomial>();
    if (py::isinstance<cas::IntMatrix>(o)) return o.cast<cas::IntMatrix>();
    if (py::isinstance<cas::Field>(o)) {
        return freeze_ptr(o.cast<std::shared_ptr<cas::Field>>());
    }
    if (py::isinstance<cas::PolynomialRing>(o)) {
        cas::RingPtr r = o.cast<std::shared_ptr<cas::PolynomialRing>>();
        return r;
    }
    throw Error(ErrorKind::InvalidInput, "not a serializable kernel value");
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact computer algebra kernel with reproducible serialization";
#ifdef MATHREPRO_VERSION
    m.attr("__version__") = MATHREPRO_VERSION;
#else
    m.attr("__version__") = "0.0.0";
#endif

    static py::exception<Error> exc(m, "MathreproError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            exc(std::string(std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<cas::Integer>(m, "Integer")
        .def(py::init([](const py::object& o) {
            if (py::isinstance<py::str>(o)) {
                return cas::Integer(o.cast<std::string>());
            }
            return to_integer(o);
        }))
        .def("__str__", [](const cas::Integer& n) { return n.to_string(); })
        .def("__repr__", [](const cas::Integer& n) { return n.to_string(); })
        .def("__int__",
             [](const cas::Integer& n) {
                 return py::int_(py::str(py::cast(n.to_string())));
             })
        .def("__index__",
             [](const cas::Integer& n) {
                 return py::int_(py::str(py::cast(n.to_string())));
             })
        .def("__add__", [](const cas::Integer& a, const py::object& b) {
            return a + to_integer(b);
        })
        .def("__radd__", [](const cas::Integer& a, const py::object& b) {
            return to_integer(b) + a;
        })
        .def("__sub__", [](const cas::Integer& a, const py::object& b) {
            return a - to_integer(b);
        })
        .def("__rsub__", [](const cas::Integer& a, const py::object& b) {
            return to_integer(b) - a;
        })
        .def("__mul__", [](const cas::Integer& a, const py::object& b) {
            return a * to_integer(b);
        })
        .def("__rmul__", [](const cas::Integer& a, const py::object& b) {
            return to_integer(b) * a;
        })
        .def("__neg__", [](const cas::Integer& a) { return -a; })
        .def("__pow__", [](const cas::Integer& a, unsigned long e) { return a.pow(e); })
        .def("__eq__", [](const cas::Integer& a, const py::object& b) {
            try {
                return a == to_integer(b);
            } catch (const Error&) {
                return false;
            }
        })
        .def("__hash__",
             [](const cas::Integer& n) { return py::hash(py::str(n.to_string())); });

    py::class_<cas::Field, std::shared_ptr<cas::Field>>(m, "Field")
        .def_property_readonly("characteristic", &cas::Field::characteristic)
        .def_property_readonly("degree", &cas::Field::degree)
        .def_property_readonly("order", &cas::Field::order)
        .def_property_readonly("is_prime_field", &cas::Field::is_prime_field)
        .def("defining_polynomial", &cas::Field::defining_polynomial)
        .def("zero", &cas::Field::zero)
        .def("one", &cas::Field::one)
        .def("generator", &cas::Field::generator)
        .def("from_integer",
             [](const cas::Field& f, const py::object& n) {
                 return f.from_integer(to_integer(n));
             })
        .def("element",
             [](const cas::Field& f, const std::vector<py::object>& coeffs) {
                 std::vector<cas::Integer> c;
                 c.reserve(coeffs.size());
                 for (const auto& o : coeffs) c.push_back(to_integer(o));
                 return f.element(c);
             })
        .def("same_structure",
             [](const std::shared_ptr<cas::Field>& a,
                const std::shared_ptr<cas::Field>& b) {
                 return a->same_structure(*b);
             })
        .def("__eq__",
             [](const std::shared_ptr<cas::Field>& a, const py::object& b) {
                 if (!py::isinstance<cas::Field>(b)) return false;
                 return a.get() == b.cast<std::shared_ptr<cas::Field>>().get();
             })
        .def("__hash__",
             [](const std::shared_ptr<cas::Field>& f) {
                 return py::hash(py::int_(reinterpret_cast<std::uintptr_t>(f.get())));
             })
        .def("__str__",
             [](const cas::Field& f) { return cas::print_field(f); })
        .def("__repr__",
             [](const cas::Field& f) { return cas::print_field(f); });

    py::class_<cas::FieldElement>(m, "FieldElement")
        .def_property_readonly("parent",
                               [](const cas::FieldElement& e) { return as_mut(e.parent()); })
        .def("coeffs", &cas::FieldElement::coeffs)
        .def_property_readonly("is_zero", &cas::FieldElement::is_zero)
        .def_property_readonly("is_one", &cas::FieldElement::is_one)
        .def("__add__", [](const cas::FieldElement& a, const cas::FieldElement& b) {
            return a + b;
        })
        .def("__sub__", [](const cas::FieldElement& a, const cas::FieldElement& b) {
            return a - b;
        })
        .def("__mul__", [](const cas::FieldElement& a, const cas::FieldElement& b) {
            return a * b;
        })
        .def("__neg__", [](const cas::FieldElement& a) { return -a; })
        .def("__pow__", [](const cas::FieldElement& a, const py::object& e) {
            return a.pow(to_integer(e));
        })
        .def("inverse", &cas::FieldElement::inverse)
        .def("__eq__",
             [](const cas::FieldElement& a, const py::object& b) {
                 if (!py::isinstance<cas::FieldElement>(b)) return false;
                 return a == b.cast<cas::FieldElement>();
             })
        .def("__hash__", [](const cas::FieldElement& e) {
            return py::hash(py::str(cas::print_field_element(e)));
        })
        .def("__str__",
             [](const cas::FieldElement& e) { return cas::print_field_element(e); })
        .def("__repr__",
             [](const cas::FieldElement& e) { return cas::print_field_element(e); });

    py::class_<cas::PolynomialRing, std::shared_ptr<cas::PolynomialRing>>(m, "PolynomialRing")
        .def_property_readonly("coefficient_field",
                               [](const cas::PolynomialRing& r) {
                                   return as_mut(r.coefficient_field());
                               })
        .def_property_readonly("variable_names", &cas::PolynomialRing::variable_names)
        .def_property_readonly("variable_count", &cas::PolynomialRing::variable_count)
        .def("zero", &cas::PolynomialRing::zero)
        .def("one", &cas::PolynomialRing::one)
        .def("generator", &cas::PolynomialRing::generator)
        .def("constant", &cas::PolynomialRing::constant)
        .def("from_integer",
             [](const cas::PolynomialRing& r, const py::object& n) {
                 return r.from_integer(to_integer(n));
             })
        .def("__eq__",
             [](const std::shared_ptr<cas::PolynomialRing>& a, const py::object& b) {
                 if (!py::isinstance<cas::PolynomialRing>(b)) return false;
                 return a.get() == b.cast<std::shared_ptr<cas::PolynomialRing>>().get();
             })
        .def("__hash__",
             [](const std::shared_ptr<cas::PolynomialRing>& r) {
                 return py::hash(py::int_(reinterpret_cast<std::uintptr_t>(r.get())));
             })
        .def("__str__", [](const cas::PolynomialRing& r) { return cas::print_ring(r); })
        .def("__repr__", [](const cas::PolynomialRing& r) { return cas::print_ring(r); });

    py::class_<cas::Polynomial>(m, "Polynomial")
        .def_property_readonly("ring",
                               [](const cas::Polynomial& p) { return as_mut(p.ring()); })
        .def_property_readonly("is_zero", &cas::Polynomial::is_zero)
        .def_property_readonly("total_degree", &cas::Polynomial::total_degree)
        .def("terms",
             [](const cas::Polynomial& p) {
                 std::vector<std::pair<std::vector<std::uint32_t>, cas::FieldElement>> out;
                 for (const auto& [exps, coeff] : p.terms()) out.emplace_back(exps, coeff);
                 return out;
             })
        .def("evaluate", &cas::Polynomial::evaluate)
        .def("__add__", [](const cas::Polynomial& a, const cas::Polynomial& b) {
            return a + b;
        })
        .def("__sub__", [](const cas::Polynomial& a, const cas::Polynomial& b) {
            return a - b;
        })
        .def("__mul__", [](const cas::Polynomial& a, const cas::Polynomial& b) {
            return a * b;
        })
        .def("__neg__", [](const cas::Polynomial& a) { return -a; })
        .def("__pow__", [](const cas::Polynomial& a, const py::object& e) {
            return a.pow(to_integer(e));
        })
        .def("__eq__",
             [](const cas::Polynomial& a, const py::object& b) {
                 if (!py::isinstance<cas::Polynomial>(b)) return false;
                 return a == b.cast<cas::Polynomial>();
             })
        .def("__hash__", [](const cas::Polynomial& p) {
            return py::hash(py::str(cas::print_polynomial(p)));
        })
        .def("__str__", [](const cas::Polynomial& p) { return cas::print_polynomial(p); })
        .def("__repr__", [](const cas::Polynomial& p) { return cas::print_polynomial(p); });

    py::class_<cas::IntMatrix>(m, "IntMatrix")
        .def(py::init([](const std::vector<std::vector<py::object>>& rows) {
            if (rows.empty() || rows.front().empty()) {
                throw Error(ErrorKind::InvalidInput, "matrix needs at least one entry");
            }
            std::vector<cas::Integer> entries;
            for (const auto& row : rows) {
                if (row.size() != rows.front().size()) {
                    throw Error(ErrorKind::InvalidInput,
                                "matrix rows must all have the same length");
                }
                for (const auto& o : row) entries.push_back(to_integer(o));
            }
            return cas::IntMatrix(rows.size(), rows.front().size(), entries);
        }))
        .def_property_readonly("rows", &cas::IntMatrix::rows)
        .def_property_readonly("cols", &cas::IntMatrix::cols)
        .def("at", [](const cas::IntMatrix& m_, std::size_t i, std::size_t j) {
            return m_.at(i, j);
        })
        .def("entries", &cas::IntMatrix::entries)
        .def("__eq__",
             [](const cas::IntMatrix& a, const py::object& b) {
                 if (!py::isinstance<cas::IntMatrix>(b)) return false;
                 return a == b.cast<cas::IntMatrix>();
             })
        .def("__hash__", [](const cas::IntMatrix& m_) {
            return py::hash(py::str(join_lines(cas::print_matrix(m_))));
        })
        .def("__str__",
             [](const cas::IntMatrix& m_) { return join_lines(cas::print_matrix(m_)); })
        .def("__repr__",
             [](const cas::IntMatrix& m_) { return join_lines(cas::print_matrix(m_)); });

    py::class_<mrdi::Session>(m, "Session")
        .def(py::init<>())
        .def_property_readonly("warnings", &mrdi::Session::warnings)
        .def_property_readonly("load_log", &mrdi::Session::load_log);

    m.def("GF",
          [](const py::object& p, int n) {
              cas::Integer pi = to_integer(p);
              return n == 1 ? as_mut(cas::make_prime_field(pi))
                            : as_mut(cas::make_finite_field(pi, n));
          },
          py::arg("p"), py::arg("n") = 1,
          "Finite field GF(p) or GF(p^n) with the canonical defining polynomial");

    m.def("polynomial_ring",
          [](const std::shared_ptr<cas::Field>& f, const std::vector<std::string>& names) {
              auto [ring, gens] = cas::make_polynomial_ring(freeze_ptr(f), names);
              return py::make_tuple(as_mut(ring), gens);
          },
          py::arg("field"), py::arg("names"),
          "Returns (ring, [generators]) over the given coefficient field");

    m.def("snf", [](const cas::IntMatrix& m_) { return cas::snf_integer(m_); },
          "Smith normal form via the integer-specific elimination");
    m.def("snf_generic", [](const cas::IntMatrix& m_) { return cas::snf_euclidean(m_); },
          "Smith normal form via the generic Euclidean-domain elimination");

    m.def("save",
          [](const std::string& path, const py::object& v) {
              mrdi::save_file(path, py_to_value(v));
          },
          py::arg("path"), py::arg("value"));
    m.def("load",
          [](const std::string& path, mrdi::Session& session) {
              return value_to_py(mrdi::load_file(path, session));
          },
          py::arg("path"), py::arg("session"));
    m.def("content_id",
          [](const py::object& v) { return mrdi::content_id(py_to_value(v)); },
          "Deterministic UUID naming the value's own fragment");
    m.def("canonical_bytes",
          [](const py::object& v) {
              return py::bytes(mrdi::save(py_to_value(v)).canonical_bytes());
          },
          "Canonical serialized bytes (no trailing newline)");

    m.def("validate_file",
          [](const std::string& path) {
              mrdi::Document doc = mrdi::read_document_file(path);
              std::vector<std::string> out;
              for (const auto& v : mrdi::validate(doc)) {
                  out.push_back(to_string(v.kind) + ": " + v.path + ": " + v.message);
              }
              return out;
          },
          py::arg("path"), "Violations as strings; empty means the file is valid");

    m.def("upgrade_file",
          [](const std::string& path, int to) {
              mrdi::Document doc = mrdi::read_document_file(path);
              if (doc.format_version() == to) return;
              mrdi::write_document_file(path, mrdi::upgrade(doc, to));
          },
          py::arg("path"), py::arg("to"));

    m.def("tree_hash", &env::tree_hash, py::arg("path"),
          "Deterministic content hash of a directory tree");

    m.def("versioninfo",
          [](bool full) {
              auto report = env::collect_versioninfo(full ? env::Verbosity::Full
                                                          : env::Verbosity::Brief);
              return join_lines(env::format_report(report));
          },
          py::arg("full") = false);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code = cli::run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"),
          "Runs one CLI invocation in-process; returns (exit_code, stdout, stderr)");
}
