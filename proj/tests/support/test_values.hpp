#ifndef MATHREPRO_TESTS_SUPPORT_TEST_VALUES_HPP
#define MATHREPRO_TESTS_SUPPORT_TEST_VALUES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mathrepro/cas/field.hpp"
#include "mathrepro/cas/matrix.hpp"
#include "mathrepro/cas/polynomial.hpp"
#include "mathrepro/cas/value.hpp"

namespace testutil {

/// Deterministic stream of kernel values covering every serializable type.
/// mt19937_64 plus explicit modular reduction keeps the sequence identical
/// across processes and platforms, which the determinism checks rely on.
class ValueGen {
 public:
    explicit ValueGen(std::uint64_t seed) : rng_(seed) {
        namespace cas = mathrepro::cas;
        fields_.push_back(cas::make_prime_field(cas::Integer(2)));
        fields_.push_back(cas::make_prime_field(cas::Integer(7)));
        fields_.push_back(cas::make_prime_field(cas::Integer(101)));
        fields_.push_back(cas::make_finite_field(cas::Integer(2), 2));
        fields_.push_back(cas::make_finite_field(cas::Integer(2), 4));
        fields_.push_back(cas::make_finite_field(cas::Integer(3), 3));
        fields_.push_back(cas::make_finite_field(cas::Integer(7), 2));
        fields_.push_back(cas::make_finite_field(cas::Integer(13), 2));
        const std::vector<std::vector<std::string>> name_sets = {
            {"x"}, {"x", "y"}, {"x", "y", "z"}, {"a", "b"}};
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            rings_.push_back(
                cas::make_polynomial_ring(fields_[i], name_sets[i % name_sets.size()])
                    .first);
        }
    }

    std::uint64_t pick(std::uint64_t n) { return rng_() % n; }

    mathrepro::cas::Integer integer() {
        namespace cas = mathrepro::cas;
        cas::Integer v(static_cast<long>(pick(20001)) - 10000);
        if (pick(8) == 0) {
            // Occasionally very large, to keep GMP honest.
            for (int i = 0; i < 4; ++i) {
                v = v * cas::Integer(1000003) + cas::Integer(static_cast<long>(pick(997)));
            }
        }
        return v;
    }

    mathrepro::cas::FieldPtr field() { return fields_[pick(fields_.size())]; }

    mathrepro::cas::FieldElement element(const mathrepro::cas::FieldPtr& f) {
        std::vector<mathrepro::cas::Integer> coeffs;
        for (int i = 0; i < f->degree(); ++i) {
            coeffs.emplace_back(static_cast<long>(pick(1000)));
        }
        return f->element(coeffs);
    }

    mathrepro::cas::RingPtr ring() { return rings_[pick(rings_.size())]; }

    mathrepro::cas::Polynomial polynomial(const mathrepro::cas::RingPtr& r) {
        namespace cas = mathrepro::cas;
        cas::Polynomial p = r->zero();
        const std::size_t nterms = pick(6);
        for (std::size_t t = 0; t < nterms; ++t) {
            cas::Polynomial term = r->constant(element(r->coefficient_field()));
            for (std::size_t v = 0; v < r->variable_count(); ++v) {
                const std::uint64_t e = pick(4);
                if (e > 0) term = term * r->generator(v).pow(cas::Integer(static_cast<long>(e)));
            }
            p = p + term;
        }
        return p;
    }

    mathrepro::cas::IntMatrix matrix(std::uint64_t max_dim, long entry_bound) {
        namespace cas = mathrepro::cas;
        const std::size_t rows = 1 + pick(max_dim);
        const std::size_t cols = 1 + pick(max_dim);
        std::vector<cas::Integer> entries;
        entries.reserve(rows * cols);
        for (std::size_t i = 0; i < rows * cols; ++i) {
            entries.emplace_back(static_cast<long>(pick(2 * entry_bound + 1)) -
                                 entry_bound);
        }
        return cas::IntMatrix(rows, cols, entries);
    }

    /// One value of a round-robin type so a corpus of n values covers all
    /// six alternatives evenly.
    mathrepro::cas::Value value(std::size_t i) {
        namespace cas = mathrepro::cas;
        switch (i % 6) {
            case 0: return integer();
            case 1: return element(field());
            case 2: return polynomial(ring());
            case 3: return matrix(5, 99);
            case 4: return cas::Value(field());
            default: return cas::Value(ring());
        }
    }

    std::vector<mathrepro::cas::Value> corpus(std::size_t n) {
        std::vector<mathrepro::cas::Value> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(value(i));
        return out;
    }

 private:
    std::mt19937_64 rng_;
    std::vector<mathrepro::cas::FieldPtr> fields_;
    std::vector<mathrepro::cas::RingPtr> rings_;
};

}  // namespace testutil

#endif
