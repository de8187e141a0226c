#include "mathrepro/cas/snf.hpp"

#include <cstddef>
#include <utility>
#include <vector>

#include "mathrepro/cas/euclidean_snf.hpp"

namespace mathrepro::cas {

namespace {

bool divides(const Integer& a, const Integer& b) {
  if (a.is_zero()) return b.is_zero();
  return (b % a).is_zero();
}

// In-place gcd/lcm sweep: after pass i the entry d[i] divides every later
// entry, and per-prime valuation multisets are preserved, so the result is
// the invariant-factor chain of diag(d).
void divisibility_sweep(std::vector<Integer>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (divides(d[i], d[j])) continue;
      Integer g = Integer::gcd(d[i], d[j]);
      Integer l = (d[i] / g) * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
}

}  // namespace

IntMatrix snf_integer(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t limit = rows < cols ? rows : cols;

  std::size_t rank = limit;
  for (std::size_t t = 0; t < limit; ++t) {
    bool cleared = false;
    while (!cleared) {
      // Smallest absolute nonzero entry of the trailing submatrix makes
      // the quotients small and keeps intermediate growth down.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          const Integer& e = a.at(i, j);
          if (e.is_zero()) continue;
          Integer mag = e.abs();
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) {
        rank = t;
        break;
      }
      a.swap_rows(t, pi);
      a.swap_cols(t, pj);

      cleared = true;
      const Integer pivot = a.at(t, t);
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a.at(i, t).is_zero()) continue;
        Integer q = a.at(i, t) / pivot;
        for (std::size_t j = t; j < cols; ++j) {
          a.at(i, j) -= q * a.at(t, j);
        }
        if (!a.at(i, t).is_zero()) cleared = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a.at(t, j).is_zero()) continue;
        Integer q = a.at(t, j) / pivot;
        for (std::size_t i = t; i < rows; ++i) {
          a.at(i, j) -= q * a.at(i, t);
        }
        if (!a.at(t, j).is_zero()) cleared = false;
      }
    }
    if (rank == t) break;
  }

  std::vector<Integer> diagonal(limit, Integer(0));
  for (std::size_t t = 0; t < rank; ++t) diagonal[t] = a.at(t, t).abs();
  divisibility_sweep(diagonal);

  IntMatrix out(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) out.at(t, t) = diagonal[t];
  return out;
}

namespace {

struct IntegerDomain {
  using Element = Integer;
  static Element zero() { return Integer(0); }
  static bool is_zero(const Element& a) { return a.is_zero(); }
  static Element add(const Element& a, const Element& b) { return a + b; }
  static Element subtract(const Element& a, const Element& b) { return a - b; }
  static Element multiply(const Element& a, const Element& b) { return a * b; }
  static std::pair<Element, Element> divmod(const Element& a,
                                            const Element& b) {
    return a.divmod(b);
  }
  static Element canonical_unit_normal(const Element& a) { return a.abs(); }
};

}  // namespace

IntMatrix snf_euclidean(const IntMatrix& m) {
  std::vector<Integer> reduced = euclidean_smith_normal_form<IntegerDomain>(
      m.rows(), m.cols(), m.entries());
  return IntMatrix(m.rows(), m.cols(), std::move(reduced));
}

}  // namespace mathrepro::cas
