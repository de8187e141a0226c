#ifndef MATHREPRO_CAS_EUCLIDEAN_SNF_HPP
#define MATHREPRO_CAS_EUCLIDEAN_SNF_HPP

#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

namespace mathrepro::cas {

/// Traits bundle for a Euclidean domain. `divmod(a, b)` must return (q, r)
/// with a = q*b + r and either r = 0 or N(r) < N(b) for the domain's
/// Euclidean function N; that contract alone drives termination below.
/// `canonical_unit_normal` maps an element to its canonical associate.
template <typename D>
concept EuclideanDomain = requires(const typename D::Element& a,
                                   const typename D::Element& b) {
  typename D::Element;
  { D::zero() } -> std::convertible_to<typename D::Element>;
  { D::is_zero(a) } -> std::convertible_to<bool>;
  { D::add(a, b) } -> std::convertible_to<typename D::Element>;
  { D::subtract(a, b) } -> std::convertible_to<typename D::Element>;
  { D::multiply(a, b) } -> std::convertible_to<typename D::Element>;
  {
    D::divmod(a, b)
  } -> std::convertible_to<std::pair<typename D::Element, typename D::Element>>;
  { D::canonical_unit_normal(a) } -> std::convertible_to<typename D::Element>;
};

/// Textbook Smith reduction over an arbitrary Euclidean domain: put the
/// first nonzero entry on the pivot, clear its row and column with
/// division-with-remainder steps (remainders swap into the pivot), then
/// force the pivot to divide the whole trailing submatrix before moving
/// on. Each pivot therefore divides the next; no post-processing pass is
/// needed. Returns the row-major matrix in diagonal form.
template <typename D>
  requires EuclideanDomain<D>
std::vector<typename D::Element> euclidean_smith_normal_form(
    std::size_t rows, std::size_t cols,
    std::vector<typename D::Element> a) {
  using E = typename D::Element;
  auto at = [&](std::size_t i, std::size_t j) -> E& { return a[i * cols + j]; };

  auto row_subtract = [&](std::size_t target, std::size_t source,
                          const E& factor) {
    for (std::size_t j = 0; j < cols; ++j) {
      at(target, j) =
          D::subtract(at(target, j), D::multiply(factor, at(source, j)));
    }
  };
  auto col_subtract = [&](std::size_t target, std::size_t source,
                          const E& factor) {
    for (std::size_t i = 0; i < rows; ++i) {
      at(i, target) =
          D::subtract(at(i, target), D::multiply(factor, at(i, source)));
    }
  };
  auto row_add = [&](std::size_t target, std::size_t source) {
    for (std::size_t j = 0; j < cols; ++j) {
      at(target, j) = D::add(at(target, j), at(source, j));
    }
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x != y) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(x, j), at(y, j));
    }
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x != y) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, x), at(i, y));
    }
  };

  std::size_t limit = rows < cols ? rows : cols;
  for (std::size_t t = 0; t < limit; ++t) {
    for (;;) {
      if (D::is_zero(at(t, t))) {
        bool found = false;
        for (std::size_t i = t; i < rows && !found; ++i) {
          for (std::size_t j = t; j < cols && !found; ++j) {
            if (!D::is_zero(at(i, j))) {
              swap_rows(t, i);
              swap_cols(t, j);
              found = true;
            }
          }
        }
        if (!found) return a;  // trailing submatrix is zero
      }

      bool restart = false;
      for (std::size_t i = t + 1; i < rows && !restart; ++i) {
        if (D::is_zero(at(i, t))) continue;
        auto [q, r] = D::divmod(at(i, t), at(t, t));
        row_subtract(i, t, q);
        if (!D::is_zero(r)) {
          swap_rows(t, i);  // remainder has smaller norm; retry with it
          restart = true;
        }
      }
      if (restart) continue;

      for (std::size_t j = t + 1; j < cols && !restart; ++j) {
        if (D::is_zero(at(t, j))) continue;
        auto [q, r] = D::divmod(at(t, j), at(t, t));
        col_subtract(j, t, q);
        if (!D::is_zero(r)) {
          swap_cols(t, j);
          restart = true;
        }
      }
      if (restart) continue;

      // Pivot must divide every remaining entry so the invariant-factor
      // chain holds; pull a violating row up and reduce again.
      for (std::size_t i = t + 1; i < rows && !restart; ++i) {
        for (std::size_t j = t + 1; j < cols && !restart; ++j) {
          auto [q, r] = D::divmod(at(i, j), at(t, t));
          (void)q;
          if (!D::is_zero(r)) {
            row_add(t, i);
            restart = true;
          }
        }
      }
      if (!restart) break;
    }
    at(t, t) = D::canonical_unit_normal(at(t, t));
  }
  return a;
}

}  // namespace mathrepro::cas

#endif
