#ifndef MATHREPRO_CAS_MATRIX_HPP
#define MATHREPRO_CAS_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "mathrepro/cas/integer.hpp"

namespace mathrepro::cas {

/// Dense row-major matrix over Integer.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Integer& at(std::size_t i, std::size_t j) const;
  Integer& at(std::size_t i, std::size_t j);

  const std::vector<Integer>& entries() const { return entries_; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  bool operator==(const IntMatrix& rhs) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> entries_;
};

}  // namespace mathrepro::cas

#endif
