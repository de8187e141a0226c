#include "mathrepro/cas/matrix.hpp"

#include <algorithm>

#include "mathrepro/error.hpp"

namespace mathrepro::cas {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::InvalidInput, "matrix dimensions must be positive");
  }
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::InvalidInput, "matrix dimensions must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::InvalidInput,
                "entry count does not match matrix shape");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Integer(1);
  return m;
}

const Integer& IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw Error(ErrorKind::InvalidInput, "matrix index out of range");
  }
  return entries_[i * cols_ + j];
}

Integer& IntMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) {
    throw Error(ErrorKind::InvalidInput, "matrix index out of range");
  }
  return entries_[i * cols_ + j];
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

}  // namespace mathrepro::cas
