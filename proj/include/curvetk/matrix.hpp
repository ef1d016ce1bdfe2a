#pragma once

#include <vector>

#include "curvetk/field.hpp"

namespace curvetk {

// Dense matrix over a FieldSpec. Sizes here are tiny (g x g for g <= 10), so
// plain exact Gaussian elimination is used throughout.
class Matrix {
  public:
    Matrix(const FieldSpec& s, size_t rows, size_t cols);

    const FieldSpec& field() const { return *spec_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FieldElement& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const FieldElement& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    static Matrix identity(const FieldSpec& s, size_t n);
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    // entry-wise a -> a^(p^k)
    Matrix frobenius_twist(unsigned k) const;

    size_t rank() const;

  private:
    const FieldSpec* spec_;
    size_t rows_, cols_;
    std::vector<FieldElement> e_;
};

inline size_t matrix_rank(const Matrix& m) { return m.rank(); }

}  // namespace curvetk
