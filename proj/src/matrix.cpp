#include "curvetk/matrix.hpp"

#include <stdexcept>

namespace curvetk {

Matrix::Matrix(const FieldSpec& s, size_t rows, size_t cols)
    : spec_(&s), rows_(rows), cols_(cols), e_(rows * cols, FieldElement(s)) {}

Matrix Matrix::identity(const FieldSpec& s, size_t n) {
    Matrix m(s, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::from_int(s, 1);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("matrices over different fields");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(*spec_, rows_, o.cols_);
    std::vector<u32> tmp(spec_->n());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const FieldElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const FieldElement& b = o.at(k, j);
                if (b.is_zero()) continue;
                spec_->mul(a.data(), b.data(), tmp.data());
                spec_->add(r.at(i, j).data(), tmp.data(), r.at(i, j).data());
            }
        }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (spec_ != o.spec_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

Matrix Matrix::frobenius_twist(unsigned k) const {
    Matrix r(*spec_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].frobenius(static_cast<int>(k));
    return r;
}

size_t Matrix::rank() const {
    Matrix w = *this;
    size_t rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t piv = row;
        while (piv < rows_ && w.at(piv, col).is_zero()) ++piv;
        if (piv == rows_) continue;
        for (size_t c = 0; c < cols_; ++c) std::swap(w.at(piv, c), w.at(row, c));
        FieldElement inv = w.at(row, col).inverse();
        for (size_t c = col; c < cols_; ++c) w.at(row, c) *= inv;
        for (size_t r = 0; r < rows_; ++r) {
            if (r == row || w.at(r, col).is_zero()) continue;
            FieldElement f = w.at(r, col);
            for (size_t c = col; c < cols_; ++c) w.at(r, c) -= f * w.at(row, c);
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace curvetk
