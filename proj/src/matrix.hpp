#ifndef MULTSPEC_MATRIX_HPP
#define MULTSPEC_MATRIX_HPP

#include "poly.hpp"

namespace multspec {

// Small dense matrix over a Field. Only what the spectrum and census code
// needs: characteristic polynomials and kernels.
class Mat {
  public:
    Mat(FieldPtr f, int rows, int cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          a_((size_t)rows * (size_t)cols, field_->zero()) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    FieldElement& at(int i, int j) { return a_[(size_t)i * (size_t)cols_ + (size_t)j]; }
    const FieldElement& at(int i, int j) const {
        return a_[(size_t)i * (size_t)cols_ + (size_t)j];
    }

  private:
    FieldPtr field_;
    int rows_, cols_;
    std::vector<FieldElement> a_;
};

// monic characteristic polynomial det(T I - A) via Hessenberg reduction
Poly charpoly(const Mat& a);

// basis of the right kernel of A (list of column vectors)
std::vector<std::vector<FieldElement>> nullspace(const Mat& a);

} // namespace multspec

#endif
