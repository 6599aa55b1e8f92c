#include "matrix.hpp"

namespace multspec {

// Cohen, "A Course in Computational Algebraic Number Theory", Alg. 2.2.9:
// similarity-reduce to upper Hessenberg form with pivoting, then expand the
// characteristic polynomial by the Hessenberg recurrence.
Poly charpoly(const Mat& a) {
    if (a.rows() != a.cols()) throw Error(Err::Internal, "charpoly of non-square matrix");
    const FieldPtr& k = a.field();
    int n = a.rows();
    Mat h = a;
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (!h.at(i, j).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != j + 1) {
            for (int c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
            for (int r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
        }
        FieldElement inv = h.at(j + 1, j).inverse();
        for (int i = j + 2; i < n; ++i) {
            if (h.at(i, j).is_zero()) continue;
            FieldElement m = h.at(i, j) * inv;
            for (int c = j; c < n; ++c) h.at(i, c) = h.at(i, c) - m * h.at(j + 1, c);
            for (int r = 0; r < n; ++r) h.at(r, j + 1) = h.at(r, j + 1) + m * h.at(r, i);
        }
    }
    std::vector<Poly> p;
    p.reserve((size_t)n + 1);
    p.push_back(Poly::constant(k->one()));
    Poly x = Poly::x(k);
    for (int m = 1; m <= n; ++m) {
        Poly pm = (x - Poly::constant(h.at(m - 1, m - 1))) * p[(size_t)m - 1];
        FieldElement t = k->one();
        for (int i = 1; i <= m - 1; ++i) {
            t = t * h.at(m - i, m - i - 1);
            FieldElement c = t * h.at(m - i - 1, m - 1);
            if (!c.is_zero()) pm = pm - p[(size_t)(m - i - 1)].scale(c);
        }
        p.push_back(std::move(pm));
    }
    return p.back();
}

std::vector<std::vector<FieldElement>> nullspace(const Mat& a) {
    const FieldPtr& k = a.field();
    int rows = a.rows(), cols = a.cols();
    Mat m = a;
    std::vector<int> pivot_of_col(cols, -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int i = row; i < rows; ++i)
            if (!m.at(i, col).is_zero()) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        FieldElement inv = m.at(row, col).inverse();
        for (int c = 0; c < cols; ++c) m.at(row, c) = m.at(row, c) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            FieldElement f = m.at(i, col);
            for (int c = 0; c < cols; ++c) m.at(i, c) = m.at(i, c) - f * m.at(row, c);
        }
        pivot_of_col[col] = row;
        ++row;
    }
    std::vector<std::vector<FieldElement>> basis;
    for (int col = 0; col < cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<FieldElement> v(cols, k->zero());
        v[(size_t)col] = k->one();
        for (int c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0) v[(size_t)c] = -m.at(pivot_of_col[c], col);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace multspec
