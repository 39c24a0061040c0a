#include "matrix.hpp"

#include "errors.hpp"

namespace latdist {

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) fail(errc::bad_argument, "negative matrix dimension");
    data_.assign(static_cast<size_t>(rows) * cols, Rat(0));
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatVec RatMatrix::col(int j) const {
    RatVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void RatMatrix::set_col(int j, const RatVec& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void RatMatrix::swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

bool RatMatrix::operator==(const RatMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) fail(errc::bad_argument, "matrix product shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatMatrix transpose(const RatMatrix& a) {
    RatMatrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

RatVec mul_vec(const RatMatrix& a, const RatVec& v) {
    if (a.cols() != static_cast<int>(v.size())) fail(errc::bad_argument, "matrix-vector shape mismatch");
    RatVec out(a.rows(), Rat(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) out[i] += a(i, j) * v[j];
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) fail(errc::bad_argument, "dot product size mismatch");
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat norm_sq(const RatVec& v) {
    Rat s(0);
    for (const Rat& x : v) s += x * x;
    return s;
}

Rat inf_norm(const RatMatrix& a) {
    Rat m(0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            Rat x = abs(a(i, j));
            if (x > m) m = x;
        }
    return m;
}

RatMatrix inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) fail(errc::bad_argument, "inverse of non-square matrix");
    int n = a.rows();
    RatMatrix work = a;
    RatMatrix inv = RatMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (sgn(work(i, col)) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) fail(errc::singular, "singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Rat p = work(col, col);
        for (int j = 0; j < n; ++j) {
            work(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || sgn(work(i, col)) == 0) continue;
            Rat f = work(i, col);
            for (int j = 0; j < n; ++j) {
                work(i, j) -= f * work(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Rat determinant(const RatMatrix& a) {
    if (a.rows() != a.cols()) fail(errc::bad_argument, "determinant of non-square matrix");
    int n = a.rows();
    RatMatrix work = a;
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (sgn(work(i, col)) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            for (int j = col; j < n; ++j) std::swap(work(pivot, j), work(col, j));
            det = -det;
        }
        Rat p = work(col, col);
        det *= p;
        for (int i = col + 1; i < n; ++i) {
            if (sgn(work(i, col)) == 0) continue;
            Rat f = work(i, col) / p;
            for (int j = col; j < n; ++j) work(i, j) -= f * work(col, j);
        }
    }
    return det;
}

bool is_unimodular(const RatMatrix& a) {
    if (a.rows() != a.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!is_integer(a(i, j))) return false;
    Rat d = determinant(a);
    return d == 1 || d == -1;
}

bool is_unipotent_upper(const RatMatrix& a) {
    if (a.rows() != a.cols()) return false;
    for (int i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 1) return false;
        for (int j = 0; j < i; ++j)
            if (sgn(a(i, j)) != 0) return false;
    }
    return true;
}

}  // namespace latdist
