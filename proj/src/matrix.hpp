#pragma once

#include <vector>

#include "rat.hpp"

namespace latdist {

/**
 * Dense rational matrix, row-major. Basis vectors are stored as columns
 * throughout; entries stay in lowest terms because mpq_class canonicalizes.
 */
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols);

    static RatMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rat& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    RatVec col(int j) const;
    void set_col(int j, const RatVec& v);
    void swap_cols(int a, int b);

    bool operator==(const RatMatrix& other) const;
    bool operator!=(const RatMatrix& other) const { return !(*this == other); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> data_;
};

RatMatrix mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& a);
RatVec mul_vec(const RatMatrix& a, const RatVec& v);

/** <a, b> for equally sized vectors. */
Rat dot(const RatVec& a, const RatVec& b);
Rat norm_sq(const RatVec& v);

/** Largest |entry|, exact. */
Rat inf_norm(const RatMatrix& a);

/** Exact inverse by Gauss-Jordan elimination; throws errc::singular. */
RatMatrix inverse(const RatMatrix& a);

/** Exact determinant by fraction elimination; square input only. */
Rat determinant(const RatMatrix& a);

/** Integer entries and |det| = 1, both checked exactly. */
bool is_unimodular(const RatMatrix& a);

/** True when every entry below the diagonal is 0 and the diagonal is all 1. */
bool is_unipotent_upper(const RatMatrix& a);

}  // namespace latdist
