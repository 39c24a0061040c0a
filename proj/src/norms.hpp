#pragma once

#include "matrix.hpp"

namespace latdist {

/**
 * Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, iterated until
 * the off-diagonal Frobenius mass falls below 1e-14 of the total. Ascending order.
 */
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

/** Largest singular value of T, via the exact Gram matrix T^T T. */
double operator_norm(const RatMatrix& t);

/** sigma_max/sigma_min of a square nonsingular T, scale-free to avoid overflow. */
double condition_number(const RatMatrix& t);

/**
 * Condition number of the linear map B1 x -> B2 x between the spans of two
 * full-column-rank bases, from the generalized eigenvalues of (G2, G1).
 * Equals condition_number(B2 B1^-1) in the square case.
 */
double pencil_condition(const RatMatrix& g1, const RatMatrix& g2);

/** Operator norm of the same map: sqrt of the largest generalized eigenvalue. */
double pencil_norm(const RatMatrix& g1, const RatMatrix& g2);

/**
 * Double-precision pencil kernel: factor G1 once with prepare_pencil, then feed
 * many G2 variants (as doubles, same exact 2^e scaling) to pencil_extremes.
 */
struct PencilBase {
    int n = 0;
    std::vector<double> chol;  // lower-triangular Cholesky factor of scaled G1
    long scale_exp = 0;
};

PencilBase prepare_pencil(const RatMatrix& g1);

/** Scales a Gram matrix exactly by 2^-e picked from its largest entry; returns doubles. */
std::vector<double> scaled_doubles(const RatMatrix& g, long* scale_exp);

/**
 * {min, max} eigenvalues of the pencil built from the scaled doubles of G2;
 * true generalized eigenvalues carry an extra 2^(g2_exp - base.scale_exp).
 */
std::pair<double, double> pencil_extremes(const PencilBase& base, const std::vector<double>& g2);

}  // namespace latdist
