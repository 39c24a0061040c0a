#pragma once

#include <cstdint>

#include "matrix.hpp"
#include "rat.hpp"
#include "reduce.hpp"

namespace latdist {

/**
 * Result of unipotent conditioning: conditioned == input * transform, with
 * transform a unipotent upper-triangular integer matrix. s_prime_value is the
 * exact S' of the conditioned matrix; s_value its Seysen measure as a float.
 */
struct SeysenReport {
    RatMatrix conditioned;
    RatMatrix transform;
    Rat s_prime_value;
    double s_value = 0.0;
};

/** max_i ||b_i||^2 * ||b*_i||^2 over the columns and their duals, exact. */
Rat s_condition_sq(const RatMatrix& basis);

/** S(B) = max_i ||b_i|| * ||b*_i||; the square is exact, the root is a float. */
double s_condition(const RatMatrix& basis);

/** S'(A) = max of the entrywise infinity norms of A and A^-1, exact. */
Rat s_prime(const RatMatrix& a);

/**
 * Conditions a unipotent upper-triangular matrix by recursive bisection:
 * both halves are conditioned, then the off-diagonal block is reduced by an
 * integer matrix that rounds it to within 1/2 entrywise at the merge.
 */
SeysenReport seysen_condition(const RatMatrix& a);

/**
 * Improves S(B) by conditioning the unipotent factor of B = Q*D*R' and
 * applying the resulting transform to B itself. The output is checked
 * exactly against S(out) <= n * eta(B) * S'(R'U)^2.
 */
ReducedBasis seysen_reduce_basis(const RatMatrix& basis);

/** pad_and_slide with block size k followed by seysen_reduce_basis. */
ReducedBasis reduced_basis_pipeline(const RatMatrix& basis, int k, uint64_t cap = 0);

CertificateReport check_seysen_certificate(const ReducedBasis& rb);
CertificateReport check_pipeline_certificate(const ReducedBasis& rb, uint64_t cap = 0);

}  // namespace latdist
