#pragma once

#include "matrix.hpp"

namespace latdist {

/**
 * Exact Gram-Schmidt data for a full-column-rank basis: mu(i,j) for j < i and
 * the squared norms of the orthogonalized vectors. The orthogonal vectors
 * themselves are never materialized; everything downstream works from these.
 */
struct GramSchmidtData {
    std::vector<std::vector<Rat>> mu;
    std::vector<Rat> gs_norm_sq;

    int size() const { return static_cast<int>(gs_norm_sq.size()); }
};

/** GS data of the columns; throws errc::rank_deficient when they are dependent. */
GramSchmidtData gram_schmidt(const RatMatrix& basis);

/** B^T B, exact. */
RatMatrix gram_matrix(const RatMatrix& basis);

/** GS data derived from a Gram matrix alone (for projected blocks). */
GramSchmidtData gs_from_gram(const RatMatrix& gram);

/**
 * B = Q D R' split: d_sq holds the squared diagonal of D and r_prime is the
 * unipotent upper-triangular factor with r'(i,j) = mu(j,i) above the diagonal.
 */
struct DRPrime {
    std::vector<Rat> d_sq;
    RatMatrix r_prime;
};

DRPrime dr_decompose(const RatMatrix& basis);

/** max over i <= j of gs[i]/gs[j], the squared eta profile measure. */
Rat eta_sq_from_gs(const GramSchmidtData& gs);

/**
 * Gram matrix of the block [pi_s(b_s), ..., pi_s(b_{s+len-1})] where pi_s
 * projects away the span of the first s basis vectors; exact, from global GS data.
 */
RatMatrix projected_gram(const GramSchmidtData& gs, int start, int len);

}  // namespace latdist
