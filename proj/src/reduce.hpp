#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rat.hpp"

namespace latdist {

enum class ReduceKind { size, lll, hkz, dsvp, slide, padded_slide, seysen, pipeline };

const char* reduce_kind_name(ReduceKind k);

/**
 * Result of a reduction: basis == input * transform with transform unimodular,
 * so both matrices generate the same lattice. delta, block, and epsilon record
 * the parameters the reduction ran with. Composite reductions (padded slide,
 * the full pipeline) keep their inner results in stages so the certificate
 * checker can re-verify every step.
 */
struct ReducedBasis {
    RatMatrix input;
    RatMatrix basis;
    RatMatrix transform;
    ReduceKind kind = ReduceKind::size;
    Rat delta;
    int block = 0;
    Rat epsilon;
    std::vector<ReducedBasis> stages;
};

/** Makes every |mu_ij| <= 1/2 without touching the GS norms. */
ReducedBasis size_reduce(const RatMatrix& basis);

/** Size-reduced plus the Lovasz condition at delta, default 3/4. */
ReducedBasis lll_reduce(const RatMatrix& basis, const Rat& delta = Rat(3, 4));

/** Every projected tail basis starts with a vector achieving its lambda_1. */
ReducedBasis hkz_reduce(const RatMatrix& basis, uint64_t cap = 0);

/** Reorders so the last dual vector is within (1+epsilon) of the dual's lambda_1. */
ReducedBasis dsvp_reduce(const RatMatrix& basis, const Rat& epsilon, uint64_t cap = 0);

/**
 * Block reduction: size-reduced, primal k-blocks HKZ, shifted blocks
 * epsilon-DSVP. Requires k to divide the column count.
 */
ReducedBasis slide_reduce(const RatMatrix& basis, int k, const Rat& epsilon, uint64_t cap = 0);

/**
 * Slide reduction for any n: pads with long orthogonal vectors to the next
 * multiple of k, slide-reduces with epsilon = 1/n', and keeps the first n
 * vectors, which are verified to generate the input lattice exactly.
 */
ReducedBasis pad_and_slide(const RatMatrix& basis, int k, uint64_t cap = 0);

/** max over i <= j of gs_i / gs_j on exact squared GS norms. */
Rat eta_sq(const RatMatrix& basis);

/** sqrt(eta_sq) in floating point. */
double eta(const RatMatrix& basis);

struct CertificateReport {
    bool ok = true;
    std::string detail;
};

/** Re-verifies the claimed reduction from scratch, trusting nothing in rb
 * beyond its inputs; oracle-backed where a condition needs exact minima. */
CertificateReport check_certificate(const ReducedBasis& rb, uint64_t cap = 0);

/** Unimodular integer matrix whose first column is the primitive vector x. */
RatMatrix unimodular_with_first_column(const std::vector<Int>& x);

/** Unimodular integer matrix whose last column is the primitive vector y. */
RatMatrix unimodular_with_last_column(const std::vector<Int>& y);

}  // namespace latdist
