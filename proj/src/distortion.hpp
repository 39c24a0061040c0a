#pragma once

#include <cstdint>

#include "lattice.hpp"
#include "matrix.hpp"
#include "rat.hpp"

namespace latdist {

/**
 * Everything a distortion run produces: the mapping T with kappa(T) as the
 * upper bound, an exact unimodular witness U with T * A1 = A2 * U for the
 * original input bases, the two sorted reduced bases the run worked with,
 * and the exact squared two-sided M-factor lower bound. mapping is only
 * materialized when both bases are square; the witness and the bounds are
 * computed either way. has_lower_bound is false when the minima oracle ran
 * out of budget.
 */
struct DistortionCertificate {
    RatMatrix mapping;
    RatMatrix witness;
    RatMatrix basis1;
    RatMatrix basis2;
    bool has_lower_bound = false;
    Rat m12_sq;
    Rat m21_sq;
    Rat lower_bound_sq;
    double upper_bound = 0.0;
};

enum class Verdict { yes, no, unknown };

const char* verdict_name(Verdict v);

struct GapDecision {
    Verdict verdict = Verdict::unknown;
    Rat c;
    double gamma = 1.0;
    DistortionCertificate evidence;
};

/** Exact M(L1, L2)^2 = max_i lambda_i(L2)^2 / lambda_i(L1)^2. */
Rat m_factor_sq(const LatticeHandle& l1, const LatticeHandle& l2, uint64_t cap = 0);

/** Exact (M(L1,L2) * M(L2,L1))^2, a lower bound on dist(L1, L2)^2. */
Rat distortion_lower_bound_sq(const LatticeHandle& l1, const LatticeHandle& l2,
                              uint64_t cap = 0);

/**
 * Reduces both bases with the block-k pipeline, sorts each by exact squared
 * length, and returns T mapping the first sorted basis onto the second,
 * with kappa(T) and the exact M-factor lower bound.
 */
DistortionCertificate ldp_solve(const LatticeHandle& l1, const LatticeHandle& l2, int k,
                                uint64_t cap = 0);

/**
 * Re-checks the certificate's bound chain within a 1e-6 relative tolerance:
 * each operator norm against n*S(B1)*S(B2)*M, the lower bound against
 * kappa(T), and kappa(T) against n^2*S(B1)^2*S(B2)^2 times the lower bound.
 */
bool distortion_upper_bound_check(const DistortionCertificate& cert);

/**
 * YES when kappa(T) <= c; NO when the exact lower bound exceeds gamma * c
 * with a 1e-9 guard band biased toward UNKNOWN; UNKNOWN otherwise.
 */
GapDecision gap_decide(const LatticeHandle& l1, const LatticeHandle& l2, const Rat& c,
                       double gamma, int k, uint64_t cap = 0);

/** True iff T maps lattice 1 onto lattice 2 exactly. */
bool verify_mapping(const RatMatrix& t, const LatticeHandle& l1, const LatticeHandle& l2);

/**
 * Minimizes kappa over every unimodular U with entries in
 * [-coeff_bound, coeff_bound], for n <= 3. Ties prefer U closest to the
 * identity. The result is an upper bound on dist that reaches it once
 * coeff_bound covers an optimal transform.
 */
DistortionCertificate brute_force_distortion(const LatticeHandle& l1, const LatticeHandle& l2,
                                             int coeff_bound, uint64_t cap = 0);

/** kappa of the change of basis b1 -> b2; exact Gram pencil when rectangular. */
double pair_condition_number(const RatMatrix& b1, const RatMatrix& b2);

}  // namespace latdist
