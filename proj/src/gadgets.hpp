#pragma once

#include <cstdint>
#include <vector>

#include "lattice.hpp"
#include "matrix.hpp"
#include "rat.hpp"

namespace latdist {

/**
 * One promise instance of approximate CVP: YES when dist(target, lattice) is
 * at most sqrt(d_sq); NO when every nonzero integer multiple of the target
 * stays beyond gamma * sqrt(d_sq) and sqrt(d_sq) < alpha * lambda_1.
 */
struct CvpAlphaInstance {
    LatticeHandle lattice;
    RatVec target;
    Rat d_sq;
    double gamma = 1.0;
    double alpha = 1.0;

    CvpAlphaInstance(LatticeHandle l, RatVec t, Rat d2, double g, double a);
};

/**
 * A CVP instance recast as a pair of lattices one dimension up: l1 appends an
 * orthogonal vector of length r to the basis, l2 appends the target (shifted
 * by its closest lattice vector) plus that same orthogonal vector. Instances
 * with a close target make the pair similar, kappa <= c; far instances with
 * margin to spare force every mapping's kappa beyond gamma * c.
 */
struct LdpGadget {
    LatticeHandle l1;
    LatticeHandle l2;
    Rat r;
    Rat c;
    Rat d_sq;
    double gamma = 1.0;

    LdpGadget(LatticeHandle a, LatticeHandle b, Rat r_in, Rat c_in, Rat d2, double g);
};

struct BatchTrace {
    Int p;
    Rat r;
    double gamma = 1.0;
    Rat gamma_prime;
    Rat d;
    Rat d_prime_sq;
};

/**
 * The per-coset CVP instances whose joint answer decides whether lambda_1 of
 * the source lattice is at most d: one instance per basis direction i and
 * nonzero residue j, with lattice b_1, ..., p*b_i, ..., b_n and target
 * j*b_i + r*e_{n+1}, all exact.
 */
struct SvpToCvpBatch {
    std::vector<CvpAlphaInstance> instances;
    BatchTrace trace;
};

/** Builds the lattice pair for one CVP instance; r = 2*gamma*d snapped up. */
LdpGadget build_ldp_gadget(const CvpAlphaInstance& inst, uint64_t cap = 0);

/** Expands one shortest-vector question into n*(p-1) CVP instances. */
SvpToCvpBatch build_svp_to_cvp_batch(const LatticeHandle& l, const Rat& d, double gamma);

Int smallest_prime_at_least(const Rat& x);

/** Unit diagonal with every entry above it equal to -1/2. */
RatMatrix luk_tracy(int n);

/** Uniform entries in [-entry_bound, entry_bound], resampled until
 * nonsingular; fully determined by the seed. */
LatticeHandle random_integer_lattice(int n, int entry_bound, uint64_t seed);

/**
 * Distortion floor of the map onto Z^n from the determinant ratio and
 * lambda_1, side by side with the two-sided M-factor bound it can exceed.
 */
struct SeparationReport {
    int n = 0;
    RatMatrix basis;
    Rat det_sq;
    Rat lambda1_sq;
    Rat m12_sq;
    Rat m21_sq;
    double floor_value = 0.0;
    double mm_value = 0.0;
    double gap = 0.0;
    int candidates = 0;
    uint64_t chosen_seed = 0;
};

/** Evaluates the floor-versus-M-factor comparison for one given lattice. */
SeparationReport separation_demo(const LatticeHandle& l, uint64_t cap = 0);

/**
 * Searches a fixed candidate family (chain difference bases, a flat
 * two-dimensional basis, seeded random lattices) for the largest
 * floor-to-M-factor gap; fails with no_witness when nothing exceeds 1.
 */
SeparationReport separation_demo(int n, uint64_t cap = 0);

}  // namespace latdist
