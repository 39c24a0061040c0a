#pragma once

#include <cstdint>
#include <optional>

#include "gram.hpp"
#include "matrix.hpp"

namespace latdist {

/** Effective node budget: explicit cap, else LATDIST_BUDGET_NODES, else 1e7. */
uint64_t resolve_node_cap(uint64_t cap);

/**
 * Full-column-rank lattice basis with its exact derived data. Columns generate
 * the lattice; rows may exceed columns for lattices presented inside a larger
 * ambient space. Everything is computed at construction, so const handles are
 * safe to share.
 */
class LatticeHandle {
public:
    explicit LatticeHandle(RatMatrix basis);

    const RatMatrix& basis() const { return basis_; }
    const GramSchmidtData& gs() const { return gs_; }
    int dim() const { return basis_.cols(); }
    int ambient() const { return basis_.rows(); }
    bool square() const { return basis_.rows() == basis_.cols(); }

    /** det(B^T B) = squared covolume; defined for rectangular bases too. */
    const Rat& det_sq() const { return det_sq_; }

    /** |det B|; square bases only. */
    const Rat& det_abs() const;

private:
    RatMatrix basis_;
    GramSchmidtData gs_;
    Rat det_sq_;
    std::optional<Rat> det_abs_;
};

/** B^(-T), the basis whose columns are dual to the columns of B; square only. */
RatMatrix dual_basis(const RatMatrix& basis);

struct EnumSolution {
    std::vector<Int> coeffs;
    Rat norm_sq;
};

/**
 * Exact enumeration over GS data restricted to levels [lo, hi). center gives
 * the target's coordinates relative to those levels (empty means the origin),
 * radius_sq is inclusive. Best mode shrinks the radius and returns every
 * coefficient vector attaining the final minimum; collect mode returns all
 * solutions within the fixed radius. Each candidate test costs one node
 * against the cap.
 */
struct EnumRequest {
    const GramSchmidtData* gs = nullptr;
    int lo = 0;
    int hi = 0;
    std::vector<Rat> center;
    Rat radius_sq;
    bool exclude_zero = false;
    bool collect_all = false;
};

std::vector<EnumSolution> enumerate_lattice(const EnumRequest& req, uint64_t node_cap);

struct ShortestResult {
    RatVec vector;
    std::vector<Int> coeffs;
    Rat norm_sq;
};

struct ClosestResult {
    RatVec vector;
    std::vector<Int> coeffs;
    Rat dist_sq;
};

struct SuccessiveMinima {
    std::vector<Rat> lambda_sq;
    RatMatrix witnesses;
};

/** Exact shortest nonzero vector; ties resolve to the lexicographically
 * smallest sign-normalized coefficient vector in the input basis. */
ShortestResult shortest_vector(const LatticeHandle& l, uint64_t cap = 0);

/** Exact closest lattice vector to target (ambient coordinates); the target
 * may lie outside the basis span, the perpendicular part is accounted exactly. */
ClosestResult closest_vector(const LatticeHandle& l, const RatVec& target, uint64_t cap = 0);

/** All successive minima with linearly independent witnesses, greedily by
 * increasing exact squared norm, ties by lexicographic coefficient order. */
SuccessiveMinima successive_minima(const LatticeHandle& l, uint64_t cap = 0);

/** Coefficients of v in the basis when v is a lattice member. */
std::optional<RatVec> member_coefficients(const LatticeHandle& l, const RatVec& v);

bool is_member(const LatticeHandle& l, const RatVec& v);

struct TransferenceReport {
    bool ok = false;
    std::vector<Rat> products_sq;
    int violating_index = -1;
};

/** Checks 1 <= lambda_i(L)^2 * lambda_{n-i+1}(L*)^2 <= n^2 exactly; square bases. */
TransferenceReport transference_check(const LatticeHandle& l, uint64_t cap = 0);

/** Lexicographic order on integer vectors. */
bool int_vec_less(const std::vector<Int>& a, const std::vector<Int>& b);

/** Flips the sign so the first nonzero entry is positive. */
void sign_normalize(std::vector<Int>& v);

}  // namespace latdist
