#include "lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "errors.hpp"
#include "reduce.hpp"

namespace latdist {

namespace {
constexpr uint64_t kDefaultNodeCap = 10'000'000;
constexpr size_t kSolutionLimit = 1'000'000;
}  // namespace

uint64_t resolve_node_cap(uint64_t cap) {
    if (cap != 0) return cap;
    if (const char* env = std::getenv("LATDIST_BUDGET_NODES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        fail(errc::bad_argument, "LATDIST_BUDGET_NODES is not a positive integer");
    }
    return kDefaultNodeCap;
}

LatticeHandle::LatticeHandle(RatMatrix basis)
    : basis_(std::move(basis)), gs_(gram_schmidt(basis_)) {
    det_sq_ = Rat(1);
    for (const Rat& g : gs_.gs_norm_sq) det_sq_ *= g;
    if (square()) {
        Rat d = determinant(basis_);
        if (d < 0) d = -d;
        det_abs_ = d;
    }
}

const Rat& LatticeHandle::det_abs() const {
    if (!det_abs_) fail(errc::bad_argument, "determinant of a non-square basis");
    return *det_abs_;
}

RatMatrix dual_basis(const RatMatrix& basis) {
    if (basis.rows() != basis.cols())
        fail(errc::bad_argument, "dual basis requires a square basis");
    return transpose(inverse(basis));
}

bool int_vec_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

void sign_normalize(std::vector<Int>& v) {
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        return;
    }
}

namespace {

struct EnumState {
    const GramSchmidtData* gs;
    int lo;
    int hi;
    const std::vector<Rat>* center;
    bool exclude_zero;
    bool collect_all;
    Rat radius_sq;
    uint64_t nodes = 0;
    uint64_t cap = 0;
    std::vector<Int> x;
    std::vector<EnumSolution> out;

    Rat center_at(int rel) const { return center ? (*center)[rel] : Rat(0); }
};

void record_solution(EnumState& st, const Rat& norm_sq) {
    if (st.exclude_zero) {
        bool zero = true;
        for (const Int& v : st.x)
            if (v != 0) {
                zero = false;
                break;
            }
        if (zero) return;
    }
    if (st.collect_all) {
        if (st.out.size() >= kSolutionLimit)
            fail(errc::budget_exceeded, "enumeration solution buffer exceeded " +
                                            std::to_string(kSolutionLimit) + " entries");
        st.out.push_back({st.x, norm_sq});
        return;
    }
    if (!st.out.empty() && norm_sq < st.out.front().norm_sq) st.out.clear();
    st.out.push_back({st.x, norm_sq});
    st.radius_sq = norm_sq;
}

void descend(EnumState& st, int rel, const Rat& partial_sq) {
    if (rel < 0) {
        record_solution(st, partial_sq);
        return;
    }
    int gi = st.lo + rel;
    int width = st.hi - st.lo;
    Rat offset(0);
    for (int rj = rel + 1; rj < width; ++rj) {
        const Rat& m = st.gs->mu[st.lo + rj][gi];
        if (m == 0) continue;
        offset += m * (Rat(st.x[rj]) - st.center_at(rj));
    }
    Rat center = st.center_at(rel) - offset;
    Int mid = round_half_away(center);
    Int up = mid;
    Int down = mid - 1;
    bool up_open = true;
    bool down_open = true;
    bool prefer_up = true;
    while (up_open || down_open) {
        bool use_up = (up_open && down_open) ? prefer_up : up_open;
        if (up_open && down_open) prefer_up = !prefer_up;
        const Int& cand = use_up ? up : down;
        if (++st.nodes > st.cap)
            fail(errc::budget_exceeded,
                 "enumeration exceeded " + std::to_string(st.cap) + " nodes");
        Rat diff = Rat(cand) - center;
        Rat cost = partial_sq + diff * diff * st.gs->gs_norm_sq[gi];
        if (cost > st.radius_sq) {
            (use_up ? up_open : down_open) = false;
            continue;
        }
        st.x[rel] = cand;
        descend(st, rel - 1, cost);
        if (use_up)
            up += 1;
        else
            down -= 1;
    }
}

}  // namespace

std::vector<EnumSolution> enumerate_lattice(const EnumRequest& req, uint64_t node_cap) {
    const int width = req.hi - req.lo;
    if (width <= 0) return {};
    if (req.gs == nullptr || req.lo < 0 || req.hi > req.gs->size())
        fail(errc::bad_argument, "enumeration window out of range");
    if (!req.center.empty() && static_cast<int>(req.center.size()) != width)
        fail(errc::bad_argument, "enumeration center has wrong length");
    if (req.radius_sq < 0) return {};
    EnumState st{req.gs,
                 req.lo,
                 req.hi,
                 req.center.empty() ? nullptr : &req.center,
                 req.exclude_zero,
                 req.collect_all,
                 req.radius_sq};
    st.cap = resolve_node_cap(node_cap);
    st.x.assign(width, Int(0));
    descend(st, width - 1, Rat(0));
    return st.out;
}

namespace {

std::vector<Int> apply_int_transform(const RatMatrix& u, const std::vector<Int>& x) {
    std::vector<Int> out(u.rows(), Int(0));
    for (int i = 0; i < u.rows(); ++i) {
        Rat acc(0);
        for (int j = 0; j < u.cols(); ++j) acc += u(i, j) * Rat(x[j]);
        if (!is_integer(acc)) fail(errc::internal, "non-integer transformed coefficients");
        out[i] = acc.get_num();
    }
    return out;
}

RatVec basis_times(const RatMatrix& b, const std::vector<Int>& x) {
    RatVec out(b.rows(), Rat(0));
    for (int i = 0; i < b.rows(); ++i) {
        Rat acc(0);
        for (int j = 0; j < b.cols(); ++j) acc += b(i, j) * Rat(x[j]);
        out[i] = acc;
    }
    return out;
}

Rat min_col_norm_sq(const RatMatrix& b) {
    Rat best = norm_sq(b.col(0));
    for (int j = 1; j < b.cols(); ++j) best = std::min(best, norm_sq(b.col(j)));
    return best;
}

Rat max_col_norm_sq(const RatMatrix& b) {
    Rat best = norm_sq(b.col(0));
    for (int j = 1; j < b.cols(); ++j) best = std::max(best, norm_sq(b.col(j)));
    return best;
}

/** Coefficients of the orthogonal projection of t onto the basis span. */
RatVec projection_coefficients(const RatMatrix& b, const RatVec& t) {
    RatMatrix g = gram_matrix(b);
    RatVec rhs = mul_vec(transpose(b), t);
    RatMatrix ginv = inverse(g);
    return mul_vec(ginv, rhs);
}

}  // namespace

ShortestResult shortest_vector(const LatticeHandle& l, uint64_t cap) {
    ReducedBasis red = lll_reduce(l.basis());
    GramSchmidtData gs = gram_schmidt(red.basis);
    EnumRequest req;
    req.gs = &gs;
    req.lo = 0;
    req.hi = gs.size();
    req.radius_sq = min_col_norm_sq(red.basis);
    req.exclude_zero = true;
    auto sols = enumerate_lattice(req, cap);
    if (sols.empty()) fail(errc::internal, "no shortest vector found");
    std::vector<Int> best;
    for (auto& s : sols) {
        std::vector<Int> orig = apply_int_transform(red.transform, s.coeffs);
        sign_normalize(orig);
        if (best.empty() || int_vec_less(orig, best)) best = std::move(orig);
    }
    return {basis_times(l.basis(), best), best, sols.front().norm_sq};
}

ClosestResult closest_vector(const LatticeHandle& l, const RatVec& target, uint64_t cap) {
    if (static_cast<int>(target.size()) != l.ambient())
        fail(errc::bad_argument, "target dimension mismatch");
    RatVec s0 = projection_coefficients(l.basis(), target);
    RatVec proj = mul_vec(l.basis(), s0);
    Rat perp_sq(0);
    for (size_t i = 0; i < target.size(); ++i) {
        Rat d = target[i] - proj[i];
        perp_sq += d * d;
    }

    ReducedBasis red = lll_reduce(l.basis());
    GramSchmidtData gs = gram_schmidt(red.basis);
    const int n = gs.size();
    RatVec center = mul_vec(inverse(red.transform), s0);

    // Babai nearest-plane pass for the initial in-span radius
    std::vector<Int> babai(n, Int(0));
    Rat babai_sq(0);
    for (int i = n - 1; i >= 0; --i) {
        Rat c = center[i];
        for (int j = i + 1; j < n; ++j)
            c -= gs.mu[j][i] * (Rat(babai[j]) - center[j]);
        babai[i] = round_half_away(c);
        Rat diff = Rat(babai[i]) - c;
        babai_sq += diff * diff * gs.gs_norm_sq[i];
    }

    EnumRequest req;
    req.gs = &gs;
    req.lo = 0;
    req.hi = n;
    req.center = center;
    req.radius_sq = babai_sq;
    auto sols = enumerate_lattice(req, cap);
    if (sols.empty()) fail(errc::internal, "no closest vector found");
    std::vector<Int> best;
    for (auto& s : sols) {
        std::vector<Int> orig = apply_int_transform(red.transform, s.coeffs);
        if (best.empty() || int_vec_less(orig, best)) best = std::move(orig);
    }
    return {basis_times(l.basis(), best), best, sols.front().norm_sq + perp_sq};
}

SuccessiveMinima successive_minima(const LatticeHandle& l, uint64_t cap) {
    ReducedBasis red = lll_reduce(l.basis());
    GramSchmidtData gs = gram_schmidt(red.basis);
    const int n = gs.size();

    EnumRequest req;
    req.gs = &gs;
    req.lo = 0;
    req.hi = n;
    req.radius_sq = max_col_norm_sq(red.basis);
    req.exclude_zero = true;
    req.collect_all = true;
    auto sols = enumerate_lattice(req, cap);

    struct Entry {
        Rat norm_sq;
        std::vector<Int> coeffs;
    };
    std::vector<Entry> entries;
    entries.reserve(sols.size());
    for (auto& s : sols) {
        std::vector<Int> orig = apply_int_transform(red.transform, s.coeffs);
        std::vector<Int> normalized = orig;
        sign_normalize(normalized);
        if (normalized != orig) continue;  // keep one of each +/- pair
        entries.push_back({std::move(s.norm_sq), std::move(normalized)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
        return int_vec_less(a.coeffs, b.coeffs);
    });

    // greedy independence via elimination on the kept coefficient vectors
    std::vector<RatVec> pivots;
    SuccessiveMinima result;
    RatMatrix witnesses(l.ambient(), n);
    for (const Entry& e : entries) {
        if (static_cast<int>(result.lambda_sq.size()) == n) break;
        RatVec v(e.coeffs.size());
        for (size_t i = 0; i < e.coeffs.size(); ++i) v[i] = Rat(e.coeffs[i]);
        for (const RatVec& p : pivots) {
            int lead = 0;
            while (p[lead] == 0) ++lead;
            if (v[lead] == 0) continue;
            Rat f = v[lead] / p[lead];
            for (size_t i = lead; i < v.size(); ++i) v[i] -= f * p[i];
        }
        bool zero = true;
        for (const Rat& x : v)
            if (x != 0) {
                zero = false;
                break;
            }
        if (zero) continue;
        pivots.push_back(v);
        int k = static_cast<int>(result.lambda_sq.size());
        witnesses.set_col(k, basis_times(l.basis(), e.coeffs));
        result.lambda_sq.push_back(e.norm_sq);
    }
    if (static_cast<int>(result.lambda_sq.size()) != n)
        fail(errc::internal, "independent witnesses not found within the search radius");
    result.witnesses = std::move(witnesses);
    return result;
}

std::optional<RatVec> member_coefficients(const LatticeHandle& l, const RatVec& v) {
    if (static_cast<int>(v.size()) != l.ambient())
        fail(errc::bad_argument, "vector dimension mismatch");
    RatVec coeffs = projection_coefficients(l.basis(), v);
    for (const Rat& c : coeffs)
        if (!is_integer(c)) return std::nullopt;
    RatVec back = mul_vec(l.basis(), coeffs);
    for (size_t i = 0; i < v.size(); ++i)
        if (back[i] != v[i]) return std::nullopt;
    return coeffs;
}

bool is_member(const LatticeHandle& l, const RatVec& v) {
    return member_coefficients(l, v).has_value();
}

TransferenceReport transference_check(const LatticeHandle& l, uint64_t cap) {
    if (!l.square()) fail(errc::bad_argument, "transference check requires a square basis");
    const int n = l.dim();
    SuccessiveMinima primal = successive_minima(l, cap);
    LatticeHandle dual(dual_basis(l.basis()));
    SuccessiveMinima dual_minima = successive_minima(dual, cap);

    TransferenceReport report;
    report.ok = true;
    report.products_sq.resize(n);
    Rat upper = Rat(n) * Rat(n);
    for (int i = 0; i < n; ++i) {
        Rat prod = primal.lambda_sq[i] * dual_minima.lambda_sq[n - 1 - i];
        report.products_sq[i] = prod;
        if ((prod < 1 || prod > upper) && report.ok) {
            report.ok = false;
            report.violating_index = i;
        }
    }
    return report;
}

}  // namespace latdist
