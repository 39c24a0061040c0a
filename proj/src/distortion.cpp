#include "distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gram.hpp"
#include "norms.hpp"
#include "reduce.hpp"
#include "seysen.hpp"

namespace latdist {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "YES";
        case Verdict::no: return "NO";
        case Verdict::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

namespace {

struct MPair {
    Rat m12_sq{0};
    Rat m21_sq{0};
};

MPair m_pair(const LatticeHandle& l1, const LatticeHandle& l2, uint64_t cap) {
    if (l1.dim() != l2.dim()) fail(errc::bad_argument, "lattices must share a rank");
    SuccessiveMinima a = successive_minima(l1, cap);
    SuccessiveMinima b = successive_minima(l2, cap);
    MPair mp;
    for (int i = 0; i < l1.dim(); ++i) {
        mp.m12_sq = std::max(mp.m12_sq, Rat(b.lambda_sq[i] / a.lambda_sq[i]));
        mp.m21_sq = std::max(mp.m21_sq, Rat(a.lambda_sq[i] / b.lambda_sq[i]));
    }
    return mp;
}

void fill_lower_bound(DistortionCertificate& cert, const LatticeHandle& l1,
                      const LatticeHandle& l2, uint64_t cap) {
    try {
        MPair mp = m_pair(l1, l2, cap);
        cert.m12_sq = mp.m12_sq;
        cert.m21_sq = mp.m21_sq;
        cert.lower_bound_sq = mp.m12_sq * mp.m21_sq;
        cert.has_lower_bound = true;
    } catch (const error& e) {
        if (e.code() != errc::budget_exceeded) throw;
    }
}

struct SortedBasis {
    RatMatrix basis;
    RatMatrix transform;
};

/** Pipeline-reduced basis with columns stably sorted by exact squared length;
 * transform carries the whole change of basis from the handle's columns. */
SortedBasis sorted_pipeline(const LatticeHandle& l, int k, uint64_t cap) {
    SortedBasis sb;
    if (l.dim() == 1) {
        sb.basis = l.basis();
        sb.transform = RatMatrix::identity(1);
        return sb;
    }
    ReducedBasis rb = reduced_basis_pipeline(l.basis(), k, cap);
    const int n = rb.basis.cols();
    std::vector<Rat> len(n);
    for (int j = 0; j < n; ++j) len[j] = norm_sq(rb.basis.col(j));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&len](int a, int b) { return len[a] < len[b]; });
    sb.basis = RatMatrix(rb.basis.rows(), n);
    sb.transform = RatMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        sb.basis.set_col(j, rb.basis.col(order[j]));
        sb.transform.set_col(j, rb.transform.col(order[j]));
    }
    return sb;
}

}  // namespace

Rat m_factor_sq(const LatticeHandle& l1, const LatticeHandle& l2, uint64_t cap) {
    return m_pair(l1, l2, cap).m12_sq;
}

Rat distortion_lower_bound_sq(const LatticeHandle& l1, const LatticeHandle& l2, uint64_t cap) {
    MPair mp = m_pair(l1, l2, cap);
    return mp.m12_sq * mp.m21_sq;
}

double pair_condition_number(const RatMatrix& b1, const RatMatrix& b2) {
    if (b1.cols() != b2.cols()) fail(errc::bad_argument, "bases must share a rank");
    if (b1.rows() == b1.cols() && b2.rows() == b2.cols())
        return condition_number(mul(b2, inverse(b1)));
    return pencil_condition(gram_matrix(b1), gram_matrix(b2));
}

DistortionCertificate ldp_solve(const LatticeHandle& l1, const LatticeHandle& l2, int k,
                                uint64_t cap) {
    if (l1.dim() != l2.dim()) fail(errc::bad_argument, "lattices must share a rank");
    SortedBasis s1 = sorted_pipeline(l1, k, cap);
    SortedBasis s2 = sorted_pipeline(l2, k, cap);
    DistortionCertificate cert;
    cert.basis1 = s1.basis;
    cert.basis2 = s2.basis;
    cert.witness = mul(s2.transform, inverse(s1.transform));
    if (!is_unimodular(cert.witness)) fail(errc::internal, "distortion witness is not unimodular");
    if (l1.square() && l2.square()) {
        cert.mapping = mul(s2.basis, inverse(s1.basis));
        if (!(mul(cert.mapping, l1.basis()) == mul(l2.basis(), cert.witness)))
            fail(errc::internal, "mapping and witness disagree on the input bases");
        cert.upper_bound = condition_number(cert.mapping);
    } else {
        cert.upper_bound = pair_condition_number(s1.basis, s2.basis);
    }
    fill_lower_bound(cert, l1, l2, cap);
    return cert;
}

bool distortion_upper_bound_check(const DistortionCertificate& cert) {
    if (!cert.has_lower_bound) fail(errc::bad_argument, "certificate lacks lower-bound data");
    const int n = cert.basis1.cols();
    const double s1 = s_condition(cert.basis1);
    const double s2 = s_condition(cert.basis2);
    const double m12 = std::sqrt(to_double(cert.m12_sq));
    const double m21 = std::sqrt(to_double(cert.m21_sq));
    double fwd = 0.0;
    double bwd = 0.0;
    if (!cert.mapping.empty()) {
        fwd = operator_norm(cert.mapping);
        bwd = operator_norm(inverse(cert.mapping));
    } else {
        RatMatrix g1 = gram_matrix(cert.basis1);
        RatMatrix g2 = gram_matrix(cert.basis2);
        fwd = pencil_norm(g1, g2);
        bwd = pencil_norm(g2, g1);
    }
    const double tol = 1e-6;
    const double lower = std::sqrt(to_double(cert.lower_bound_sq));
    const double kappa = cert.upper_bound;
    if (fwd > n * s1 * s2 * m12 * (1 + tol)) return false;
    if (bwd > n * s1 * s2 * m21 * (1 + tol)) return false;
    if (lower > kappa * (1 + tol)) return false;
    if (kappa > n * n * s1 * s1 * s2 * s2 * lower * (1 + tol)) return false;
    return true;
}

GapDecision gap_decide(const LatticeHandle& l1, const LatticeHandle& l2, const Rat& c,
                       double gamma, int k, uint64_t cap) {
    if (c < 1) fail(errc::bad_argument, "gap threshold c must be at least 1");
    if (!(gamma >= 1.0)) fail(errc::bad_argument, "gap factor gamma must be at least 1");
    GapDecision gd;
    gd.c = c;
    gd.gamma = gamma;
    gd.evidence = ldp_solve(l1, l2, k, cap);
    if (gd.evidence.upper_bound <= to_double(c)) {
        gd.verdict = Verdict::yes;
        return gd;
    }
    if (gd.evidence.has_lower_bound) {
        Rat gr = rat_from_double(gamma);
        Rat guard(1'000'000'001, 1'000'000'000);
        if (gd.evidence.lower_bound_sq > gr * gr * c * c * guard) {
            gd.verdict = Verdict::no;
            return gd;
        }
    }
    gd.verdict = Verdict::unknown;
    return gd;
}

bool verify_mapping(const RatMatrix& t, const LatticeHandle& l1, const LatticeHandle& l2) {
    if (!l1.square() || !l2.square() || l1.dim() != l2.dim())
        fail(errc::bad_argument, "mapping verification needs square bases of equal rank");
    if (t.rows() != l1.dim() || t.cols() != l1.dim())
        fail(errc::bad_argument, "mapping has the wrong shape");
    RatMatrix w = mul(inverse(l2.basis()), mul(t, l1.basis()));
    return is_unimodular(w);
}

namespace {

struct BruteContext {
    int n = 0;
    long bound = 1;
    uint64_t nodes = 0;
    uint64_t budget = 0;
    PencilBase base;
    std::vector<double> g2d;
    long u[3][3] = {};
    bool found = false;
    double best_kappa = 0.0;
    long best_dist = 0;
    long best_u[3][3] = {};
};

long ident_distance(const long u[3][3], int n) {
    long d = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d += std::labs(u[i][j] - (i == j ? 1 : 0));
    return d;
}

bool entries_less(const long a[3][3], const long b[3][3], int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a[i][j] != b[i][j]) return a[i][j] < b[i][j];
    return false;
}

void brute_evaluate(BruteContext& ctx) {
    const int n = ctx.n;
    double gu[3][3];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int t = 0; t < n; ++t) s += ctx.g2d[i * n + t] * static_cast<double>(ctx.u[t][j]);
            gu[i][j] = s;
        }
    std::vector<double> m(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int t = 0; t < n; ++t) s += static_cast<double>(ctx.u[t][i]) * gu[t][j];
            m[static_cast<size_t>(i) * n + j] = s;
        }
    auto [lo, hi] = pencil_extremes(ctx.base, m);
    if (!(lo > 0)) return;
    double kappa = std::sqrt(hi / lo);
    auto take = [&ctx, kappa]() {
        ctx.best_kappa = ctx.found ? std::min(ctx.best_kappa, kappa) : kappa;
        ctx.found = true;
        ctx.best_dist = ident_distance(ctx.u, ctx.n);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) ctx.best_u[i][j] = ctx.u[i][j];
    };
    if (!ctx.found || kappa < ctx.best_kappa * (1 - 1e-9)) {
        ctx.found = false;
        take();
        return;
    }
    if (kappa <= ctx.best_kappa * (1 + 1e-9)) {
        long d = ident_distance(ctx.u, n);
        if (d < ctx.best_dist || (d == ctx.best_dist && entries_less(ctx.u, ctx.best_u, n)))
            take();
    }
}

void brute_entries(BruteContext& ctx, int col, int row);

void brute_column_done(BruteContext& ctx, int col) {
    if (++ctx.nodes > ctx.budget)
        fail(errc::budget_exceeded,
             "unimodular search exceeded " + std::to_string(ctx.budget) + " nodes");
    const int n = ctx.n;
    if (col == 0) {
        long g = 0;
        for (int r = 0; r < n; ++r) g = std::gcd(g, std::labs(ctx.u[r][0]));
        if (g != 1) return;
        if (n == 1) {
            brute_evaluate(ctx);
            return;
        }
        brute_entries(ctx, 1, 0);
        return;
    }
    const long m01 = ctx.u[0][0] * ctx.u[1][1] - ctx.u[1][0] * ctx.u[0][1];
    if (col == 1) {
        if (n == 2) {
            if (m01 == 1 || m01 == -1) brute_evaluate(ctx);
            return;
        }
        long m02 = ctx.u[0][0] * ctx.u[2][1] - ctx.u[2][0] * ctx.u[0][1];
        long m12 = ctx.u[1][0] * ctx.u[2][1] - ctx.u[2][0] * ctx.u[1][1];
        long g = std::gcd(std::gcd(std::labs(m01), std::labs(m02)), std::labs(m12));
        if (g != 1) return;
        brute_entries(ctx, 2, 0);
        return;
    }
    long m02 = ctx.u[0][0] * ctx.u[2][1] - ctx.u[2][0] * ctx.u[0][1];
    long m12 = ctx.u[1][0] * ctx.u[2][1] - ctx.u[2][0] * ctx.u[1][1];
    long det = ctx.u[0][2] * m12 - ctx.u[1][2] * m02 + ctx.u[2][2] * m01;
    if (det == 1 || det == -1) brute_evaluate(ctx);
}

void brute_entries(BruteContext& ctx, int col, int row) {
    if (row == ctx.n) {
        brute_column_done(ctx, col);
        return;
    }
    for (long v = -ctx.bound; v <= ctx.bound; ++v) {
        ctx.u[row][col] = v;
        brute_entries(ctx, col, row + 1);
    }
}

}  // namespace

DistortionCertificate brute_force_distortion(const LatticeHandle& l1, const LatticeHandle& l2,
                                             int coeff_bound, uint64_t cap) {
    const int n = l1.dim();
    if (l2.dim() != n) fail(errc::bad_argument, "lattices must share a rank");
    if (n < 1 || n > 3) fail(errc::bad_argument, "brute force covers ranks 1 through 3");
    if (coeff_bound < 1 || coeff_bound > 50)
        fail(errc::bad_argument, "coefficient bound must lie in [1, 50]");

    BruteContext ctx;
    ctx.n = n;
    ctx.bound = coeff_bound;
    ctx.budget = resolve_node_cap(cap);
    RatMatrix g1 = gram_matrix(l1.basis());
    RatMatrix g2 = gram_matrix(l2.basis());
    ctx.base = prepare_pencil(g1);
    long g2_exp = 0;
    ctx.g2d = scaled_doubles(g2, &g2_exp);
    brute_entries(ctx, 0, 0);
    if (!ctx.found) fail(errc::internal, "no unimodular candidate was evaluated");

    RatMatrix u_best(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u_best(i, j) = Rat(static_cast<long>(ctx.best_u[i][j]));
    RatMatrix b2u = mul(l2.basis(), u_best);
    DistortionCertificate cert;
    cert.witness = u_best;
    cert.basis1 = l1.basis();
    cert.basis2 = b2u;
    if (l1.square() && l2.square()) {
        cert.mapping = mul(b2u, inverse(l1.basis()));
        cert.upper_bound = condition_number(cert.mapping);
    } else {
        cert.upper_bound = pair_condition_number(l1.basis(), b2u);
    }
    fill_lower_bound(cert, l1, l2, cap);
    return cert;
}

}  // namespace latdist
