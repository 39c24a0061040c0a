#include "reduce.hpp"

#include <algorithm>
#include <utility>

#include "errors.hpp"
#include "gram.hpp"
#include "lattice.hpp"
#include "seysen.hpp"

namespace latdist {

const char* reduce_kind_name(ReduceKind k) {
    switch (k) {
        case ReduceKind::size: return "size";
        case ReduceKind::lll: return "lll";
        case ReduceKind::hkz: return "hkz";
        case ReduceKind::dsvp: return "dsvp";
        case ReduceKind::slide: return "slide";
        case ReduceKind::padded_slide: return "padded-slide";
        case ReduceKind::seysen: return "seysen";
        case ReduceKind::pipeline: return "pipeline";
    }
    return "unknown";
}

namespace {

const Rat kHalf(1, 2);

void col_axpy(RatMatrix& m, int dst, int src, const Int& c) {
    for (int i = 0; i < m.rows(); ++i) m(i, dst) -= Rat(c) * m(i, src);
}

/** b[:, s:s+w.cols()] *= w, and the same on the running transform u. */
void apply_block(RatMatrix& b, RatMatrix& u, int s, const RatMatrix& w) {
    const int len = w.cols();
    auto apply = [&](RatMatrix& m) {
        RatMatrix block(m.rows(), len);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < len; ++j) block(i, j) = m(i, s + j);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < len; ++j) {
                Rat acc(0);
                for (int t = 0; t < len; ++t) acc += block(i, t) * w(t, j);
                m(i, s + j) = acc;
            }
    };
    apply(b);
    apply(u);
}

bool size_reduce_in_place(RatMatrix& b, RatMatrix& u) {
    GramSchmidtData gs = gram_schmidt(b);
    bool changed = false;
    for (int i = 1; i < gs.size(); ++i) {
        for (int j = i - 1; j >= 0; --j) {
            const Rat& m = gs.mu[i][j];
            if (m <= kHalf && m >= -kHalf) continue;
            Int c = round_half_away(m);
            col_axpy(b, i, j, c);
            col_axpy(u, i, j, c);
            for (int t = 0; t < j; ++t) gs.mu[i][t] -= Rat(c) * gs.mu[j][t];
            gs.mu[i][j] -= Rat(c);
            changed = true;
        }
    }
    return changed;
}

std::vector<Int> pick_canonical(std::vector<EnumSolution>& sols) {
    std::vector<Int> best;
    for (auto& s : sols) {
        sign_normalize(s.coeffs);
        if (best.empty() || int_vec_less(s.coeffs, best)) best = s.coeffs;
    }
    return best;
}

/** Shortest vector of the projected window [lo, hi); coefficients are relative
 * to the window columns. */
std::pair<Rat, std::vector<Int>> window_shortest(const GramSchmidtData& gs, int lo, int hi,
                                                 uint64_t cap) {
    EnumRequest req;
    req.gs = &gs;
    req.lo = lo;
    req.hi = hi;
    req.radius_sq = gs.gs_norm_sq[lo];
    req.exclude_zero = true;
    auto sols = enumerate_lattice(req, cap);
    if (sols.empty()) fail(errc::internal, "projected window has no shortest vector");
    Rat best = sols.front().norm_sq;
    return {best, pick_canonical(sols)};
}

/** Exact squared lambda_1 of the dual of the projected window, with the
 * canonical coefficient vector in the window's dual basis. */
std::pair<Rat, std::vector<Int>> window_dual_shortest(const GramSchmidtData& gs, int lo, int hi,
                                                      uint64_t cap) {
    RatMatrix h = projected_gram(gs, lo, hi - lo);
    RatMatrix hdual = inverse(h);
    GramSchmidtData dgs = gs_from_gram(hdual);
    Rat radius = hdual(0, 0);
    for (int i = 1; i < hdual.rows(); ++i) radius = std::min(radius, hdual(i, i));
    EnumRequest req;
    req.gs = &dgs;
    req.lo = 0;
    req.hi = hi - lo;
    req.radius_sq = radius;
    req.exclude_zero = true;
    auto sols = enumerate_lattice(req, cap);
    if (sols.empty()) fail(errc::internal, "dual window has no shortest vector");
    Rat best = sols.front().norm_sq;
    return {best, pick_canonical(sols)};
}

bool hkz_block_in_place(RatMatrix& b, RatMatrix& u, int s, int len, uint64_t cap) {
    bool changed = false;
    for (int lvl = s; lvl < s + len; ++lvl) {
        GramSchmidtData gs = gram_schmidt(b);
        auto [l1_sq, coeffs] = window_shortest(gs, lvl, s + len, cap);
        if (l1_sq == gs.gs_norm_sq[lvl]) continue;
        apply_block(b, u, lvl, unimodular_with_first_column(coeffs));
        changed = true;
    }
    return changed;
}

bool dsvp_block_in_place(RatMatrix& b, RatMatrix& u, int s, int len, const Rat& epsilon,
                         uint64_t cap) {
    GramSchmidtData gs = gram_schmidt(b);
    auto [dual_l1_sq, coeffs] = window_dual_shortest(gs, s, s + len, cap);
    Rat last_dual_sq = Rat(1) / gs.gs_norm_sq[s + len - 1];
    Rat slack = (Rat(1) + epsilon) * (Rat(1) + epsilon);
    if (last_dual_sq <= slack * dual_l1_sq) return false;
    RatMatrix wd = unimodular_with_last_column(coeffs);
    apply_block(b, u, s, transpose(inverse(wd)));
    return true;
}

ReducedBasis finish(RatMatrix input, RatMatrix b, RatMatrix u, ReduceKind kind) {
    if (!is_unimodular(u)) fail(errc::internal, "reduction transform is not unimodular");
    if (!(mul(input, u) == b)) fail(errc::internal, "reduction transform does not reproduce basis");
    ReducedBasis rb;
    rb.input = std::move(input);
    rb.basis = std::move(b);
    rb.transform = std::move(u);
    rb.kind = kind;
    return rb;
}

}  // namespace

ReducedBasis size_reduce(const RatMatrix& basis) {
    RatMatrix b = basis;
    RatMatrix u = RatMatrix::identity(basis.cols());
    size_reduce_in_place(b, u);
    return finish(basis, std::move(b), std::move(u), ReduceKind::size);
}

ReducedBasis lll_reduce(const RatMatrix& basis, const Rat& delta) {
    if (!(delta > Rat(1, 4) && delta < 1))
        fail(errc::bad_argument, "lll delta must lie in (1/4, 1)");
    RatMatrix b = basis;
    const int n = b.cols();
    RatMatrix u = RatMatrix::identity(n);
    GramSchmidtData gs = gram_schmidt(b);
    int i = 1;
    while (i < n) {
        for (int j = i - 1; j >= 0; --j) {
            const Rat& m = gs.mu[i][j];
            if (m <= kHalf && m >= -kHalf) continue;
            Int c = round_half_away(m);
            col_axpy(b, i, j, c);
            col_axpy(u, i, j, c);
            for (int t = 0; t < j; ++t) gs.mu[i][t] -= Rat(c) * gs.mu[j][t];
            gs.mu[i][j] -= Rat(c);
        }
        Rat mu_prev = gs.mu[i][i - 1];
        if (gs.gs_norm_sq[i] >= (delta - mu_prev * mu_prev) * gs.gs_norm_sq[i - 1]) {
            ++i;
        } else {
            b.swap_cols(i - 1, i);
            u.swap_cols(i - 1, i);
            gs = gram_schmidt(b);
            i = std::max(i - 1, 1);
        }
    }
    ReducedBasis rb = finish(basis, std::move(b), std::move(u), ReduceKind::lll);
    rb.delta = delta;
    return rb;
}

ReducedBasis hkz_reduce(const RatMatrix& basis, uint64_t cap) {
    ReducedBasis pre = lll_reduce(basis);
    RatMatrix b = std::move(pre.basis);
    RatMatrix u = std::move(pre.transform);
    hkz_block_in_place(b, u, 0, b.cols(), cap);
    size_reduce_in_place(b, u);
    return finish(basis, std::move(b), std::move(u), ReduceKind::hkz);
}

ReducedBasis dsvp_reduce(const RatMatrix& basis, const Rat& epsilon, uint64_t cap) {
    if (epsilon <= 0) fail(errc::bad_argument, "dsvp epsilon must be positive");
    ReducedBasis pre = lll_reduce(basis);
    RatMatrix b = std::move(pre.basis);
    RatMatrix u = std::move(pre.transform);
    dsvp_block_in_place(b, u, 0, b.cols(), epsilon, cap);
    ReducedBasis rb = finish(basis, std::move(b), std::move(u), ReduceKind::dsvp);
    rb.epsilon = epsilon;
    return rb;
}

ReducedBasis slide_reduce(const RatMatrix& basis, int k, const Rat& epsilon, uint64_t cap) {
    const int n = basis.cols();
    if (k < 2) fail(errc::bad_argument, "slide block size must be at least 2");
    if (epsilon <= 0) fail(errc::bad_argument, "slide epsilon must be positive");
    if (n % k != 0)
        fail(errc::non_dividing, "block size " + std::to_string(k) + " does not divide " +
                                     std::to_string(n));
    ReducedBasis pre = lll_reduce(basis);
    RatMatrix b = std::move(pre.basis);
    RatMatrix u = std::move(pre.transform);
    const int blocks = n / k;
    constexpr int kMaxPasses = 10'000;
    int pass = 0;
    for (;; ++pass) {
        if (pass >= kMaxPasses) fail(errc::internal, "slide reduction did not converge");
        bool changed = false;
        for (int i = 0; i < blocks; ++i)
            changed = hkz_block_in_place(b, u, i * k, k, cap) || changed;
        size_reduce_in_place(b, u);
        for (int i = 0; i + 1 < blocks; ++i)
            changed = dsvp_block_in_place(b, u, i * k + 1, k, epsilon, cap) || changed;
        if (!changed) break;
    }
    ReducedBasis rb = finish(basis, std::move(b), std::move(u), ReduceKind::slide);
    rb.block = k;
    rb.epsilon = epsilon;
    return rb;
}

ReducedBasis pad_and_slide(const RatMatrix& basis, int k, uint64_t cap) {
    const int n = basis.cols();
    const int m = basis.rows();
    if (k < 2) fail(errc::bad_argument, "slide block size must be at least 2");
    if (n % k == 0) return slide_reduce(basis, k, Rat(1, n), cap);

    const int np = (n + k - 1) / k * k;
    const int mp = m + (np - n);
    Rat max_sq(0);
    for (int j = 0; j < n; ++j) max_sq = std::max(max_sq, norm_sq(basis.col(j)));
    Rat r = pow2(static_cast<long>(n) * n) * sqrt_upper(max_sq);

    RatMatrix padded(mp, np);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) padded(i, j) = basis(i, j);
    for (int j = n; j < np; ++j) padded(m + (j - n), j) = r;

    ReducedBasis inner = slide_reduce(padded, k, Rat(1, np), cap);

    for (int j = 0; j < n; ++j)
        for (int i = m; i < mp; ++i)
            if (inner.basis(i, j) != 0)
                fail(errc::internal, "padded slide left a padding component in the kept vectors");
    RatMatrix out(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = inner.basis(i, j);
    RatMatrix gram = mul(transpose(basis), basis);
    RatMatrix witness = mul(inverse(gram), mul(transpose(basis), out));
    if (!is_unimodular(witness) || !(mul(basis, witness) == out))
        fail(errc::internal, "padded slide output does not generate the input lattice");

    ReducedBasis rb;
    rb.input = basis;
    rb.basis = std::move(out);
    rb.transform = std::move(witness);
    rb.kind = ReduceKind::padded_slide;
    rb.block = k;
    rb.epsilon = Rat(1, np);
    rb.stages.push_back(std::move(inner));
    return rb;
}

Rat eta_sq(const RatMatrix& basis) {
    GramSchmidtData gs = gram_schmidt(basis);
    Rat best(1);
    Rat running_max = gs.gs_norm_sq[0];
    for (int j = 0; j < gs.size(); ++j) {
        running_max = std::max(running_max, gs.gs_norm_sq[j]);
        best = std::max(best, Rat(running_max / gs.gs_norm_sq[j]));
    }
    return best;
}

double eta(const RatMatrix& basis) { return sqrt_double(eta_sq(basis)); }

namespace {

bool is_size_reduced(const GramSchmidtData& gs) {
    for (int i = 1; i < gs.size(); ++i)
        for (int j = 0; j < i; ++j)
            if (gs.mu[i][j] > kHalf || gs.mu[i][j] < -kHalf) return false;
    return true;
}

bool window_is_hkz(const GramSchmidtData& gs, int lo, int hi, uint64_t cap) {
    for (int lvl = lo; lvl < hi; ++lvl) {
        auto [l1_sq, coeffs] = window_shortest(gs, lvl, hi, cap);
        if (l1_sq != gs.gs_norm_sq[lvl]) return false;
    }
    return true;
}

bool window_is_dsvp(const GramSchmidtData& gs, int lo, int hi, const Rat& epsilon, uint64_t cap) {
    auto [dual_l1_sq, coeffs] = window_dual_shortest(gs, lo, hi, cap);
    Rat last_dual_sq = Rat(1) / gs.gs_norm_sq[hi - 1];
    Rat slack = (Rat(1) + epsilon) * (Rat(1) + epsilon);
    return last_dual_sq <= slack * dual_l1_sq;
}

}  // namespace

CertificateReport check_certificate(const ReducedBasis& rb, uint64_t cap) {
    CertificateReport rep;
    auto reject = [&](std::string why) {
        rep.ok = false;
        rep.detail = std::move(why);
        return rep;
    };

    if (rb.input.rows() != rb.basis.rows() || rb.input.cols() != rb.basis.cols())
        return reject("input and output shapes differ");
    if (rb.transform.rows() != rb.input.cols() || rb.transform.cols() != rb.input.cols())
        return reject("transform has the wrong shape");
    if (!is_unimodular(rb.transform)) return reject("transform is not unimodular");
    if (!(mul(rb.input, rb.transform) == rb.basis)) return reject("basis != input * transform");

    switch (rb.kind) {
        case ReduceKind::size: {
            if (!is_unipotent_upper(rb.transform)) return reject("transform is not unipotent");
            if (!is_size_reduced(gram_schmidt(rb.basis))) return reject("|mu| > 1/2 after size reduction");
            return rep;
        }
        case ReduceKind::lll: {
            Rat delta = rb.delta > 0 ? rb.delta : Rat(3, 4);
            GramSchmidtData gs = gram_schmidt(rb.basis);
            if (!is_size_reduced(gs)) return reject("|mu| > 1/2");
            for (int i = 1; i < gs.size(); ++i) {
                Rat m = gs.mu[i][i - 1];
                if (gs.gs_norm_sq[i] < (delta - m * m) * gs.gs_norm_sq[i - 1])
                    return reject("Lovasz condition fails at index " + std::to_string(i));
            }
            return rep;
        }
        case ReduceKind::hkz: {
            GramSchmidtData gs = gram_schmidt(rb.basis);
            if (!is_size_reduced(gs)) return reject("|mu| > 1/2");
            if (!window_is_hkz(gs, 0, gs.size(), cap))
                return reject("a projected tail does not start at its lambda_1");
            return rep;
        }
        case ReduceKind::dsvp: {
            if (rb.epsilon <= 0) return reject("missing epsilon");
            GramSchmidtData gs = gram_schmidt(rb.basis);
            if (!window_is_dsvp(gs, 0, gs.size(), rb.epsilon, cap))
                return reject("last dual vector is not within (1+eps) of the dual lambda_1");
            return rep;
        }
        case ReduceKind::slide: {
            const int n = rb.basis.cols();
            const int k = rb.block;
            if (k < 2 || n % k != 0) return reject("invalid block size");
            if (rb.epsilon <= 0) return reject("missing epsilon");
            GramSchmidtData gs = gram_schmidt(rb.basis);
            if (!is_size_reduced(gs)) return reject("|mu| > 1/2");
            for (int i = 0; i < n / k; ++i)
                if (!window_is_hkz(gs, i * k, i * k + k, cap))
                    return reject("primal block " + std::to_string(i) + " is not HKZ");
            for (int i = 0; i + 1 < n / k; ++i)
                if (!window_is_dsvp(gs, i * k + 1, i * k + 1 + k, rb.epsilon, cap))
                    return reject("shifted block " + std::to_string(i) + " is not DSVP reduced");
            return rep;
        }
        case ReduceKind::padded_slide: {
            if (rb.stages.size() != 1) return reject("padded slide must carry its inner stage");
            const ReducedBasis& inner = rb.stages.front();
            const int n = rb.input.cols();
            const int m = rb.input.rows();
            const int np = inner.input.cols();
            const int mp = inner.input.rows();
            if (np <= n || mp - m != np - n) return reject("inner stage has the wrong shape");
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < m; ++i)
                    if (inner.input(i, j) != rb.input(i, j))
                        return reject("inner stage does not embed the input");
                for (int i = m; i < mp; ++i)
                    if (inner.input(i, j) != 0) return reject("embedded input leaves the input span");
            }
            Rat r(0);
            for (int j = n; j < np; ++j) {
                for (int i = 0; i < mp; ++i) {
                    if (i == m + (j - n)) continue;
                    if (inner.input(i, j) != 0) return reject("padding is not orthogonal");
                }
                if (j == n)
                    r = inner.input(m, j);
                else if (inner.input(m + (j - n), j) != r)
                    return reject("padding lengths differ");
            }
            if (r <= 0) return reject("padding length is not positive");
            for (int j = 0; j < n; ++j) {
                for (int i = m; i < mp; ++i)
                    if (inner.basis(i, j) != 0) return reject("kept vectors leave the input span");
                for (int i = 0; i < m; ++i)
                    if (inner.basis(i, j) != rb.basis(i, j))
                        return reject("kept vectors do not match the output");
            }
            CertificateReport inner_rep = check_certificate(inner, cap);
            if (!inner_rep.ok) return reject("inner slide stage: " + inner_rep.detail);
            return rep;
        }
        case ReduceKind::seysen:
            return check_seysen_certificate(rb);
        case ReduceKind::pipeline:
            return check_pipeline_certificate(rb, cap);
    }
    return reject("unknown reduction kind");
}

RatMatrix unimodular_with_first_column(const std::vector<Int>& x) {
    const int m = static_cast<int>(x.size());
    if (m == 0) fail(errc::bad_argument, "empty column");
    std::vector<std::vector<Int>> v(m, std::vector<Int>(m, Int(0)));
    for (int i = 0; i < m; ++i) v[i][i] = 1;
    std::vector<Int> y = x;
    for (int i = 1; i < m; ++i) {
        if (y[i] == 0) continue;
        if (y[0] == 0) {
            std::swap(y[0], y[i]);
            y[i] = -y[i];
            std::swap(v[0], v[i]);
            for (Int& t : v[i]) t = -t;
            continue;
        }
        Int g, a, bz;
        mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), bz.get_mpz_t(), y[0].get_mpz_t(),
                   y[i].get_mpz_t());
        Int p = y[0] / g;
        Int q = y[i] / g;
        for (int t = 0; t < m; ++t) {
            Int r0 = v[0][t];
            Int ri = v[i][t];
            v[0][t] = a * r0 + bz * ri;
            v[i][t] = p * ri - q * r0;
        }
        y[0] = g;
        y[i] = 0;
    }
    if (y[0] == -1) {
        for (Int& t : v[0]) t = -t;
        y[0] = 1;
    }
    if (y[0] != 1) fail(errc::bad_argument, "column is not primitive");
    RatMatrix vm(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) vm(i, j) = Rat(v[i][j]);
    RatMatrix w = inverse(vm);
    if (!is_unimodular(w)) fail(errc::internal, "completion is not unimodular");
    return w;
}

RatMatrix unimodular_with_last_column(const std::vector<Int>& y) {
    RatMatrix first = unimodular_with_first_column(y);
    const int m = first.cols();
    RatMatrix w(m, m);
    for (int j = 0; j + 1 < m; ++j) w.set_col(j, first.col(j + 1));
    w.set_col(m - 1, first.col(0));
    return w;
}

}  // namespace latdist
