#include "seysen.hpp"

#include <string>

#include "errors.hpp"
#include "gram.hpp"

namespace latdist {

namespace {

RatMatrix block_of(const RatMatrix& m, int r0, int c0, int nr, int nc) {
    RatMatrix out(nr, nc);
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nc; ++j) {
            out(i, j) = m(r0 + i, c0 + j);
        }
    }
    return out;
}

bool integer_entries(const RatMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j))) return false;
        }
    }
    return true;
}

/**
 * Unipotent integer U for the unipotent block a: condition the two halves,
 * then cancel the integer part of the off-diagonal block against the
 * conditioned top-left factor, leaving every merged entry within 1/2 of an
 * exact multiple removed.
 */
RatMatrix seysen_u(const RatMatrix& a) {
    int n = a.cols();
    if (n <= 1) return RatMatrix::identity(n);
    int n1 = (n + 1) / 2;
    int n2 = n - n1;
    RatMatrix a1 = block_of(a, 0, 0, n1, n1);
    RatMatrix a2 = block_of(a, n1, n1, n2, n2);
    RatMatrix c = block_of(a, 0, n1, n1, n2);
    RatMatrix u1 = seysen_u(a1);
    RatMatrix u2 = seysen_u(a2);
    RatMatrix a1p = mul(a1, u1);
    RatMatrix bp = mul(c, u2);
    RatMatrix q = mul(inverse(a1p), bp);
    RatMatrix d0(n1, n2);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            d0(i, j) = Rat(-round_half_away(q(i, j)));
        }
    }
    RatMatrix top_right = mul(u1, d0);
    RatMatrix u(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            u(i, j) = 0;
        }
    }
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n1; ++j) u(i, j) = u1(i, j);
        for (int j = 0; j < n2; ++j) u(i, n1 + j) = top_right(i, j);
    }
    for (int i = 0; i < n2; ++i) {
        for (int j = 0; j < n2; ++j) u(n1 + i, n1 + j) = u2(i, j);
    }
    return u;
}

}  // namespace

Rat s_condition_sq(const RatMatrix& basis) {
    if (basis.empty()) fail(errc::bad_argument, "empty basis");
    RatMatrix g = gram_matrix(basis);
    RatMatrix ginv = inverse(g);
    Rat best(0);
    for (int i = 0; i < g.rows(); ++i) {
        Rat prod = g(i, i) * ginv(i, i);
        if (prod > best) best = prod;
    }
    return best;
}

double s_condition(const RatMatrix& basis) {
    return sqrt_double(s_condition_sq(basis));
}

Rat s_prime(const RatMatrix& a) {
    if (a.rows() != a.cols()) fail(errc::bad_argument, "S' needs a square matrix");
    Rat fwd = inf_norm(a);
    Rat bwd = inf_norm(inverse(a));
    return fwd > bwd ? fwd : bwd;
}

SeysenReport seysen_condition(const RatMatrix& a) {
    if (!is_unipotent_upper(a)) {
        fail(errc::not_unipotent, "conditioning needs a unipotent upper-triangular input");
    }
    SeysenReport rep;
    rep.transform = seysen_u(a);
    rep.conditioned = mul(a, rep.transform);
    rep.s_prime_value = s_prime(rep.conditioned);
    rep.s_value = s_condition(rep.conditioned);
    return rep;
}

ReducedBasis seysen_reduce_basis(const RatMatrix& basis) {
    DRPrime dr = dr_decompose(basis);
    SeysenReport rep = seysen_condition(dr.r_prime);
    ReducedBasis rb;
    rb.input = basis;
    rb.transform = rep.transform;
    rb.basis = mul(basis, rep.transform);
    rb.kind = ReduceKind::seysen;
    int n = basis.cols();
    Rat lhs = s_condition_sq(rb.basis);
    Rat z = rep.s_prime_value;
    Rat rhs = Rat(n) * Rat(n) * eta_sq(basis) * z * z * z * z;
    if (lhs > rhs) {
        fail(errc::violation, "conditioned basis exceeds the n*eta*S'^2 bound on S");
    }
    return rb;
}

ReducedBasis reduced_basis_pipeline(const RatMatrix& basis, int k, uint64_t cap) {
    int n = basis.cols();
    if (k < 2 || k > n) fail(errc::bad_argument, "block size must satisfy 2 <= k <= n");
    ReducedBasis slide_stage = pad_and_slide(basis, k, cap);
    ReducedBasis seysen_stage = seysen_reduce_basis(slide_stage.basis);
    ReducedBasis rb;
    rb.input = basis;
    rb.basis = seysen_stage.basis;
    rb.transform = mul(slide_stage.transform, seysen_stage.transform);
    rb.kind = ReduceKind::pipeline;
    rb.block = k;
    rb.stages.push_back(slide_stage);
    rb.stages.push_back(seysen_stage);
    return rb;
}

CertificateReport check_seysen_certificate(const ReducedBasis& rb) {
    CertificateReport rep;
    auto bad = [&rep](const std::string& d) {
        rep.ok = false;
        rep.detail = d;
        return rep;
    };
    if (rb.kind != ReduceKind::seysen) return bad("certificate kind is not seysen");
    if (!is_unipotent_upper(rb.transform)) return bad("transform is not unipotent upper-triangular");
    if (!integer_entries(rb.transform)) return bad("transform has non-integer entries");
    if (mul(rb.input, rb.transform) != rb.basis) return bad("basis does not equal input * transform");
    DRPrime dr = dr_decompose(rb.input);
    Rat z = s_prime(mul(dr.r_prime, rb.transform));
    Rat lhs = s_condition_sq(rb.basis);
    int n = rb.input.cols();
    Rat rhs = Rat(n) * Rat(n) * eta_sq(rb.input) * z * z * z * z;
    if (lhs > rhs) return bad("S(basis) exceeds the n*eta*S'^2 bound");
    return rep;
}

CertificateReport check_pipeline_certificate(const ReducedBasis& rb, uint64_t cap) {
    CertificateReport rep;
    auto bad = [&rep](const std::string& d) {
        rep.ok = false;
        rep.detail = d;
        return rep;
    };
    if (rb.kind != ReduceKind::pipeline) return bad("certificate kind is not pipeline");
    if (rb.stages.size() != 2) return bad("pipeline must record exactly two stages");
    const ReducedBasis& first = rb.stages[0];
    const ReducedBasis& second = rb.stages[1];
    if (first.kind != ReduceKind::slide && first.kind != ReduceKind::padded_slide) {
        return bad("first stage is not a slide reduction");
    }
    if (second.kind != ReduceKind::seysen) return bad("second stage is not a seysen reduction");
    if (first.input != rb.input) return bad("first stage input does not match");
    if (second.input != first.basis) return bad("stages do not chain");
    if (second.basis != rb.basis) return bad("second stage output does not match");
    if (mul(first.transform, second.transform) != rb.transform) {
        return bad("stage transforms do not compose to the recorded transform");
    }
    CertificateReport inner = check_certificate(first, cap);
    if (!inner.ok) return bad("slide stage: " + inner.detail);
    inner = check_certificate(second, cap);
    if (!inner.ok) return bad("seysen stage: " + inner.detail);
    return rep;
}

}  // namespace latdist
