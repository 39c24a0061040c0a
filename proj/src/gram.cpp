#include "gram.hpp"

#include "errors.hpp"

namespace latdist {

RatMatrix gram_matrix(const RatMatrix& basis) {
    int n = basis.cols();
    RatMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rat s(0);
            for (int r = 0; r < basis.rows(); ++r) s += basis(r, i) * basis(r, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    return g;
}

GramSchmidtData gs_from_gram(const RatMatrix& gram) {
    int n = gram.cols();
    GramSchmidtData gs;
    gs.mu.resize(n);
    gs.gs_norm_sq.resize(n);
    for (int i = 0; i < n; ++i) {
        gs.mu[i].resize(i);
        for (int j = 0; j < i; ++j) {
            Rat s = gram(i, j);
            for (int l = 0; l < j; ++l) s -= gs.mu[i][l] * gs.mu[j][l] * gs.gs_norm_sq[l];
            gs.mu[i][j] = s / gs.gs_norm_sq[j];
        }
        Rat norm = gram(i, i);
        for (int l = 0; l < i; ++l) norm -= gs.mu[i][l] * gs.mu[i][l] * gs.gs_norm_sq[l];
        if (sgn(norm) <= 0) fail(errc::rank_deficient, "dependent basis vectors");
        gs.gs_norm_sq[i] = norm;
    }
    return gs;
}

GramSchmidtData gram_schmidt(const RatMatrix& basis) {
    if (basis.rows() < basis.cols()) fail(errc::rank_deficient, "more columns than rows");
    return gs_from_gram(gram_matrix(basis));
}

DRPrime dr_decompose(const RatMatrix& basis) {
    GramSchmidtData gs = gram_schmidt(basis);
    int n = gs.size();
    DRPrime out;
    out.d_sq = gs.gs_norm_sq;
    out.r_prime = RatMatrix::identity(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) out.r_prime(i, j) = gs.mu[j][i];
    return out;
}

Rat eta_sq_from_gs(const GramSchmidtData& gs) {
    Rat best(0);
    Rat prefix_max(0);
    for (int j = 0; j < gs.size(); ++j) {
        if (gs.gs_norm_sq[j] > prefix_max) prefix_max = gs.gs_norm_sq[j];
        Rat cand = prefix_max / gs.gs_norm_sq[j];
        if (cand > best) best = cand;
    }
    return best;
}

RatMatrix projected_gram(const GramSchmidtData& gs, int start, int len) {
    if (start < 0 || len <= 0 || start + len > gs.size())
        fail(errc::bad_argument, "projected block out of range");
    RatMatrix out(len, len);
    auto mu_at = [&](int a, int l) -> Rat {
        return l == a ? Rat(1) : gs.mu[a][l];
    };
    for (int p = 0; p < len; ++p)
        for (int q = p; q < len; ++q) {
            int a = start + p, b = start + q;
            Rat s(0);
            for (int l = start; l <= std::min(a, b); ++l) s += mu_at(a, l) * mu_at(b, l) * gs.gs_norm_sq[l];
            out(p, q) = s;
            out(q, p) = s;
        }
    return out;
}

}  // namespace latdist
