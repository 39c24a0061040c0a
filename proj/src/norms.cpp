#include "norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "gram.hpp"

namespace latdist {

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0, total = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = at(i, j) * at(i, j);
                total += v;
                if (i != j) off += v;
            }
        if (total == 0.0 || off <= 1e-28 * total) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    double aip = at(i, p), aiq = at(i, q);
                    at(i, p) = at(p, i) = c * aip - s * aiq;
                    at(i, q) = at(q, i) = s * aip + c * aiq;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> scaled_doubles(const RatMatrix& g, long* scale_exp) {
    Rat m = inf_norm(g);
    *scale_exp = 0;
    std::vector<double> out(static_cast<size_t>(g.rows()) * g.cols(), 0.0);
    if (sgn(m) == 0) return out;
    long en = static_cast<long>(mpz_sizeinbase(m.get_num().get_mpz_t(), 2));
    long ed = static_cast<long>(mpz_sizeinbase(m.get_den().get_mpz_t(), 2));
    long e = en - ed;
    *scale_exp = e;
    Rat scale = pow2(-e);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            out[static_cast<size_t>(i) * g.cols() + j] = to_double(Rat(g(i, j) * scale));
    return out;
}

double operator_norm(const RatMatrix& t) {
    if (t.empty()) return 0.0;
    RatMatrix g = gram_matrix(t);
    if (sgn(inf_norm(g)) == 0) return 0.0;
    long e = 0;
    std::vector<double> d = scaled_doubles(g, &e);
    std::vector<double> ev = jacobi_eigenvalues(std::move(d), g.cols());
    double lmax = std::max(ev.back(), 0.0);
    return std::sqrt(lmax) * std::exp2(static_cast<double>(e) / 2.0);
}

double condition_number(const RatMatrix& t) {
    if (t.rows() != t.cols()) fail(errc::bad_argument, "condition number of non-square matrix");
    if (t.empty()) fail(errc::bad_argument, "condition number of empty matrix");
    RatMatrix g = gram_matrix(t);
    long e = 0;
    std::vector<double> d = scaled_doubles(g, &e);
    std::vector<double> ev = jacobi_eigenvalues(std::move(d), g.cols());
    double lmin = ev.front(), lmax = ev.back();
    if (lmin <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(lmax / lmin);
}

PencilBase prepare_pencil(const RatMatrix& g1) {
    if (g1.rows() != g1.cols()) fail(errc::bad_argument, "pencil base must be square");
    int n = g1.cols();
    PencilBase base;
    base.n = n;
    std::vector<double> a = scaled_doubles(g1, &base.scale_exp);
    base.chol.assign(static_cast<size_t>(n) * n, 0.0);
    auto at = [&](std::vector<double>& m, int i, int j) -> double& { return m[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = at(a, i, j);
            for (int k = 0; k < j; ++k) s -= at(base.chol, i, k) * at(base.chol, j, k);
            if (i == j) {
                if (s <= 0.0) fail(errc::internal, "pencil base not numerically positive definite");
                at(base.chol, i, i) = std::sqrt(s);
            } else {
                at(base.chol, i, j) = s / at(base.chol, j, j);
            }
        }
    return base;
}

std::pair<double, double> pencil_extremes(const PencilBase& base, const std::vector<double>& g2) {
    int n = base.n;
    auto l = [&](int i, int j) -> double { return base.chol[static_cast<size_t>(i) * n + j]; };
    // Z = L^-1 G2 column by column, then M = L^-1 Z^T; M is symmetric.
    std::vector<double> z(static_cast<size_t>(n) * n, 0.0);
    for (int col = 0; col < n; ++col)
        for (int i = 0; i < n; ++i) {
            double s = g2[static_cast<size_t>(i) * n + col];
            for (int k = 0; k < i; ++k) s -= l(i, k) * z[static_cast<size_t>(k) * n + col];
            z[static_cast<size_t>(i) * n + col] = s / l(i, i);
        }
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (int col = 0; col < n; ++col)
        for (int i = 0; i < n; ++i) {
            double s = z[static_cast<size_t>(col) * n + i];
            for (int k = 0; k < i; ++k) s -= l(i, k) * m[static_cast<size_t>(k) * n + col];
            m[static_cast<size_t>(i) * n + col] = s / l(i, i);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double avg = 0.5 * (m[static_cast<size_t>(i) * n + j] + m[static_cast<size_t>(j) * n + i]);
            m[static_cast<size_t>(i) * n + j] = m[static_cast<size_t>(j) * n + i] = avg;
        }
    std::vector<double> ev = jacobi_eigenvalues(std::move(m), n);
    return {ev.front(), ev.back()};
}

double pencil_condition(const RatMatrix& g1, const RatMatrix& g2) {
    PencilBase base = prepare_pencil(g1);
    long e2 = 0;
    std::vector<double> d2 = scaled_doubles(g2, &e2);
    auto [lmin, lmax] = pencil_extremes(base, d2);
    if (lmin <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(lmax / lmin);
}

double pencil_norm(const RatMatrix& g1, const RatMatrix& g2) {
    PencilBase base = prepare_pencil(g1);
    long e2 = 0;
    std::vector<double> d2 = scaled_doubles(g2, &e2);
    auto [lmin, lmax] = pencil_extremes(base, d2);
    (void)lmin;
    double lt = std::max(lmax, 0.0);
    return std::sqrt(lt) * std::exp2(static_cast<double>(e2 - base.scale_exp) / 2.0);
}

}  // namespace latdist
