#include "gadgets.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "errors.hpp"

namespace latdist {

CvpAlphaInstance::CvpAlphaInstance(LatticeHandle l, RatVec t, Rat d2, double g, double a)
    : lattice(std::move(l)), target(std::move(t)), d_sq(std::move(d2)), gamma(g), alpha(a) {
    if (!(d_sq > 0)) fail(errc::bad_argument, "distance must be positive");
    if (static_cast<int>(target.size()) != lattice.ambient())
        fail(errc::bad_argument, "target dimension does not match the lattice");
}

LdpGadget::LdpGadget(LatticeHandle a, LatticeHandle b, Rat r_in, Rat c_in, Rat d2, double g)
    : l1(std::move(a)), l2(std::move(b)), r(std::move(r_in)), c(std::move(c_in)),
      d_sq(std::move(d2)), gamma(g) {
    if (!(r > 0)) fail(errc::bad_argument, "appended length must be positive");
    if (!(c > 1)) fail(errc::bad_argument, "similarity threshold must exceed 1");
    if (l1.ambient() != l2.ambient() || l1.dim() != l2.dim())
        fail(errc::bad_argument, "gadget lattices must share shape");
    for (int j = 0; j + 1 < l1.dim(); ++j)
        if (l1.basis().col(j) != l2.basis().col(j))
            fail(errc::bad_argument, "gadget lattices must share all but the appended column");
}

LdpGadget build_ldp_gadget(const CvpAlphaInstance& inst, uint64_t cap) {
    Rat g = rat_from_double(inst.gamma);
    if (!(g > Rat(1, 2)))
        fail(errc::invalid_gamma, "gamma must exceed 1/2 so the appended length clears d");
    const RatMatrix& b = inst.lattice.basis();
    const int m = b.rows();
    const int n = b.cols();

    ClosestResult close = closest_vector(inst.lattice, inst.target, cap);
    RatVec w(m);
    for (int i = 0; i < m; ++i) w[i] = inst.target[i] - close.vector[i];

    Rat d_up = sqrt_upper(inst.d_sq);
    Rat r = Rat(2) * g * d_up;
    Rat c = (Rat(2) * g + 1) / (Rat(2) * g - 1);

    RatMatrix b1(m + 1, n + 1);
    RatMatrix b2(m + 1, n + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            b1(i, j) = b(i, j);
            b2(i, j) = b(i, j);
        }
    for (int i = 0; i < m; ++i) b2(i, n) = w[i];
    b1(m, n) = r;
    b2(m, n) = r;

    LatticeHandle l1(std::move(b1));
    LatticeHandle l2(std::move(b2));
    if (l1.square() && l1.det_abs() != l2.det_abs())
        fail(errc::internal, "gadget lattices do not share a determinant");
    return LdpGadget(std::move(l1), std::move(l2), std::move(r), std::move(c), inst.d_sq,
                     inst.gamma);
}

Int smallest_prime_at_least(const Rat& x) {
    Int p = ceil_rat(x);
    if (p < 2) p = 2;
    for (;; ++p) {
        if (p == 2 || p == 3) return p;
        if (p % 2 == 0) continue;
        bool prime = true;
        for (Int q = 3; q * q <= p; q += 2) {
            if (p % q == 0) {
                prime = false;
                break;
            }
        }
        if (prime) return p;
    }
}

SvpToCvpBatch build_svp_to_cvp_batch(const LatticeHandle& l, const Rat& d, double gamma) {
    if (!(gamma >= 1.0)) fail(errc::invalid_gamma, "batch construction needs gamma >= 1");
    if (!(d > 0)) fail(errc::bad_argument, "distance must be positive");
    const RatMatrix& b = l.basis();
    const int m = l.ambient();
    const int n = l.dim();
    Rat g = rat_from_double(gamma);

    Int p = smallest_prime_at_least(Rat(10) * g * Rat(n));
    if (Rat(p) > Rat(20) * g * Rat(n))
        fail(errc::internal, "no prime within twice the target bound");
    Rat pm1 = Rat(p - 1);
    Rat gamma_prime_sq = g * g * pm1 * pm1 / (pm1 * pm1 - g * g);
    Rat gamma_prime = sqrt_upper(gamma_prime_sq);
    Rat r = gamma_prime * d / pm1;
    Rat d_prime_sq = d * d + r * r;

    SvpToCvpBatch batch;
    batch.trace.p = p;
    batch.trace.r = r;
    batch.trace.gamma = gamma;
    batch.trace.gamma_prime = gamma_prime;
    batch.trace.d = d;
    batch.trace.d_prime_sq = d_prime_sq;

    const double alpha = 1.0 / gamma;
    for (int i = 0; i < n; ++i) {
        RatMatrix bi(m + 1, n);
        for (int row = 0; row < m; ++row)
            for (int col = 0; col < n; ++col)
                bi(row, col) = col == i ? Rat(p) * b(row, col) : b(row, col);
        LatticeHandle li(std::move(bi));
        for (Int j = 1; j < p; ++j) {
            RatVec t(m + 1);
            for (int row = 0; row < m; ++row) t[row] = Rat(j) * b(row, i);
            t[m] = r;
            batch.instances.emplace_back(li, std::move(t), d_prime_sq, gamma, alpha);
        }
    }
    return batch;
}

RatMatrix luk_tracy(int n) {
    if (n < 1) fail(errc::bad_argument, "dimension must be positive");
    RatMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
        b(i, i) = 1;
        for (int j = i + 1; j < n; ++j) b(i, j) = Rat(-1, 2);
    }
    return b;
}

LatticeHandle random_integer_lattice(int n, int entry_bound, uint64_t seed) {
    if (n < 1) fail(errc::bad_argument, "rank must be positive");
    if (entry_bound < 1) fail(errc::bad_argument, "entry bound must be positive");
    std::mt19937_64 rng(seed);
    const uint64_t width = 2 * static_cast<uint64_t>(entry_bound) + 1;
    for (;;) {
        RatMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b(i, j) = Rat(static_cast<long>(rng() % width) - entry_bound);
        if (determinant(b) != 0) return LatticeHandle(std::move(b));
    }
}

namespace {

SeparationReport evaluate_separation(const LatticeHandle& l, uint64_t cap) {
    SeparationReport rep;
    rep.n = l.dim();
    rep.basis = l.basis();
    rep.det_sq = l.det_sq();
    SuccessiveMinima mins = successive_minima(l, cap);
    rep.lambda1_sq = mins.lambda_sq.front();
    rep.m12_sq = Rat(1) / rep.lambda1_sq;
    rep.m21_sq = mins.lambda_sq.back();
    rep.floor_value = std::pow(to_double(rep.det_sq), -0.5 / rep.n) * sqrt_double(rep.lambda1_sq);
    rep.mm_value = sqrt_double(rep.m12_sq * rep.m21_sq);
    rep.gap = rep.floor_value / rep.mm_value;
    rep.candidates = 1;
    return rep;
}

}  // namespace

SeparationReport separation_demo(const LatticeHandle& l, uint64_t cap) {
    return evaluate_separation(l, cap);
}

SeparationReport separation_demo(int n, uint64_t cap) {
    if (n < 2) fail(errc::bad_argument, "separation demo needs rank at least 2");
    std::vector<std::pair<LatticeHandle, uint64_t>> candidates;

    RatMatrix chain(n + 1, n);
    for (int j = 0; j < n; ++j) {
        chain(j, j) = 1;
        chain(j + 1, j) = -1;
    }
    candidates.emplace_back(LatticeHandle(std::move(chain)), 0);

    if (n == 2) {
        RatMatrix flat(2, 2);
        flat(0, 0) = 1;
        flat(0, 1) = Rat(1, 2);
        flat(1, 1) = Rat(13, 15);
        candidates.emplace_back(LatticeHandle(std::move(flat)), 0);
    }

    for (uint64_t seed = 1; seed <= 20; ++seed)
        candidates.emplace_back(random_integer_lattice(n, 3, seed), seed);

    SeparationReport best;
    bool have = false;
    for (const auto& [handle, seed] : candidates) {
        SeparationReport rep = evaluate_separation(handle, cap);
        rep.chosen_seed = seed;
        if (!have || rep.gap > best.gap) {
            best = rep;
            have = true;
        }
    }
    best.candidates = static_cast<int>(candidates.size());
    if (!(best.gap > 1.0))
        fail(errc::no_witness,
             "no candidate lattice exceeded the M-factor bound at rank " + std::to_string(n));
    return best;
}

}  // namespace latdist
