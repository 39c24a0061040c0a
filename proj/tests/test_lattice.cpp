#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "gram.hpp"
#include "helpers.hpp"
#include "lattice.hpp"
#include "matrix.hpp"

using namespace latdist;
using testutil::mat;
using testutil::thrown_code;
using testutil::vec;

namespace {

/** Reference answers by scanning the coefficient box [-bound, bound]^n
 *  directly against the basis columns, with no pruning, so the pruned
 *  enumeration cannot share a bug with it. */
RatVec box_point(const RatMatrix& b, const std::vector<long>& x) {
    RatVec p(b.rows(), Rat(0));
    for (int j = 0; j < b.cols(); ++j)
        for (int i = 0; i < b.rows(); ++i) p[i] += Rat(x[j]) * b(i, j);
    return p;
}

void box_scan(const RatMatrix& b, int bound, const std::function<void(const std::vector<long>&)>& visit) {
    std::vector<long> x(b.cols(), -bound);
    for (;;) {
        visit(x);
        int j = 0;
        while (j < b.cols() && x[j] == bound) x[j++] = -bound;
        if (j == b.cols()) break;
        ++x[j];
    }
}

Rat box_shortest_sq(const RatMatrix& b, int bound) {
    Rat best(-1);
    box_scan(b, bound, [&](const std::vector<long>& x) {
        if (std::all_of(x.begin(), x.end(), [](long v) { return v == 0; })) return;
        Rat n = norm_sq(box_point(b, x));
        if (best < 0 || n < best) best = n;
    });
    return best;
}

Rat box_closest_sq(const RatMatrix& b, const RatVec& t, int bound) {
    Rat best(-1);
    box_scan(b, bound, [&](const std::vector<long>& x) {
        RatVec p = box_point(b, x);
        Rat n(0);
        for (size_t i = 0; i < t.size(); ++i) n += (p[i] - t[i]) * (p[i] - t[i]);
        if (best < 0 || n < best) best = n;
    });
    return best;
}

bool independent(const std::vector<RatVec>& chosen, const RatVec& candidate) {
    RatMatrix m(static_cast<int>(candidate.size()), static_cast<int>(chosen.size()) + 1);
    for (size_t j = 0; j < chosen.size(); ++j) m.set_col(static_cast<int>(j), chosen[j]);
    m.set_col(static_cast<int>(chosen.size()), candidate);
    try {
        gram_schmidt(m);
    } catch (const error&) {
        return false;
    }
    return true;
}

std::vector<Rat> box_minima_sq(const RatMatrix& b, int bound) {
    std::vector<std::pair<Rat, std::vector<long>>> pts;
    box_scan(b, bound, [&](const std::vector<long>& x) {
        if (std::all_of(x.begin(), x.end(), [](long v) { return v == 0; })) return;
        pts.emplace_back(norm_sq(box_point(b, x)), x);
    });
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& c) { return a.first < c.first; });
    std::vector<Rat> lambdas;
    std::vector<RatVec> chosen;
    for (const auto& [n, x] : pts) {
        RatVec p = box_point(b, x);
        if (!independent(chosen, p)) continue;
        chosen.push_back(p);
        lambdas.push_back(n);
        if (static_cast<int>(chosen.size()) == b.cols()) break;
    }
    return lambdas;
}

std::set<std::vector<Int>> normalized_coeff_set(const std::vector<EnumSolution>& sols) {
    std::set<std::vector<Int>> out;
    for (const EnumSolution& s : sols) {
        std::vector<Int> c = s.coeffs;
        sign_normalize(c);
        out.insert(c);
    }
    return out;
}

}  // namespace

TEST_CASE("node cap resolution order") {
    unsetenv("LATDIST_BUDGET_NODES");
    CHECK(resolve_node_cap(5) == 5);
    CHECK(resolve_node_cap(0) == 10000000);
    setenv("LATDIST_BUDGET_NODES", "123", 1);
    CHECK(resolve_node_cap(0) == 123);
    CHECK(resolve_node_cap(7) == 7);
    unsetenv("LATDIST_BUDGET_NODES");
}

TEST_CASE("handle exposes exact derived data") {
    LatticeHandle l(mat({{"2", "1"}, {"0", "2"}}));
    CHECK(l.dim() == 2);
    CHECK(l.ambient() == 2);
    CHECK(l.square());
    CHECK((l.det_sq() == 16));
    CHECK((l.det_abs() == 4));

    LatticeHandle tall(mat({{"1", "0"}, {"0", "1"}, {"0", "0"}}));
    CHECK(tall.dim() == 2);
    CHECK(tall.ambient() == 3);
    CHECK_FALSE(tall.square());
    CHECK((tall.det_sq() == 1));
    CHECK((thrown_code([&] { tall.det_abs(); }) == errc::bad_argument));
}

TEST_CASE("shortest vector matches the box oracle") {
    RatMatrix diag = mat({{"2", "0"}, {"0", "3"}});
    LatticeHandle l(diag);
    ShortestResult s = shortest_vector(l);
    CHECK((s.norm_sq == 4));
    CHECK((s.norm_sq == box_shortest_sq(diag, 3)));
    CHECK((s.coeffs == std::vector<Int>{1, 0}));
    CHECK((s.vector == vec({"2", "0"})));

    RatMatrix skew = mat({{"2", "1"}, {"0", "2"}});
    CHECK((shortest_vector(LatticeHandle(skew)).norm_sq == box_shortest_sq(skew, 3)));
}

TEST_CASE("closest vector matches the box oracle and breaks ties low") {
    RatMatrix diag = mat({{"2", "0"}, {"0", "3"}});
    LatticeHandle l(diag);
    RatVec t = vec({"1", "3/2"});
    ClosestResult c = closest_vector(l, t);
    CHECK((c.dist_sq == Rat(13, 4)));
    CHECK((c.dist_sq == box_closest_sq(diag, t, 3)));
    CHECK((c.coeffs == std::vector<Int>{0, 0}));
    CHECK((c.vector == vec({"0", "0"})));

    ClosestResult g = closest_vector(l, vec({"5", "-4"}));
    CHECK((g.dist_sq == box_closest_sq(diag, vec({"5", "-4"}), 4)));
    CHECK((g.coeffs == std::vector<Int>{2, -1}));
}

TEST_CASE("successive minima with independent witnesses") {
    RatMatrix diag = mat({{"2", "0"}, {"0", "3"}});
    SuccessiveMinima m = successive_minima(LatticeHandle(diag));
    REQUIRE(m.lambda_sq.size() == 2);
    CHECK((m.lambda_sq[0] == 4));
    CHECK((m.lambda_sq[1] == 9));
    CHECK((m.lambda_sq == box_minima_sq(diag, 3)));
    CHECK(m.witnesses.cols() == 2);
    CHECK((determinant(m.witnesses) != 0));

    RatMatrix skew = mat({{"2", "1"}, {"0", "2"}});
    SuccessiveMinima ms = successive_minima(LatticeHandle(skew));
    CHECK((ms.lambda_sq[0] == 4));
    CHECK((ms.lambda_sq[1] == 5));
    CHECK((ms.lambda_sq == box_minima_sq(skew, 3)));
}

TEST_CASE("rectangular ambient space is handled exactly") {
    RatMatrix tall = mat({{"1", "0"}, {"0", "1"}, {"0", "0"}});
    LatticeHandle l(tall);
    SuccessiveMinima m = successive_minima(l);
    CHECK((m.lambda_sq[0] == 1));
    CHECK((m.lambda_sq[1] == 1));

    ClosestResult c = closest_vector(l, vec({"0", "0", "5"}));
    CHECK((c.dist_sq == 25));
    CHECK((c.coeffs == std::vector<Int>{0, 0}));

    ClosestResult off = closest_vector(l, vec({"1/2", "0", "5"}));
    CHECK((off.dist_sq == Rat(101, 4)));
}

TEST_CASE("membership and coefficients") {
    LatticeHandle l(mat({{"2", "1"}, {"0", "2"}}));
    auto c = member_coefficients(l, vec({"3", "2"}));
    REQUIRE(c.has_value());
    CHECK(((*c)[0] == 1));
    CHECK(((*c)[1] == 1));
    CHECK(is_member(l, vec({"3", "2"})));
    CHECK_FALSE(member_coefficients(l, vec({"1", "0"})).has_value());
    CHECK_FALSE(is_member(l, vec({"1/2", "0"})));

    LatticeHandle tall(mat({{"1", "0"}, {"0", "1"}, {"0", "0"}}));
    CHECK(is_member(tall, vec({"2", "-1", "0"})));
    CHECK_FALSE(is_member(tall, vec({"2", "-1", "1"})));
}

TEST_CASE("dual basis pairing") {
    RatMatrix b = mat({{"2", "1"}, {"0", "2"}});
    RatMatrix d = dual_basis(b);
    CHECK((d == mat({{"1/2", "0"}, {"-1/4", "1/2"}})));
    CHECK((mul(transpose(d), b) == RatMatrix::identity(2)));
    CHECK((dual_basis(dual_basis(b)) == b));
    CHECK((thrown_code([] {
               dual_basis(mat({{"1", "0"}, {"0", "1"}, {"0", "0"}}));
           }) == errc::bad_argument));
}

TEST_CASE("transference products are exactly bracketed") {
    TransferenceReport r = transference_check(LatticeHandle(mat({{"2", "0"}, {"0", "3"}})));
    CHECK(r.ok);
    REQUIRE(r.products_sq.size() == 2);
    CHECK((r.products_sq[0] == 1));
    CHECK((r.products_sq[1] == 1));
    CHECK(r.violating_index == -1);

    TransferenceReport s = transference_check(LatticeHandle(mat({{"2", "1"}, {"0", "2"}})));
    CHECK(s.ok);
    for (const Rat& p : s.products_sq) {
        CHECK((p >= 1));
        CHECK((p <= 4));
    }
}

TEST_CASE("enumeration budget is enforced") {
    LatticeHandle l(mat({{"2", "1"}, {"0", "2"}}));
    CHECK((thrown_code([&] { successive_minima(l, 1); }) == errc::budget_exceeded));
    CHECK((thrown_code([&] { shortest_vector(l, 1); }) == errc::budget_exceeded));
    CHECK((thrown_code([&] { closest_vector(l, vec({"1", "1"}), 1); }) ==
           errc::budget_exceeded));
}

TEST_CASE("raw enumeration agrees with the box oracle up to sign") {
    RatMatrix b = mat({{"1", "0"}, {"0", "1"}});
    GramSchmidtData gs = gram_schmidt(b);

    EnumRequest req;
    req.gs = &gs;
    req.lo = 0;
    req.hi = 2;
    req.radius_sq = Rat(2);
    req.exclude_zero = true;
    req.collect_all = true;
    std::vector<EnumSolution> sols = enumerate_lattice(req, 100000);

    std::set<std::vector<Int>> expect;
    box_scan(b, 1, [&](const std::vector<long>& x) {
        if (x[0] == 0 && x[1] == 0) return;
        std::vector<Int> c{Int(x[0]), Int(x[1])};
        sign_normalize(c);
        expect.insert(c);
    });
    CHECK(normalized_coeff_set(sols) == expect);
    for (const EnumSolution& s : sols) {
        CHECK((s.norm_sq >= 1));
        CHECK((s.norm_sq <= 2));
    }

    req.collect_all = false;
    std::vector<EnumSolution> best = enumerate_lattice(req, 100000);
    REQUIRE(!best.empty());
    for (const EnumSolution& s : best) CHECK((s.norm_sq == 1));
}

TEST_CASE("coefficient vector ordering helpers") {
    std::vector<Int> a{0, -2};
    sign_normalize(a);
    CHECK((a == std::vector<Int>{0, 2}));
    std::vector<Int> b{-1, 3};
    sign_normalize(b);
    CHECK((b == std::vector<Int>{1, -3}));
    std::vector<Int> zero{0, 0};
    sign_normalize(zero);
    CHECK((zero == std::vector<Int>{0, 0}));

    CHECK(int_vec_less({Int(0), Int(1)}, {Int(1), Int(0)}));
    CHECK(int_vec_less({Int(1), Int(0)}, {Int(1), Int(1)}));
    CHECK_FALSE(int_vec_less({Int(1), Int(1)}, {Int(1), Int(1)}));
}

TEST_CASE("random bases agree with the box oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        RatMatrix b(n, n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    b(i, j) = Rat(static_cast<long>(rng() % 7) - 3);
        } while (determinant(b) == 0);

        LatticeHandle l(b);
        ShortestResult s = shortest_vector(l);
        Rat box_short = box_shortest_sq(b, 4);
        CHECK((s.norm_sq <= box_short));
        bool short_in_box = std::all_of(s.coeffs.begin(), s.coeffs.end(),
                                        [](const Int& c) { return abs(c) <= 4; });
        if (short_in_box) CHECK((s.norm_sq == box_short));

        RatVec t(n);
        for (int i = 0; i < n; ++i)
            t[i] = Rat(static_cast<long>(rng() % 9) - 4) / 2;
        ClosestResult c = closest_vector(l, t);
        Rat box_close = box_closest_sq(b, t, 5);
        CHECK((c.dist_sq <= box_close));
        bool close_in_box = std::all_of(c.coeffs.begin(), c.coeffs.end(),
                                        [](const Int& x) { return abs(x) <= 5; });
        if (close_in_box) CHECK((c.dist_sq == box_close));
    }
}
