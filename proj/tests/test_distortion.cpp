#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "distortion.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "norms.hpp"

using namespace latdist;
using testutil::mat;
using testutil::thrown_code;

namespace {

RatMatrix random_basis(std::mt19937_64& rng, int n, int bound) {
    RatMatrix b(n, n);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b(i, j) = Rat(static_cast<long>(rng() % (2 * bound + 1)) - bound);
    } while (determinant(b) == 0);
    return b;
}

}  // namespace

TEST_CASE("M-factors from exact minima") {
    LatticeHandle z2(RatMatrix::identity(2));
    LatticeHandle d23(mat({{"2", "0"}, {"0", "3"}}));
    CHECK((m_factor_sq(z2, d23) == 9));
    CHECK((m_factor_sq(d23, z2) == Rat(1, 4)));
    CHECK((m_factor_sq(z2, z2) == 1));
}

TEST_CASE("the two-sided lower bound is exact, symmetric, and scale invariant") {
    LatticeHandle z2(RatMatrix::identity(2));
    LatticeHandle d14(mat({{"1", "0"}, {"0", "4"}}));
    CHECK((distortion_lower_bound_sq(z2, d14) == 16));
    CHECK((distortion_lower_bound_sq(d14, z2) == 16));
    CHECK((distortion_lower_bound_sq(z2, z2) == 1));

    RatMatrix b = mat({{"2", "1"}, {"0", "2"}});
    RatMatrix scaled = b;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) scaled(i, j) = scaled(i, j) * 3;
    CHECK((distortion_lower_bound_sq(LatticeHandle(b), LatticeHandle(scaled)) == 1));

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 6; ++trial) {
        LatticeHandle a(random_basis(rng, 3, 5));
        LatticeHandle c(random_basis(rng, 3, 5));
        CHECK((distortion_lower_bound_sq(a, c) == distortion_lower_bound_sq(c, a)));
        CHECK((distortion_lower_bound_sq(a, c) >= 1));
    }
}

TEST_CASE("solver output on an orthogonal pair is tight") {
    LatticeHandle z2(RatMatrix::identity(2));
    LatticeHandle d14(mat({{"1", "0"}, {"0", "4"}}));
    DistortionCertificate cert = ldp_solve(z2, d14, 2);
    CHECK(cert.upper_bound == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(cert.has_lower_bound);
    CHECK((cert.lower_bound_sq == 16));
    CHECK((cert.m12_sq == 16));
    CHECK((cert.m21_sq == 1));
    REQUIRE(!cert.mapping.empty());
    CHECK(verify_mapping(cert.mapping, z2, d14));
    CHECK(is_unimodular(cert.witness));
    CHECK(distortion_upper_bound_check(cert));
}

TEST_CASE("solver handles rectangular pairs through the pencil") {
    LatticeHandle a(mat({{"1", "0"}, {"0", "1"}, {"0", "0"}}));
    LatticeHandle b(mat({{"2", "0"}, {"0", "3"}, {"0", "0"}}));
    DistortionCertificate cert = ldp_solve(a, b, 2);
    CHECK(cert.mapping.empty());
    CHECK(cert.upper_bound == doctest::Approx(1.5).epsilon(1e-9));
    CHECK((cert.lower_bound_sq == Rat(9, 4)));
    CHECK(is_unimodular(cert.witness));
}

TEST_CASE("solver rejects mismatched ranks") {
    LatticeHandle a(RatMatrix::identity(2));
    LatticeHandle b(RatMatrix::identity(3));
    CHECK((thrown_code([&] { ldp_solve(a, b, 2); }) == errc::bad_argument));
}

TEST_CASE("gap decisions on frozen pairs") {
    LatticeHandle z2(RatMatrix::identity(2));
    LatticeHandle d14(mat({{"1", "0"}, {"0", "4"}}));

    GapDecision yes = gap_decide(z2, z2, Rat(1), 1.0, 2);
    CHECK(yes.verdict == Verdict::yes);
    CHECK(std::string(verdict_name(yes.verdict)) == "YES");

    GapDecision yes2 = gap_decide(z2, d14, Rat(5), 1.0, 2);
    CHECK(yes2.verdict == Verdict::yes);

    GapDecision no = gap_decide(z2, d14, Rat(2), 1.0, 2);
    CHECK(no.verdict == Verdict::no);
    CHECK(std::string(verdict_name(no.verdict)) == "NO");

    GapDecision far = gap_decide(z2, d14, Rat(3), 1.3, 2);
    CHECK(far.verdict == Verdict::no);

    GapDecision guard = gap_decide(z2, d14, Rat(39999999999L, 10000000000L), 1.0, 2);
    CHECK(guard.verdict == Verdict::unknown);
    CHECK(std::string(verdict_name(guard.verdict)) == "UNKNOWN");

    CHECK((thrown_code([&] { gap_decide(z2, d14, Rat(1, 2), 1.0, 2); }) ==
           errc::bad_argument));
    CHECK((thrown_code([&] { gap_decide(z2, d14, Rat(2), 0.5, 2); }) == errc::bad_argument));
}

TEST_CASE("budget starvation downgrades the verdict to unknown") {
    LatticeHandle z2(RatMatrix::identity(2));
    LatticeHandle wide(mat({{"1", "0"}, {"0", "1000000"}}));
    GapDecision gd = gap_decide(z2, wide, Rat(2), 1.0, 2, 100000);
    CHECK(gd.verdict == Verdict::unknown);
    CHECK_FALSE(gd.evidence.has_lower_bound);
}

TEST_CASE("mapping verification is exact") {
    LatticeHandle z2(RatMatrix::identity(2));
    LatticeHandle d14(mat({{"1", "0"}, {"0", "4"}}));
    RatMatrix t = mat({{"1", "0"}, {"0", "4"}});
    CHECK(verify_mapping(t, z2, d14));

    RatMatrix doubled = mat({{"2", "0"}, {"0", "8"}});
    CHECK_FALSE(verify_mapping(doubled, z2, d14));
    CHECK_FALSE(verify_mapping(RatMatrix::identity(2), z2, d14));
    CHECK((thrown_code([&] { verify_mapping(mat({{"1", "0"}}), z2, d14); }) ==
           errc::bad_argument));
}

TEST_CASE("brute force distortion on tiny ranks") {
    LatticeHandle z2(RatMatrix::identity(2));
    DistortionCertificate self = brute_force_distortion(z2, z2, 2);
    CHECK(self.upper_bound == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((self.witness == RatMatrix::identity(2)));
    CHECK((self.mapping == RatMatrix::identity(2)));

    LatticeHandle d14(mat({{"1", "0"}, {"0", "4"}}));
    DistortionCertificate best = brute_force_distortion(z2, d14, 3);
    CHECK(best.upper_bound == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(is_unimodular(best.witness));
    CHECK(verify_mapping(best.mapping, z2, d14));
    CHECK((best.lower_bound_sq == 16));

    CHECK((thrown_code([&] {
               brute_force_distortion(LatticeHandle(RatMatrix::identity(4)),
                                      LatticeHandle(RatMatrix::identity(4)), 2);
           }) == errc::bad_argument));
    CHECK((thrown_code([&] { brute_force_distortion(z2, d14, 51); }) == errc::bad_argument));
    CHECK((thrown_code([&] { brute_force_distortion(z2, d14, 0); }) == errc::bad_argument));

    LatticeHandle z3(RatMatrix::identity(3));
    CHECK((thrown_code([&] { brute_force_distortion(z3, z3, 2, 10); }) ==
           errc::budget_exceeded));
}

TEST_CASE("brute force never beats the exact lower bound") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 8; ++trial) {
        LatticeHandle a(random_basis(rng, 2, 4));
        LatticeHandle b(random_basis(rng, 2, 4));
        DistortionCertificate cert = brute_force_distortion(a, b, 4);
        double lower = std::sqrt(to_double(cert.lower_bound_sq));
        CHECK(cert.upper_bound >= lower * (1.0 - 1e-9));
        CHECK(is_unimodular(cert.witness));
        CHECK(verify_mapping(cert.mapping, a, b));
    }
}

TEST_CASE("solver certificates stay inside the sandwich") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 8; ++trial) {
        LatticeHandle a(random_basis(rng, 3, 5));
        LatticeHandle b(random_basis(rng, 3, 5));
        DistortionCertificate cert = ldp_solve(a, b, 2);
        CHECK(cert.has_lower_bound);
        CHECK(distortion_upper_bound_check(cert));
        CHECK(verify_mapping(cert.mapping, a, b));
        CHECK(cert.upper_bound * (1 + 1e-9) >= std::sqrt(to_double(cert.lower_bound_sq)));
    }
}

TEST_CASE("pair condition numbers") {
    RatMatrix b = mat({{"2", "1"}, {"0", "2"}});
    CHECK(pair_condition_number(b, b) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pair_condition_number(RatMatrix::identity(2), mat({{"1", "0"}, {"0", "4"}})) ==
          doctest::Approx(4.0).epsilon(1e-9));

    RatMatrix tall1 = mat({{"1", "0"}, {"0", "1"}, {"0", "0"}});
    RatMatrix tall2 = mat({{"2", "0"}, {"0", "3"}, {"0", "0"}});
    CHECK(pair_condition_number(tall1, tall2) == doctest::Approx(1.5).epsilon(1e-9));
}
