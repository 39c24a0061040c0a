#include "rat.hpp"

#include <cctype>
#include <cmath>

#include "errors.hpp"

namespace latdist {

Rat parse_rat(const std::string& text) {
    if (text.empty()) fail(errc::parse, "empty rational literal");
    std::string s = text;
    size_t slash = s.find('/');
    if (slash == 0 || slash == s.size() - 1) fail(errc::parse, "malformed rational: " + text);
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool sign_ok = (c == '-' || c == '+') && (i == 0 || i == slash + 1);
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && !sign_ok)
            fail(errc::parse, "malformed rational: " + text);
    }
    if (slash != std::string::npos && s[slash + 1] == '+') s.erase(slash + 1, 1);
    if (s[0] == '+') s.erase(0, 1);
    Rat q;
    if (q.set_str(s, 10) != 0) fail(errc::parse, "malformed rational: " + text);
    if (q.get_den() == 0) fail(errc::parse, "zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int round_half_away(const Rat& q) {
    if (sgn(q) < 0) return -round_half_away(-q);
    Int two_n = 2 * q.get_num() + q.get_den();
    Int two_d = 2 * q.get_den();
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), two_n.get_mpz_t(), two_d.get_mpz_t());
    return r;
}

Int round_half_even(const Rat& q) {
    Int f = floor_rat(q);
    Rat frac = q - Rat(f);
    Rat half(1, 2);
    if (frac < half) return f;
    if (frac > half) return f + 1;
    return mpz_even_p(f.get_mpz_t()) ? f : f + 1;
}

bool is_integer(const Rat& q) {
    return mpz_divisible_p(q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
}

Rat pow2(long e) {
    Int num = 1;
    if (e >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
        return Rat(num);
    }
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-e));
    Rat q(Int(1), num);
    q.canonicalize();
    return q;
}

double to_double(const Rat& q) {
    return q.get_d();
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) fail(errc::bad_argument, "non-finite double");
    Rat q;
    mpq_set_d(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
}

Int isqrt(const Int& n) {
    if (n < 0) fail(errc::bad_argument, "isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) *root = isqrt(n);
    return true;
}

bool exact_sqrt(const Rat& x, Rat* root) {
    if (sgn(x) < 0) return false;
    Int rn, rd;
    if (!is_perfect_square(x.get_num(), &rn)) return false;
    if (!is_perfect_square(x.get_den(), &rd)) return false;
    if (root) {
        Rat r(rn, rd);
        r.canonicalize();
        *root = r;
    }
    return true;
}

namespace {

// sqrt(p/q) = sqrt(p*q)/q; floor(sqrt(p*q*10^80))/10^40 brackets the root to 10^-40.
const long kSqrtDigits = 40;

Int sqrt_scale() {
    static Int scale = [] {
        Int s;
        mpz_ui_pow_ui(s.get_mpz_t(), 10, 2 * kSqrtDigits);
        return s;
    }();
    return scale;
}

Int sqrt_scale_root() {
    static Int scale = [] {
        Int s;
        mpz_ui_pow_ui(s.get_mpz_t(), 10, kSqrtDigits);
        return s;
    }();
    return scale;
}

}  // namespace

Rat sqrt_lower(const Rat& x) {
    if (sgn(x) < 0) fail(errc::bad_argument, "sqrt of negative");
    Rat exact;
    if (exact_sqrt(x, &exact)) return exact;
    Int n = x.get_num() * x.get_den();
    Int s = isqrt(n * sqrt_scale());
    Rat r(s, sqrt_scale_root() * x.get_den());
    r.canonicalize();
    return r;
}

Rat sqrt_upper(const Rat& x) {
    if (sgn(x) < 0) fail(errc::bad_argument, "sqrt of negative");
    Rat exact;
    if (exact_sqrt(x, &exact)) return exact;
    Int n = x.get_num() * x.get_den();
    Int s = isqrt(n * sqrt_scale()) + 1;
    Rat r(s, sqrt_scale_root() * x.get_den());
    r.canonicalize();
    return r;
}

double sqrt_double(const Rat& x) {
    if (sgn(x) < 0) fail(errc::bad_argument, "sqrt of negative");
    // Split the exponent off exactly so huge rationals do not overflow the double.
    long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    if (dn == 0.0) return 0.0;
    long e = en - ed;
    double mant = dn / dd;
    if (e % 2 != 0) {
        mant *= 2.0;
        e -= 1;
    }
    return std::sqrt(mant) * std::exp2(static_cast<double>(e) / 2.0);
}

}  // namespace latdist
