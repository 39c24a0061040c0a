#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace latdist {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

/** Parses "p/q" or "p" into a canonical rational; throws errc::parse on malformed input. */
Rat parse_rat(const std::string& text);

/** Canonical "p/q" rendering; integers print without the denominator. */
std::string rat_str(const Rat& q);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

/** Nearest integer with exact halves rounded away from zero. */
Int round_half_away(const Rat& q);

/** Nearest integer with exact halves rounded to the even neighbor. */
Int round_half_even(const Rat& q);

bool is_integer(const Rat& q);

/** 2^e as an exact rational; e may be negative. */
Rat pow2(long e);

double to_double(const Rat& q);

/** Exact rational with the same value as the double (doubles are dyadic). */
Rat rat_from_double(double x);

/** floor(sqrt(n)) for n >= 0. */
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n, Int* root = nullptr);

/** True when x is the square of a rational; *root receives the nonnegative exact square root. */
bool exact_sqrt(const Rat& x, Rat* root = nullptr);

/**
 * Rational s <= sqrt(x), exact when x is a rational square, otherwise within
 * 10^-40 below the true root.
 */
Rat sqrt_lower(const Rat& x);

/** Rational s >= sqrt(x) with the same 10^-40 guarantee. */
Rat sqrt_upper(const Rat& x);

double sqrt_double(const Rat& x);

}  // namespace latdist
