#pragma once

#include <compare>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace relcone {

using Rational = mpq_class;

// Upper bound on the conductor of any value the library will create. Exceeding
// it throws ConductorLimitExceeded instead of silently growing the field.
long max_conductor() noexcept;
void set_max_conductor(long limit);

// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(long n);
long euler_phi(long n);

/// Exact element of the cyclotomic field Q(zeta_N).
///
/// The value is stored as a rational polynomial in zeta_N of degree < phi(N),
/// reduced modulo Phi_N. Every value is kept at its smallest possible
/// conductor, so two equal field elements always have identical
/// (conductor, residue) pairs and comparison is structural.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
    Cyclotomic(Rational value);  // NOLINT(google-explicit-constructor)

    /// zeta_order^exponent. The exponent may be negative.
    static Cyclotomic root_of_unity(long order, long exponent);

    /// Builds sum residue[e] * zeta_n^e and canonicalizes it. The residue may
    /// have any length; it is reduced modulo x^n - 1 and Phi_n.
    static Cyclotomic from_powers(long n, std::vector<Rational> residue);

    long conductor() const noexcept { return conductor_; }
    std::span<const Rational> residue() const noexcept { return residue_; }

    bool is_zero() const noexcept { return residue_.empty(); }
    bool is_one() const;
    bool is_rational() const noexcept { return conductor_ == 1; }
    /// Only meaningful when is_rational().
    Rational rational_value() const;

    Cyclotomic operator-() const;
    Cyclotomic inverse() const;
    Cyclotomic pow(long exponent) const;

    friend class ProductAccumulator;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);

    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
    Cyclotomic& operator/=(const Cyclotomic& b) { return *this = *this / b; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    // Total order on canonical forms; it has no arithmetic meaning.
    friend std::strong_ordering operator<=>(const Cyclotomic& a, const Cyclotomic& b);

    /// Numeric value at zeta_N = exp(2 pi i / N). Accurate to about 15
    /// significant digits; `digits` must be in [1, 15].
    std::complex<double> to_complex(int digits = 15) const;

    /// Canonical text, e.g. "1/2*z8^1 - 3".
    std::string str() const;
    static Cyclotomic parse(std::string_view text);

private:
    long conductor_ = 1;
    std::vector<Rational> residue_;  // trailing zeros stripped; empty means 0
};

/// c = (num[0] + num[1] zeta_N + ...) / den with integer numerators and a
/// positive common denominator.
struct IntegerResidue {
    long conductor = 1;
    std::vector<mpz_class> num;
    mpz_class den = 1;
};

IntegerResidue integer_residue(const Cyclotomic& c);

/// Running sum of products a * b. Terms are collected modulo x^N - 1 over a
/// common denominator and reduced once when the result is taken, which is
/// much cheaper than reducing every partial sum.
class ProductAccumulator {
public:
    void add_product(const IntegerResidue& a, const IntegerResidue& b, const Rational& weight = Rational(1));
    void add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& weight = Rational(1));
    void add(const Cyclotomic& a);
    /// Takes the sum and leaves the accumulator empty.
    Cyclotomic result();

private:
    void widen(long conductor);
    // Makes den_ a multiple of d and returns den_ / d.
    mpz_class common_factor(const mpz_class& d);

    long conductor_ = 1;
    std::vector<mpz_class> raw_;  // coefficient of zeta^i times den_, i < conductor_
    mpz_class den_ = 1;
};

/// Element of the form q * zeta_order^exponent with q a nonzero rational.
struct RootOfUnityMultiple {
    Rational scale;
    long order;
    long exponent;
};

/// Recognizes c = q * (root of unity); nullopt for anything else.
std::optional<RootOfUnityMultiple> as_root_of_unity_multiple(const Cyclotomic& c);

/// Some r with r^k == c when c = q * (root of unity) and |q| has a rational
/// k-th root. The root-of-unity part is taken inside the field of c whenever
/// possible. nullopt when no such root exists.
std::optional<Cyclotomic> supported_kth_root(const Cyclotomic& c, long k);

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

}  // namespace relcone
