#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "relcone/cyclotomic.hpp"

namespace relcone {

/// Result of ord(): a finite order, or no nonzero term seen so far.
struct Order {
    enum class Kind { Finite, ZeroExact, ZeroTruncated };
    Kind kind = Kind::ZeroExact;
    long value = 0;  // the order when Finite, the truncation when ZeroTruncated

    bool finite() const noexcept { return kind == Kind::Finite; }
    friend bool operator==(const Order&, const Order&) = default;
};

/// One-variable power series with coefficients in a cyclotomic field, known
/// below a truncation order. An exact series is a polynomial known in full.
class Series {
public:
    static constexpr long kExactTrunc = std::numeric_limits<long>::max();
    static constexpr long kDefaultPrecision = 30;

    using Terms = std::map<long, Cyclotomic>;

    Series() = default;  // exact zero

    static Series exact(Terms terms);
    /// Keeps only the terms below `trunc`.
    static Series truncated(Terms terms, long trunc);
    static Series monomial(const Cyclotomic& coefficient, long exponent);
    static Series constant(const Cyclotomic& value) { return monomial(value, 0); }

    const Terms& terms() const noexcept { return terms_; }
    bool exact() const noexcept { return exact_; }
    /// kExactTrunc for exact series.
    long trunc() const noexcept { return trunc_; }
    bool known(long exponent) const noexcept { return exponent < trunc_; }

    /// Coefficient of t^exponent; throws PrecisionExhausted above the truncation.
    Cyclotomic coefficient(long exponent) const;

    /// Forgets everything at and above `order`.
    Series truncate(long order) const;
    /// Multiplies by t^shift. Negative shifts need ord >= -shift.
    Series shift(long shift) const;
    Series scaled(const Cyclotomic& factor) const;
    Series pow(long exponent) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    friend bool operator==(const Series&, const Series&) = default;

    /// Canonical ascending-order text such as "t^2 + 1/2*z8^1*t^5". With
    /// `with_order`, inexact series end in "+ O(t^T)".
    std::string str(bool with_order = false) const;
    /// Parses the textual syntax. `trunc` makes the result inexact.
    static Series parse(std::string_view text, std::optional<long> trunc = std::nullopt);

private:
    Terms terms_;
    long trunc_ = kExactTrunc;
    bool exact_ = true;
};

Order ord(const Series& s);

/// Lowest nonzero term (exponent, coefficient). Throws UndefinedInitial when
/// ord is not finite.
std::pair<long, Cyclotomic> initial(const Series& s);

/// t -> c * t^m applied termwise; truncation scales by m.
Series substitute(const Series& s, const Cyclotomic& c, long m);

/// outer(inner(t)). Requires ord(inner) >= 1.
Series compose(const Series& outer, const Series& inner);

/// The series r with r(0) = 1 and r^k = s, for s = 1 + h. Exact inputs are
/// expanded below `precision`; if the expansion is a polynomial whose k-th
/// power is s, the result is exact.
Series kth_root(const Series& s, long k, long precision = Series::kDefaultPrecision);

/// Compositional inverse of an order-one series.
Series revert(const Series& s, long precision = Series::kDefaultPrecision);

/// Multiplicative inverse of a series with nonzero constant term.
Series reciprocal(const Series& s, long precision = Series::kDefaultPrecision);

/// True when a and b have the same coefficients for every exponent < order.
/// Both must be known that far.
bool agree_below(const Series& a, const Series& b, long order);

std::ostream& operator<<(std::ostream& os, const Series& s);

}  // namespace relcone
