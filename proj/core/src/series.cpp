#include "relcone/series.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "relcone/errors.hpp"
#include "text_parse.hpp"

namespace relcone {

namespace {

long scale_trunc(long trunc, long m) {
    if (trunc == Series::kExactTrunc) return trunc;
    if (trunc > Series::kExactTrunc / m) throw std::overflow_error("truncation order overflow");
    return trunc * m;
}

void add_term(Series::Terms& terms, long exponent, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

Series make(Series::Terms terms, long trunc, bool exact) {
    return exact ? Series::exact(std::move(terms)) : Series::truncated(std::move(terms), trunc);
}

// Product of term maps, keeping exponents below `limit`.
Series::Terms multiply_terms(const Series::Terms& a, const Series::Terms& b, long limit) {
    std::vector<std::pair<long, IntegerResidue>> ia, ib;
    for (const auto& [e, c] : a) {
        if (e >= limit) break;
        ia.emplace_back(e, integer_residue(c));
    }
    for (const auto& [e, c] : b) {
        if (e >= limit) break;
        ib.emplace_back(e, integer_residue(c));
    }
    std::map<long, ProductAccumulator> sums;
    for (const auto& [ea, ca] : ia) {
        for (const auto& [eb, cb] : ib) {
            if (ea + eb >= limit) break;
            sums[ea + eb].add_product(ca, cb);
        }
    }
    Series::Terms out;
    for (auto& [e, acc] : sums) add_term(out, e, acc.result());
    return out;
}

std::string coefficient_text(const Cyclotomic& c, bool& negative) {
    int nonzero = 0;
    for (const auto& r : c.residue()) nonzero += r != 0;
    std::string text = c.str();
    negative = false;
    if (nonzero > 1) return "(" + text + ")";
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.erase(0, 1);
    }
    return text;
}

}  // namespace

Series Series::exact(Terms terms) {
    Series s;
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first < 0) throw std::invalid_argument("series exponents must be non-negative");
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    s.terms_ = std::move(terms);
    return s;
}

Series Series::truncated(Terms terms, long trunc) {
    if (trunc < 0) throw std::invalid_argument("truncation order must be non-negative");
    Series s = exact(std::move(terms));
    s.terms_.erase(s.terms_.lower_bound(trunc), s.terms_.end());
    s.trunc_ = trunc;
    s.exact_ = false;
    return s;
}

Series Series::monomial(const Cyclotomic& coefficient, long exponent) {
    Terms t;
    if (!coefficient.is_zero()) t.emplace(exponent, coefficient);
    return exact(std::move(t));
}

Cyclotomic Series::coefficient(long exponent) const {
    if (!known(exponent)) {
        throw PrecisionExhausted("coefficient of t^" + std::to_string(exponent) + " is beyond truncation order " +
                                 std::to_string(trunc_));
    }
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Cyclotomic{} : it->second;
}

Series Series::truncate(long order) const {
    if (order >= trunc_) return *this;
    return truncated(terms_, order);
}

Series Series::shift(long shift) const {
    if (shift < 0 && !terms_.empty() && terms_.begin()->first < -shift) {
        throw std::invalid_argument("negative shift below the series order");
    }
    if (shift < 0 && !exact_ && trunc_ < -shift) throw PrecisionExhausted("shift beyond known terms");
    Terms out;
    for (const auto& [e, c] : terms_) out.emplace(e + shift, c);
    return make(std::move(out), exact_ ? kExactTrunc : trunc_ + shift, exact_);
}

Series Series::scaled(const Cyclotomic& factor) const {
    Terms out;
    for (const auto& [e, c] : terms_) add_term(out, e, c * factor);
    return make(std::move(out), trunc_, exact_);
}

Series Series::pow(long exponent) const {
    if (exponent < 0) throw std::invalid_argument("negative series power");
    Series result = constant(Cyclotomic(1)), base = *this;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

Series Series::operator-() const {
    Series out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Series operator+(const Series& a, const Series& b) {
    const long trunc = std::min(a.trunc_, b.trunc_);
    Series::Terms out;
    for (const auto& [e, c] : a.terms_) {
        if (e < trunc) out.emplace(e, c);
    }
    for (const auto& [e, c] : b.terms_) {
        if (e < trunc) add_term(out, e, c);
    }
    return make(std::move(out), trunc, a.exact_ && b.exact_);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    if ((a.exact_ && a.terms_.empty()) || (b.exact_ && b.terms_.empty())) return {};
    // O(t^T) * (c t^m + ...) is O(t^(T + m)).
    auto lowest = [](const Series& s) { return s.terms_.empty() ? s.trunc_ : s.terms_.begin()->first; };
    auto bound = [](long t, long m) { return t > Series::kExactTrunc - m ? Series::kExactTrunc : t + m; };
    const long trunc = std::min(bound(a.trunc_, lowest(b)), bound(b.trunc_, lowest(a)));
    return make(multiply_terms(a.terms_, b.terms_, trunc), trunc, a.exact_ && b.exact_);
}

std::string Series::str(bool with_order) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool negative = false;
        std::string coeff = coefficient_text(c, negative);
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << coeff;
            continue;
        }
        if (coeff != "1") os << coeff << '*';
        os << 't';
        if (e != 1) os << '^' << e;
    }
    if (first) os << '0';
    if (with_order && !exact_) os << " + O(t^" << trunc_ << ')';
    return os.str();
}

Series Series::parse(std::string_view text, std::optional<long> trunc) {
    auto poly = detail::parse_polynomial(text);
    Terms terms(poly.begin(), poly.end());
    if (trunc) return truncated(std::move(terms), *trunc);
    return exact(std::move(terms));
}

std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.str(true); }

Order ord(const Series& s) {
    if (!s.terms().empty()) return {Order::Kind::Finite, s.terms().begin()->first};
    if (s.exact()) return {Order::Kind::ZeroExact, 0};
    return {Order::Kind::ZeroTruncated, s.trunc()};
}

std::pair<long, Cyclotomic> initial(const Series& s) {
    if (s.terms().empty()) throw UndefinedInitial();
    return *s.terms().begin();
}

Series substitute(const Series& s, const Cyclotomic& c, long m) {
    if (m < 1) throw std::invalid_argument("substitution exponent must be positive");
    Series::Terms out;
    Cyclotomic power(1);
    long power_exponent = 0;
    for (const auto& [e, a] : s.terms()) {
        power *= c.pow(e - power_exponent);
        power_exponent = e;
        add_term(out, m * e, a * power);
    }
    return make(std::move(out), scale_trunc(s.trunc(), m), s.exact());
}

Series compose(const Series& outer, const Series& inner) {
    const Order inner_order = ord(inner);
    if (inner_order.kind == Order::Kind::ZeroTruncated) {
        throw PrecisionExhausted("order of the inner series is not known");
    }
    if (inner_order.kind == Order::Kind::ZeroExact) {
        // Only the constant term survives; unknown terms are all multiplied by 0.
        if (!outer.known(0)) throw PrecisionExhausted("constant term of the outer series is not known");
        return Series::constant(outer.coefficient(0));
    }
    if (inner_order.value < 1) throw InnerOrderZero();
    const long m = inner_order.value;

    const bool exact = outer.exact() && inner.exact();
    long trunc = Series::kExactTrunc;
    if (!outer.exact()) trunc = scale_trunc(outer.trunc(), m);
    if (!inner.exact()) trunc = std::min(trunc, inner.trunc());

    std::map<long, ProductAccumulator> sums;
    Series::Terms power{{0, Cyclotomic(1)}};
    long power_exponent = 0;
    for (const auto& [e, a] : outer.terms()) {
        if (!exact && m * e >= trunc) break;
        while (power_exponent < e) {
            power = multiply_terms(power, inner.terms(), trunc);
            ++power_exponent;
        }
        const IntegerResidue ia = integer_residue(a);
        for (const auto& [pe, pc] : power) sums[pe].add_product(ia, integer_residue(pc));
    }
    Series::Terms out;
    for (auto& [e, acc] : sums) add_term(out, e, acc.result());
    return make(std::move(out), trunc, exact);
}

Series kth_root(const Series& s, long k, long precision) {
    if (k < 1) throw std::invalid_argument("root degree must be positive");
    const auto& terms = s.terms();
    if (!s.known(0) || terms.empty() || terms.begin()->first != 0 || !terms.begin()->second.is_one()) {
        throw NotUnitSeries();
    }
    if (k == 1) return s;
    const long trunc = s.exact() ? precision : std::min(precision, s.trunc());

    // Power-series power rule for r = s^alpha with s(0) = 1:
    //   n r_n = sum_{j=1..n} ((alpha + 1) j - n) s_j r_{n-j}.
    const Rational alpha(1, k);
    std::vector<Cyclotomic> r(std::max<long>(trunc, 1));
    std::vector<IntegerResidue> ir(r.size());
    r[0] = Cyclotomic(1);
    ir[0] = integer_residue(r[0]);
    std::vector<std::pair<long, IntegerResidue>> is;
    for (auto it = std::next(terms.begin()); it != terms.end() && it->first < trunc; ++it) {
        is.emplace_back(it->first, integer_residue(it->second));
    }
    for (long n = 1; n < trunc; ++n) {
        ProductAccumulator acc;
        for (const auto& [j, sj] : is) {
            if (j > n) break;
            if (r[n - j].is_zero()) continue;
            acc.add_product(sj, ir[n - j], Rational((alpha + 1) * j - n) / n);
        }
        r[n] = acc.result();
        ir[n] = integer_residue(r[n]);
    }
    Series::Terms out;
    for (long n = 0; n < trunc; ++n) add_term(out, n, r[n]);

    if (s.exact()) {
        const long degree = terms.rbegin()->first;
        const bool polynomial = degree % k == 0 && (out.empty() || out.rbegin()->first <= degree / k) &&
                                degree / k < trunc;
        if (polynomial) {
            Series candidate = Series::exact(out);
            if (candidate.pow(k) == s) return candidate;
        }
    }
    return Series::truncated(std::move(out), trunc);
}

Series reciprocal(const Series& s, long precision) {
    if (!s.known(0) || s.coefficient(0).is_zero()) {
        throw NotUnitSeries("reciprocal requires a nonzero constant term");
    }
    const auto& terms = s.terms();
    const Cyclotomic inv0 = terms.begin()->second.inverse();
    if (terms.size() == 1) return Series::constant(inv0);
    const long trunc = s.exact() ? precision : std::min(precision, s.trunc());
    std::vector<Cyclotomic> b(std::max<long>(trunc, 1));
    std::vector<IntegerResidue> ib(b.size());
    b[0] = inv0;
    ib[0] = integer_residue(inv0);
    std::vector<std::pair<long, IntegerResidue>> is;
    for (auto it = std::next(terms.begin()); it != terms.end() && it->first < trunc; ++it) {
        is.emplace_back(it->first, integer_residue(it->second));
    }
    for (long n = 1; n < trunc; ++n) {
        ProductAccumulator acc;
        for (const auto& [j, sj] : is) {
            if (j > n) break;
            acc.add_product(sj, ib[n - j]);
        }
        b[n] = -(acc.result() * inv0);
        ib[n] = integer_residue(b[n]);
    }
    Series::Terms out;
    for (long n = 0; n < trunc; ++n) add_term(out, n, b[n]);
    return Series::truncated(std::move(out), trunc);
}

Series revert(const Series& s, long precision) {
    const Order o = ord(s);
    if (!o.finite() || o.value != 1) throw NotOrderOne();
    const Cyclotomic a1 = s.terms().begin()->second;
    if (s.exact() && s.terms().size() == 1) return Series::monomial(a1.inverse(), 1);
    const long trunc = s.exact() ? precision : std::min(precision, s.trunc());

    // Lagrange inversion: [t^n] g = [w^{n-1}] h(w)^n / n with h = w / s(w).
    const Series h = reciprocal(s.shift(-1), std::max<long>(trunc - 1, 1));
    Series::Terms out;
    Series::Terms power{{0, Cyclotomic(1)}};
    for (long n = 1; n < trunc; ++n) {
        power = multiply_terms(power, h.terms(), trunc - 1);
        auto it = power.find(n - 1);
        if (it != power.end()) add_term(out, n, it->second * Cyclotomic(Rational(1, n)));
    }
    return Series::truncated(std::move(out), trunc);
}

bool agree_below(const Series& a, const Series& b, long order) {
    if (order > 0 && (!a.known(order - 1) || !b.known(order - 1))) {
        throw PrecisionExhausted("comparison beyond known terms");
    }
    auto below = [order](const Series::Terms& terms) {
        return Series::Terms(terms.begin(), terms.lower_bound(order));
    };
    return below(a.terms()) == below(b.terms());
}

}  // namespace relcone
