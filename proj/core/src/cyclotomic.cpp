#include "relcone/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "relcone/errors.hpp"
#include "text_parse.hpp"

namespace relcone {

namespace {

std::atomic<long> g_max_conductor{240};

using Poly = std::vector<Rational>;

std::vector<long> prime_factors(long n) {
    std::vector<long> primes;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long mod_inverse(long a, long m) {
    // m >= 1, gcd(a, m) == 1
    long t = 0, new_t = 1, r = m, new_r = mod_floor(a, m);
    while (new_r != 0) {
        long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return mod_floor(t, m);
}

template <class T>
void trim(std::vector<T>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void check_conductor(long n) {
    long limit = g_max_conductor.load(std::memory_order_relaxed);
    if (n > limit) throw ConductorLimitExceeded(n, limit);
}

// Reduces p modulo x^n - 1 and then modulo Phi_n. Result has length <= phi(n).
template <class T>
std::vector<T> reduce(std::vector<T> p, long n) {
    if (static_cast<long>(p.size()) > n) {
        for (std::size_t e = n; e < p.size(); ++e) {
            if (p[e] != 0) p[e % n] += p[e];
        }
        p.resize(n);
    }
    const auto& phi = cyclotomic_polynomial(n);
    const long deg = static_cast<long>(phi.size()) - 1;
    for (long i = static_cast<long>(p.size()) - 1; i >= deg; --i) {
        if (p[i] == 0) continue;
        T c;
        std::swap(c, p[i]);
        for (long j = 0; j < deg; ++j) {
            if (phi[j] == 1) {
                p[i - deg + j] -= c;
            } else if (phi[j] == -1) {
                p[i - deg + j] += c;
            } else if (phi[j] != 0) {
                p[i - deg + j] -= c * phi[j];
            }
        }
    }
    trim(p);
    return p;
}

// Tries to rewrite an element of Q(zeta_n) as an element of Q(zeta_{n/p}).
template <class T>
bool descend(long& n, std::vector<T>& residue, long p) {
    const long m = n / p;
    if (m % p == 0) {
        // Phi_n(x) = Phi_m(x^p): basis 1, zeta_n, ..., zeta_n^{p-1} over Q(zeta_m).
        for (std::size_t e = 0; e < residue.size(); ++e) {
            if (e % p != 0 && residue[e] != 0) return false;
        }
        std::vector<T> lowered((residue.size() + p - 1) / p);
        for (std::size_t e = 0; e < residue.size(); e += p) lowered[e / p] = residue[e];
        trim(lowered);
        residue = std::move(lowered);
        n = m;
        return true;
    }
    // gcd(p, m) == 1: zeta_n = zeta_m^a * zeta_p^b with a*p + b*m == 1 (mod n),
    // and 1, zeta_p, ..., zeta_p^{p-2} is a basis over Q(zeta_m).
    const long a = mod_inverse(p, m);
    const long b = mod_inverse(m, p);
    std::vector<std::vector<T>> parts(p, std::vector<T>(m));
    for (std::size_t e = 0; e < residue.size(); ++e) {
        if (residue[e] == 0) continue;
        const long le = static_cast<long>(e);
        parts[mod_floor(b * le, p)][mod_floor(a * le, m)] += residue[e];
    }
    for (long j = 0; j + 1 < p; ++j) {
        for (long i = 0; i < m; ++i) parts[j][i] -= parts[p - 1][i];
    }
    for (long j = 1; j + 1 < p; ++j) {
        if (!reduce(parts[j], m).empty()) return false;
    }
    residue = reduce(std::move(parts[0]), m);
    n = m;
    return true;
}

template <class T>
void canonicalize(long& n, std::vector<T>& residue) {
    trim(residue);
    bool changed = true;
    while (changed && n > 1) {
        changed = false;
        if (residue.size() <= 1) {
            n = 1;
            break;
        }
        for (long p : prime_factors(n)) {
            if (descend(n, residue, p)) {
                changed = true;
                break;
            }
        }
    }
    if (n == 1) residue.resize(std::min<std::size_t>(residue.size(), 1));
}

Poly embed(const Cyclotomic& x, long target) {
    const long step = target / x.conductor();
    auto r = x.residue();
    if (r.empty()) return {};
    Poly out((r.size() - 1) * step + 1);
    for (std::size_t e = 0; e < r.size(); ++e) out[e * step] = r[e];
    return out;
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] != 0) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Quotient and remainder of a / b over Q; b nonzero and trimmed.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {Poly{}, a};
    Poly q(a.size() - b.size() + 1);
    const Rational lead = b.back();
    for (long i = static_cast<long>(a.size()) - 1; i >= static_cast<long>(b.size()) - 1; --i) {
        if (a[i] == 0) continue;
        Rational c = a[i] / lead;
        const long shift = i - (static_cast<long>(b.size()) - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly subtract(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

Cyclotomic make(long n, Poly residue) { return Cyclotomic::from_powers(n, std::move(residue)); }

enum class Op { Add, Sub, Mul };

Cyclotomic binary(const Cyclotomic& a, const Cyclotomic& b, Op op) {
    if (a.is_rational() && b.is_rational()) {
        Rational x = a.rational_value(), y = b.rational_value();
        switch (op) {
            case Op::Add: return Cyclotomic(Rational(x + y));
            case Op::Sub: return Cyclotomic(Rational(x - y));
            case Op::Mul: return Cyclotomic(Rational(x * y));
        }
    }
    const long n = std::lcm(a.conductor(), b.conductor());
    check_conductor(n);
    Poly pa = embed(a, n), pb = embed(b, n);
    switch (op) {
        case Op::Add: {
            pa.resize(std::max(pa.size(), pb.size()));
            for (std::size_t i = 0; i < pb.size(); ++i) pa[i] += pb[i];
            return make(n, reduce(std::move(pa), n));
        }
        case Op::Sub: return make(n, reduce(subtract(pa, pb), n));
        case Op::Mul: return make(n, reduce(multiply(pa, pb), n));
    }
    return {};
}

}  // namespace

IntegerResidue integer_residue(const Cyclotomic& c) {
    IntegerResidue out;
    out.conductor = c.conductor();
    const auto r = c.residue();
    for (const auto& q : r) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), q.get_den_mpz_t());
    out.num.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0) continue;
        mpz_divexact(out.num[i].get_mpz_t(), out.den.get_mpz_t(), r[i].get_den_mpz_t());
        out.num[i] *= r[i].get_num();
    }
    return out;
}

void ProductAccumulator::widen(long conductor) {
    const long n = std::lcm(conductor_, conductor);
    if (n == conductor_ && !raw_.empty()) return;
    check_conductor(n);
    std::vector<mpz_class> wider(n);
    const long step = n / conductor_;
    for (std::size_t e = 0; e < raw_.size(); ++e) wider[e * step].swap(raw_[e]);
    raw_ = std::move(wider);
    conductor_ = n;
}

mpz_class ProductAccumulator::common_factor(const mpz_class& d) {
    if (d == 1) return den_;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), d.get_mpz_t());
    if (g != d) {
        mpz_class scale;
        mpz_divexact(scale.get_mpz_t(), d.get_mpz_t(), g.get_mpz_t());
        for (auto& x : raw_) {
            if (x != 0) x *= scale;
        }
        den_ *= scale;
    }
    mpz_class f;
    mpz_divexact(f.get_mpz_t(), den_.get_mpz_t(), d.get_mpz_t());
    return f;
}

void ProductAccumulator::add_product(const IntegerResidue& a, const IntegerResidue& b, const Rational& weight) {
    if (a.num.empty() || b.num.empty() || weight == 0) return;
    widen(std::lcm(a.conductor, b.conductor));
    const long n = conductor_;
    const long sa = n / a.conductor, sb = n / b.conductor;
    mpz_class d = a.den * b.den * weight.get_den();
    mpz_class f = common_factor(d);
    f *= weight.get_num();
    mpz_class product;
    for (std::size_t i = 0; i < a.num.size(); ++i) {
        if (a.num[i] == 0) continue;
        mpz_mul(product.get_mpz_t(), a.num[i].get_mpz_t(), f.get_mpz_t());
        for (std::size_t j = 0; j < b.num.size(); ++j) {
            if (b.num[j] == 0) continue;
            mpz_class& slot = raw_[(static_cast<long>(i) * sa + static_cast<long>(j) * sb) % n];
            mpz_addmul(slot.get_mpz_t(), product.get_mpz_t(), b.num[j].get_mpz_t());
        }
    }
}

void ProductAccumulator::add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& weight) {
    if (a.is_zero() || b.is_zero()) return;
    add_product(integer_residue(a), integer_residue(b), weight);
}

void ProductAccumulator::add(const Cyclotomic& a) {
    if (a.is_zero()) return;
    add_product(integer_residue(a), integer_residue(Cyclotomic(1)));
}

Cyclotomic ProductAccumulator::result() {
    if (raw_.empty()) return {};
    // Phi_N is monic with integer coefficients, so reduce the numerators
    // before dividing by the common denominator.
    long n = conductor_;
    check_conductor(n);
    std::vector<mpz_class> reduced = reduce(std::move(raw_), n);
    raw_.clear();
    canonicalize(n, reduced);
    Cyclotomic out;
    out.conductor_ = n;
    out.residue_.resize(reduced.size());
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (reduced[i] == 0) continue;
        out.residue_[i] = Rational(reduced[i], den_);
        out.residue_[i].canonicalize();
    }
    conductor_ = 1;
    den_ = 1;
    return out;
}

long max_conductor() noexcept { return g_max_conductor.load(std::memory_order_relaxed); }

void set_max_conductor(long limit) {
    if (limit < 1) throw std::invalid_argument("conductor limit must be positive");
    g_max_conductor.store(limit, std::memory_order_relaxed);
}

long euler_phi(long n) {
    long result = n;
    for (long p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

const std::vector<long>& cyclotomic_polynomial(long n) {
    static std::mutex mutex;
    static std::map<long, std::vector<long>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    std::vector<long> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        std::vector<long> divisor;
        if (auto it = cache.find(d); it != cache.end()) {
            divisor = it->second;
        } else {
            // Recursion without holding the lock would be cleaner, but
            // divisors are always smaller, so build them in order here.
            std::vector<long> sub(d + 1, 0);
            sub[0] = -1;
            sub[d] = 1;
            for (long e = 1; e < d; ++e) {
                if (d % e != 0) continue;
                const auto& pe = cache.at(e);
                std::vector<long> q(sub.size() - pe.size() + 1, 0);
                for (long i = static_cast<long>(sub.size()) - 1; i >= static_cast<long>(pe.size()) - 1; --i) {
                    long c = sub[i];
                    long s = i - static_cast<long>(pe.size()) + 1;
                    q[s] = c;
                    for (std::size_t j = 0; j < pe.size(); ++j) sub[s + j] -= c * pe[j];
                }
                sub = q;
            }
            cache.emplace(d, sub);
            divisor = sub;
        }
        std::vector<long> q(poly.size() - divisor.size() + 1, 0);
        for (long i = static_cast<long>(poly.size()) - 1; i >= static_cast<long>(divisor.size()) - 1; --i) {
            long c = poly[i];
            long s = i - static_cast<long>(divisor.size()) + 1;
            q[s] = c;
            for (std::size_t j = 0; j < divisor.size(); ++j) poly[s + j] -= c * divisor[j];
        }
        poly = q;
    }
    return cache.emplace(n, poly).first->second;
}

Cyclotomic::Cyclotomic(long value) : Cyclotomic(Rational(value)) {}

Cyclotomic::Cyclotomic(Rational value) {
    value.canonicalize();
    if (value != 0) residue_.push_back(std::move(value));
}

Cyclotomic Cyclotomic::from_powers(long n, std::vector<Rational> residue) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    check_conductor(n);
    Poly p = reduce(std::move(residue), n);
    canonicalize(n, p);
    Cyclotomic out;
    out.conductor_ = n;
    out.residue_ = std::move(p);
    return out;
}

Cyclotomic Cyclotomic::root_of_unity(long order, long exponent) {
    if (order < 1) throw std::invalid_argument("root of unity order must be positive");
    long e = mod_floor(exponent, order);
    if (e == 0) return Cyclotomic(1);
    const long g = std::gcd(e, order);
    order /= g;
    e /= g;
    Poly p(e + 1);
    p[e] = 1;
    return from_powers(order, std::move(p));
}

bool Cyclotomic::is_one() const { return conductor_ == 1 && residue_.size() == 1 && residue_[0] == 1; }

Rational Cyclotomic::rational_value() const { return residue_.empty() ? Rational(0) : residue_[0]; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.residue_) c = -c;
    return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return binary(a, b, Op::Add);
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    if (b.is_zero()) return a;
    return binary(a, b, Op::Sub);
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return binary(a, b, Op::Mul);
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return Cyclotomic(Rational(1 / residue_[0]));
    const auto& phi = cyclotomic_polynomial(conductor_);
    Poly r0(phi.begin(), phi.end()), r1 = residue_;
    Poly s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, rem] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly next = subtract(s0, multiply(q, s1));
        s0 = std::move(s1);
        s1 = std::move(next);
    }
    // Phi_N is irreducible, so the gcd r0 is a nonzero constant.
    Rational c = r0[0];
    for (auto& x : s0) x /= c;
    return make(conductor_, std::move(s0));
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return {};
    return a * b.inverse();
}

Cyclotomic Cyclotomic::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Cyclotomic result(1), base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.residue_ == b.residue_;
}

std::strong_ordering operator<=>(const Cyclotomic& a, const Cyclotomic& b) {
    if (auto c = a.conductor_ <=> b.conductor_; c != 0) return c;
    const std::size_t n = std::max(a.residue_.size(), b.residue_.size());
    for (std::size_t i = 0; i < n; ++i) {
        Rational x = i < a.residue_.size() ? a.residue_[i] : Rational(0);
        Rational y = i < b.residue_.size() ? b.residue_[i] : Rational(0);
        int c = cmp(x, y);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::complex<double> Cyclotomic::to_complex(int digits) const {
    if (digits < 1 || digits > 15) throw std::invalid_argument("to_complex supports 1..15 digits");
    using LD = long double;
    const LD two_pi = 2 * std::numbers::pi_v<LD>;
    LD re = 0, im = 0;
    for (std::size_t e = 0; e < residue_.size(); ++e) {
        if (residue_[e] == 0) continue;
        const LD c = static_cast<LD>(residue_[e].get_d());
        // Exact rational angle e/N keeps each power independent of the others.
        const LD angle = two_pi * static_cast<LD>(e) / static_cast<LD>(conductor_);
        re += c * std::cos(angle);
        im += c * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::string Cyclotomic::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long e = static_cast<long>(residue_.size()) - 1; e >= 0; --e) {
        const Rational& c = residue_[e];
        if (c == 0) continue;
        const bool negative = c < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        Rational magnitude = abs(c);
        if (e == 0) {
            os << magnitude.get_str();
        } else {
            if (magnitude != 1) os << magnitude.get_str() << '*';
            os << 'z' << conductor_ << '^' << e;
        }
    }
    return os.str();
}

Cyclotomic Cyclotomic::parse(std::string_view text) {
    auto poly = detail::parse_polynomial(text);
    if (poly.empty()) return {};
    if (poly.size() != 1 || poly.begin()->first != 0) {
        throw ParseError("expected a field element, found a series in t: '" + std::string(text) + "'");
    }
    return poly.begin()->second;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

std::optional<RootOfUnityMultiple> as_root_of_unity_multiple(const Cyclotomic& c) {
    if (c.is_zero()) return std::nullopt;
    const long n = c.conductor();
    const long m = n % 2 == 0 ? n : 2 * n;
    const Cyclotomic step = Cyclotomic::root_of_unity(m, -1);
    Cyclotomic candidate = c;
    for (long a = 0; a < m; ++a) {
        if (candidate.is_rational()) {
            Rational q = candidate.rational_value();
            long exponent = a;
            if (q < 0) {
                q = -q;
                exponent = (exponent + m / 2) % m;
            }
            const long g = std::gcd(exponent, m);
            return RootOfUnityMultiple{q, exponent == 0 ? 1 : m / g, exponent == 0 ? 0 : exponent / g};
        }
        candidate *= step;
    }
    return std::nullopt;
}

std::optional<Cyclotomic> supported_kth_root(const Cyclotomic& c, long k) {
    if (k < 1) throw std::invalid_argument("root degree must be positive");
    if (c.is_zero()) return Cyclotomic{};
    if (k == 1) return c;
    auto parts = as_root_of_unity_multiple(c);
    if (!parts) return std::nullopt;

    mpz_class num = parts->scale.get_num(), den = parts->scale.get_den();
    mpz_class num_root, den_root;
    if (mpz_root(num_root.get_mpz_t(), num.get_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(den_root.get_mpz_t(), den.get_mpz_t(), k) == 0) return std::nullopt;
    Rational scale_root(num_root, den_root);
    scale_root.canonicalize();

    const long n = c.conductor();
    const long m = n % 2 == 0 ? n : 2 * n;
    const long a = parts->exponent * (m / parts->order);
    const long g = std::gcd(k, m);
    Cyclotomic unit_root;
    if (a % g == 0) {
        const long mg = m / g;
        const long b = mg == 1 ? 0 : mod_floor((a / g) * mod_inverse(k / g, mg), mg);
        unit_root = Cyclotomic::root_of_unity(m, b);
    } else {
        unit_root = Cyclotomic::root_of_unity(k * m, a);
    }
    return Cyclotomic(scale_root) * unit_root;
}

}  // namespace relcone
