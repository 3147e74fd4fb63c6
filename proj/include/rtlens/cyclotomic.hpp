#pragma once

#include <complex>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rtlens/errors.hpp"
#include "rtlens/numeric.hpp"

namespace rtlens {

/// Coefficients of the n-th cyclotomic polynomial, low degree first, monic.
/// Built by dividing x^n - 1 by the cyclotomic polynomials of the proper
/// divisors of n (exact integer division, the divisor chain is monic).
inline std::vector<BigInt> cyclotomic_polynomial(long n) {
    if (n < 1) throw Error("cyclotomic_polynomial: order must be positive");
    // phi[d] accumulated for divisors in increasing order
    std::vector<BigInt> acc; // running product of Phi_d over proper divisors d
    acc = {BigInt(1)};
    auto mul = [](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
        std::vector<BigInt> c(a.size() + b.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    // exact division of a monic-divisor polynomial: returns quotient
    auto divide = [](std::vector<BigInt> num, const std::vector<BigInt>& den) {
        std::size_t dn = num.size() - 1, dd = den.size() - 1;
        std::vector<BigInt> q(dn - dd + 1, BigInt(0));
        for (std::size_t i = dn + 1; i-- > dd;) {
            BigInt c = num[i]; // den is monic
            q[i - dd] = c;
            if (c != 0)
                for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        for (const auto& r : num)
            if (r != 0) throw Error("cyclotomic_polynomial: non-exact division");
        return q;
    };
    std::vector<std::pair<long, std::vector<BigInt>>> cache;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        std::vector<BigInt> xd1(static_cast<std::size_t>(d) + 1, BigInt(0));
        xd1[0] = -1;
        xd1[static_cast<std::size_t>(d)] = 1;
        std::vector<BigInt> prod = {BigInt(1)};
        for (auto& [dd, poly] : cache)
            if (d % dd == 0) prod = mul(prod, poly);
        auto phi_d = divide(std::move(xd1), prod);
        if (d == n) return phi_d;
        cache.emplace_back(d, std::move(phi_d));
    }
    throw Error("cyclotomic_polynomial: unreachable");
}

/// Selects the numeric embedding q -> exp(2*pi*i*c/N); requires gcd(c, N) = 1.
struct RootOfUnitySpec {
    long order;
    long embedding_index = 1;

    RootOfUnitySpec(long n, long c = 1) : order(n), embedding_index(c) {
        if (gcd_ll(c, n) != 1)
            throw InvalidAutomorphismError("embedding index " + std::to_string(c) +
                                           " not coprime to order " + std::to_string(n));
    }
};

/// An exact element of Q(zeta_N), N odd, stored as a length-N numerator
/// vector over a common positive denominator: (1/den) * sum_j num[j] q^j.
/// Arithmetic keeps the raw length-N vector (multiplication is cyclic
/// convolution); equality and serialization reduce modulo Phi_N, which is
/// the canonical form.
class Cyclotomic {
public:
    explicit Cyclotomic(long order) : order_(check_order(order)), num_(order, BigInt(0)), den_(1) {}

    static Cyclotomic zero(long order) { return Cyclotomic(order); }

    static Cyclotomic one(long order) { return from_integer(order, 1); }

    /// q^e with the exponent reduced mod N.
    static Cyclotomic root_power(long order, long long e) {
        Cyclotomic x(order);
        x.num_[static_cast<std::size_t>(mod_floor(e, order))] = 1;
        return x;
    }

    static Cyclotomic from_integer(long order, const BigInt& v) {
        Cyclotomic x(order);
        x.num_[0] = v;
        return x;
    }

    static Cyclotomic from_integer(long order, long long v) { return from_integer(order, to_big(v)); }

    static Cyclotomic from_rational(long order, const Rational& v) {
        Rational c = v;
        c.canonicalize();
        Cyclotomic x(order);
        x.num_[0] = c.get_num();
        x.den_ = c.get_den();
        return x;
    }

    long order() const { return order_; }
    const std::vector<BigInt>& numerators() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const {
        Cyclotomic c = canonical();
        for (const auto& v : c.num_)
            if (v != 0) return false;
        return true;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        check_same_order(o);
        if (den_ == o.den_) {
            for (long j = 0; j < order_; ++j) num_[j] += o.num_[j];
        } else {
            BigInt g = gcd(den_, o.den_);
            BigInt ma = o.den_ / g, mb = den_ / g;
            for (long j = 0; j < order_; ++j) num_[j] = num_[j] * ma + o.num_[j] * mb;
            den_ *= ma;
            normalize_content();
        }
        return *this;
    }

    Cyclotomic& operator-=(const Cyclotomic& o) {
        check_same_order(o);
        if (den_ == o.den_) {
            for (long j = 0; j < order_; ++j) num_[j] -= o.num_[j];
        } else {
            BigInt g = gcd(den_, o.den_);
            BigInt ma = o.den_ / g, mb = den_ / g;
            for (long j = 0; j < order_; ++j) num_[j] = num_[j] * ma - o.num_[j] * mb;
            den_ *= ma;
            normalize_content();
        }
        return *this;
    }

    Cyclotomic operator+(const Cyclotomic& o) const {
        Cyclotomic r = *this;
        r += o;
        return r;
    }
    Cyclotomic operator-(const Cyclotomic& o) const {
        Cyclotomic r = *this;
        r -= o;
        return r;
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& v : r.num_) v = -v;
        return r;
    }

    Cyclotomic operator*(const Cyclotomic& o) const {
        check_same_order(o);
        Cyclotomic r(order_);
        for (long i = 0; i < order_; ++i) {
            if (num_[i] == 0) continue;
            for (long j = 0; j < order_; ++j) {
                if (o.num_[j] == 0) continue;
                long k = i + j;
                if (k >= order_) k -= order_;
                r.num_[k] += num_[i] * o.num_[j];
            }
        }
        r.den_ = den_ * o.den_;
        if (r.den_ != 1) r.normalize_content();
        return r;
    }

    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic& scale(const Rational& s) {
        Rational c = s;
        c.canonicalize();
        for (auto& v : num_) v *= c.get_num();
        den_ *= c.get_den();
        if (den_ != 1) normalize_content();
        return *this;
    }

    /// In-place multiplication by q^e.
    void rotate(long long e) {
        long s = static_cast<long>(mod_floor(e, order_));
        if (s == 0) return;
        std::vector<BigInt> out(order_);
        for (long j = 0; j < order_; ++j) out[(j + s) % order_] = std::move(num_[j]);
        num_ = std::move(out);
    }

    Cyclotomic rotated(long long e) const {
        Cyclotomic r = *this;
        r.rotate(e);
        return r;
    }

    /// *this += q^e * src.  Fast path used by the table engines; requires
    /// matching denominators (always 1 there), falls back to general add.
    void add_rotated(const Cyclotomic& src, long long e) {
        check_same_order(src);
        if (den_ == src.den_) {
            long s = static_cast<long>(mod_floor(e, order_));
            for (long j = 0; j < order_; ++j) {
                long k = j + s;
                if (k >= order_) k -= order_;
                num_[k] += src.num_[j];
            }
        } else {
            *this += src.rotated(e);
        }
    }

    void sub_rotated(const Cyclotomic& src, long long e) {
        check_same_order(src);
        if (den_ == src.den_) {
            long s = static_cast<long>(mod_floor(e, order_));
            for (long j = 0; j < order_; ++j) {
                long k = j + s;
                if (k >= order_) k -= order_;
                num_[k] -= src.num_[j];
            }
        } else {
            *this -= src.rotated(e);
        }
    }

    /// Ring automorphism q -> q^k; requires gcd(k, N) = 1.  Applied on the
    /// raw vector (coefficient of q^j moves to q^(jk)), which commutes with
    /// canonical reduction.
    Cyclotomic galois(long long k) const {
        long kk = static_cast<long>(mod_floor(k, order_));
        if (gcd_ll(kk, order_) != 1)
            throw InvalidAutomorphismError("galois exponent " + std::to_string(k) +
                                           " not coprime to order " + std::to_string(order_));
        Cyclotomic r(order_);
        r.den_ = den_;
        for (long j = 0; j < order_; ++j) r.num_[(j * kk) % order_] += num_[j];
        return r;
    }

    Cyclotomic conj() const { return galois(order_ - 1); }

    bool is_real() const { return conj() == *this; }

    /// Exact field inverse via the extended Euclidean algorithm against
    /// Phi_N over Q (Phi_N is irreducible, so every nonzero element is a unit).
    Cyclotomic inverse() const {
        using Poly = std::vector<Rational>;
        auto deg = [](const Poly& p) {
            for (std::size_t i = p.size(); i-- > 0;)
                if (p[i] != 0) return static_cast<long>(i);
            return -1L;
        };
        auto trim = [&](Poly& p) { p.resize(static_cast<std::size_t>(deg(p) + 1)); };

        Cyclotomic c = canonical();
        auto phi = cyclotomic_polynomial(order_);
        Poly f(static_cast<std::size_t>(order_));
        for (long j = 0; j < order_; ++j) f[j] = Rational(c.num_[j], c.den_);
        trim(f);
        if (f.empty()) throw DivisionByZeroError("inverse of zero cyclotomic number");

        Poly r0(phi.size()), r1 = f;
        for (std::size_t j = 0; j < phi.size(); ++j) r0[j] = Rational(phi[j]);
        Poly t0, t1 = {Rational(1)}; // Bezout coefficients of f
        while (deg(r1) >= 0) {
            long d1 = deg(r1);
            Rational lead = r1[static_cast<std::size_t>(d1)];
            Poly rem = r0;
            Poly q(static_cast<std::size_t>(std::max(0L, deg(r0) - d1) + 1));
            for (long i = deg(rem); i >= d1; --i) {
                Rational coef = rem[static_cast<std::size_t>(i)] / lead;
                if (coef == 0) continue;
                q[static_cast<std::size_t>(i - d1)] = coef;
                for (long j = 0; j <= d1; ++j)
                    rem[static_cast<std::size_t>(i - d1 + j)] -= coef * r1[static_cast<std::size_t>(j)];
            }
            trim(rem);
            Poly t2 = t0;
            t2.resize(std::max(t2.size(), q.size() + t1.size()), Rational(0));
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (std::size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
            }
            trim(t2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r0 holds gcd(f, Phi_N), a nonzero constant; t0 * f = r0 mod Phi_N.
        if (deg(r0) != 0)
            throw Error("cyclotomic inverse: gcd with Phi_N not constant");
        Rational scale = Rational(1) / r0[0];
        Cyclotomic out(order_);
        BigInt den(1);
        std::vector<Rational> coef(t0.size());
        for (std::size_t j = 0; j < t0.size(); ++j) {
            coef[j] = t0[j] * scale;
            coef[j].canonicalize();
            den = lcm(den, BigInt(coef[j].get_den()));
        }
        for (std::size_t j = 0; j < coef.size(); ++j)
            out.num_[j] = coef[j].get_num() * (den / coef[j].get_den());
        out.den_ = den;
        out.normalize_content();
        return out;
    }

    Cyclotomic pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic r = one(order_), b = *this;
        while (e > 0) {
            if (e & 1) r = (r * b).canonical();
            b = (b * b).canonical();
            e >>= 1;
        }
        return r;
    }

    /// Canonical form: reduced mod Phi_N (degree < phi(N)), content-free,
    /// positive denominator.  Unique per field element.
    Cyclotomic canonical() const {
        Cyclotomic r = *this;
        auto phi = cyclotomic_polynomial(order_);
        std::size_t d = phi.size() - 1; // = phi(N)
        for (std::size_t i = static_cast<std::size_t>(order_); i-- > d;) {
            if (r.num_[i] == 0) continue;
            BigInt c = std::move(r.num_[i]);
            r.num_[i] = 0;
            for (std::size_t j = 0; j < d; ++j) r.num_[i - d + j] -= c * phi[j];
        }
        r.normalize_content();
        return r;
    }

    bool operator==(const Cyclotomic& o) const {
        if (order_ != o.order_) return false;
        Cyclotomic a = canonical(), b = o.canonical();
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    /// Canonical coefficients as rationals, length N (entries of degree
    /// >= phi(N) are zero).
    std::vector<Rational> canonical_coeffs() const {
        Cyclotomic c = canonical();
        std::vector<Rational> out(static_cast<std::size_t>(order_));
        for (long j = 0; j < order_; ++j) {
            out[j] = Rational(c.num_[j], c.den_);
            out[j].canonicalize();
        }
        return out;
    }

    /// Numeric embedding at q = exp(2*pi*i*c/N).
    std::complex<double> embed(const RootOfUnitySpec& spec) const {
        if (spec.order != order_)
            throw OrderMismatchError("embedding spec order " + std::to_string(spec.order) +
                                     " != value order " + std::to_string(order_));
        Cyclotomic c = canonical();
        double den = c.den_.get_d();
        std::complex<double> acc(0, 0);
        const double tau = 6.283185307179586476925286766559;
        for (long j = 0; j < order_; ++j) {
            if (c.num_[j] == 0) continue;
            double ang = tau * spec.embedding_index * j / order_;
            acc += (c.num_[j].get_d() / den) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

    std::complex<double> embed(long embedding_index = 1) const {
        return embed(RootOfUnitySpec(order_, embedding_index));
    }

    std::string to_string() const {
        Cyclotomic c = canonical();
        std::ostringstream os;
        bool first = true;
        for (long j = 0; j < order_; ++j) {
            if (c.num_[j] == 0) continue;
            Rational r(c.num_[j], c.den_);
            r.canonicalize();
            if (!first) os << " + ";
            os << rational_to_string(r);
            if (j > 0) os << "*q^" << j;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    long order_;
    std::vector<BigInt> num_;
    BigInt den_;

    static long check_order(long n) {
        if (n < 3 || n % 2 == 0)
            throw InvalidOrderError("cyclotomic order must be odd and >= 3, got " + std::to_string(n));
        return n;
    }

    void check_same_order(const Cyclotomic& o) const {
        if (order_ != o.order_)
            throw OrderMismatchError("cyclotomic orders differ: " + std::to_string(order_) + " vs " +
                                     std::to_string(o.order_));
    }

    void normalize_content() {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& v : num_) v = -v;
        }
        bool any = false;
        BigInt g = den_;
        for (const auto& v : num_) {
            if (v != 0) {
                any = true;
                if (g != 1) g = gcd(g, v);
            }
        }
        if (!any) {
            den_ = 1;
            return;
        }
        if (g > 1) {
            for (auto& v : num_) v /= g;
            den_ /= g;
        }
    }
};

inline Cyclotomic q_power(long order, long long e) { return Cyclotomic::root_power(order, e); }

} // namespace rtlens
