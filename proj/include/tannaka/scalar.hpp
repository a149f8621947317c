#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tannaka {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exact coefficient field: the rationals (p == 0) or a prime field F_p.
struct FieldSpec {
    std::int64_t p = 0;

    bool is_rational() const { return p == 0; }

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static FieldSpec rationals() { return FieldSpec{0}; }

    static FieldSpec prime(std::int64_t p) {
        if (!is_prime(p)) throw std::invalid_argument("FieldSpec: modulus must be prime");
        return FieldSpec{p};
    }

    bool operator==(const FieldSpec&) const = default;
};

namespace detail {

inline std::int64_t mod_reduce(BigInt n, std::int64_t p) {
    BigInt r = n % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    // extended Euclid; a nonzero mod p
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    if (newr < 0) newr += p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("mod_inv: not invertible");
    if (t < 0) t += p;
    return t;
}

} // namespace detail

// One element of the coefficient field.  An element constructed from a bare
// integer has modulus 0 and adopts the modulus of whatever it combines with,
// so generic code can write Scalar(1) without threading the field through.
class Scalar {
public:
    Scalar() = default;

    Scalar(int n) : Scalar(static_cast<std::int64_t>(n)) {}

    Scalar(std::int64_t n) : num_(n) {}

    Scalar(BigRat v, std::int64_t p = 0) : num_(std::move(v)), p_(p) { normalize(); }

    static Scalar in_field(std::int64_t n, const FieldSpec& f) { return Scalar(BigRat(n), f.p); }

    std::int64_t modulus() const { return p_; }

    bool is_zero() const { return num_.is_zero(); }

    bool is_one() const { return num_ == 1; }

    const BigRat& value() const { return num_; }

    Scalar operator-() const { return Scalar(-num_, p_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        std::int64_t p = joint_mod(a, b);
        return Scalar(a.num_ + b.num_, p);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        std::int64_t p = joint_mod(a, b);
        return Scalar(a.num_ - b.num_, p);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        std::int64_t p = joint_mod(a, b);
        return Scalar(a.num_ * b.num_, p);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: division by zero");
        if (p_ == 0) return Scalar(BigRat(1) / num_, 0);
        std::int64_t a = static_cast<std::int64_t>(numerator(num_));
        return Scalar(BigRat(detail::mod_inv(a, p_)), p_);
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        joint_mod(a, b);
        return a.num_ == b.num_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Rationals print as "a/b" in lowest terms ("3", "-1/2"); prime-field
    // elements as the canonical representative "0".."p-1".
    std::string str() const {
        if (denominator(num_) == 1) return numerator(num_).str();
        return numerator(num_).str() + "/" + denominator(num_).str();
    }

    static Scalar parse(const std::string& s, const FieldSpec& f) {
        auto slash = s.find('/');
        BigInt num, den = 1;
        try {
            if (slash == std::string::npos) {
                num = BigInt(s);
            } else {
                num = BigInt(s.substr(0, slash));
                den = BigInt(s.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("Scalar: cannot parse '" + s + "'");
        }
        if (den == 0) throw std::invalid_argument("Scalar: zero denominator in '" + s + "'");
        if (f.is_rational()) return Scalar(BigRat(num, den), 0);
        std::int64_t n = detail::mod_reduce(num, f.p);
        std::int64_t d = detail::mod_reduce(den, f.p);
        if (d == 0) throw std::invalid_argument("Scalar: denominator vanishes mod p in '" + s + "'");
        return Scalar(BigRat(detail::mod_mul(n, detail::mod_inv(d, f.p), f.p)), f.p);
    }

private:
    void normalize() {
        if (p_ == 0) return;
        BigInt n = numerator(num_), d = denominator(num_);
        std::int64_t nn = detail::mod_reduce(n, p_);
        if (d != 1) {
            std::int64_t dd = detail::mod_reduce(d, p_);
            nn = detail::mod_mul(nn, detail::mod_inv(dd, p_), p_);
        }
        num_ = BigRat(nn);
    }

    static std::int64_t joint_mod(const Scalar& a, const Scalar& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0) return a.p_;
        if (a.p_ != b.p_) throw std::logic_error("Scalar: mixed moduli");
        return a.p_;
    }

    BigRat num_;
    std::int64_t p_ = 0;
};

} // namespace tannaka
