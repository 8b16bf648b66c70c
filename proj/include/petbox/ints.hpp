#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#if defined(PETBOX_BIGINT)
#include <boost/multiprecision/cpp_int.hpp>
#endif

namespace petbox {

class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

class cap_exceeded : public std::runtime_error {
public:
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Exact integer used for all lattice/polynomial arithmetic.  The default
// build stores values in 128 bits and throws overflow_error instead of
// wrapping; configuring with PETBOX_BIGINT swaps in an arbitrary-precision
// backend with the same interface.
class Int {
public:
#if defined(PETBOX_BIGINT)
    using raw_t = boost::multiprecision::cpp_int;
#else
    using raw_t = __int128;
#endif

    Int() : v_(0) {}
    Int(int v) : v_(v) {}
    Int(long v) : v_(v) {}
    Int(long long v) : v_(v) {}
    Int(unsigned v) : v_(v) {}
    Int(unsigned long long v) : v_(static_cast<raw_t>(v)) {}

    friend Int operator+(const Int& a, const Int& b) {
#if defined(PETBOX_BIGINT)
        return Int(raw_t(a.v_ + b.v_));
#else
        Int r;
        if (__builtin_add_overflow(a.v_, b.v_, &r.v_)) throw overflow_error("integer overflow in +");
        return r;
#endif
    }
    friend Int operator-(const Int& a, const Int& b) {
#if defined(PETBOX_BIGINT)
        return Int(raw_t(a.v_ - b.v_));
#else
        Int r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r.v_)) throw overflow_error("integer overflow in -");
        return r;
#endif
    }
    friend Int operator*(const Int& a, const Int& b) {
#if defined(PETBOX_BIGINT)
        return Int(raw_t(a.v_ * b.v_));
#else
        Int r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r.v_)) throw overflow_error("integer overflow in *");
        return r;
#endif
    }
    friend Int operator/(const Int& a, const Int& b) {
        if (b.v_ == 0) throw domain_error("division by zero");
        return Int(raw_t(a.v_ / b.v_));
    }
    friend Int operator%(const Int& a, const Int& b) {
        if (b.v_ == 0) throw domain_error("modulo by zero");
        return Int(raw_t(a.v_ % b.v_));
    }
    Int operator-() const { return Int(0) - *this; }

    Int& operator+=(const Int& o) { *this = *this + o; return *this; }
    Int& operator-=(const Int& o) { *this = *this - o; return *this; }
    Int& operator*=(const Int& o) { *this = *this * o; return *this; }

    friend bool operator==(const Int& a, const Int& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Int& a, const Int& b) { return a.v_ != b.v_; }
    friend bool operator<(const Int& a, const Int& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Int& a, const Int& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Int& a, const Int& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Int& a, const Int& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    long long to_ll() const {
        if (v_ > raw_t(std::numeric_limits<long long>::max()) ||
            v_ < raw_t(std::numeric_limits<long long>::min()))
            throw overflow_error("value does not fit in 64 bits");
        return static_cast<long long>(v_);
    }

    double to_double() const { return static_cast<double>(v_); }

    std::string str() const {
#if defined(PETBOX_BIGINT)
        return v_.str();
#else
        if (v_ == 0) return "0";
        raw_t x = v_;
        bool neg = x < 0;
        std::string s;
        while (x != 0) {
            int digit = static_cast<int>(neg ? -(x % 10) : (x % 10));
            s.push_back(static_cast<char>('0' + digit));
            x /= 10;
        }
        if (neg) s.push_back('-');
        return std::string(s.rbegin(), s.rend());
#endif
    }

    const raw_t& raw() const { return v_; }

private:
#if defined(PETBOX_BIGINT)
    explicit Int(raw_t v) : v_(std::move(v)) {}
#else
    explicit Int(raw_t v) : v_(v) {}
#endif
    raw_t v_;
};

inline Int abs_int(const Int& a) { return a.sign() < 0 ? -a : a; }

// gcd(0, a) = |a|; gcd(0, 0) = 0.
inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (!b.is_zero()) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int pow_int(const Int& base, long long exp) {
    if (exp < 0) throw domain_error("negative exponent");
    Int r = 1;
    for (long long i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Int factorial_int(long long n) {
    if (n < 0) throw domain_error("negative factorial");
    Int r = 1;
    for (long long i = 2; i <= n; ++i) r *= Int(i);
    return r;
}

inline Int binomial_int(long long n, long long k) {
    if (k < 0 || k > n) return Int(0);
    Int r = 1;
    for (long long i = 1; i <= k; ++i) r = r * Int(n - k + i) / Int(i);
    return r;
}

// Exact rational with reduced representation, positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int n) : num_(n), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int n, Int d) : num_(n), den_(d) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_.is_zero()) throw domain_error("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ <= b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    bool is_zero() const { return num_.is_zero(); }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    std::string str() const {
        if (den_ == Int(1)) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    void normalize() {
        if (den_.is_zero()) throw domain_error("zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd_int(num_, den_);
        if (!g.is_zero() && g != Int(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        if (num_.is_zero()) den_ = Int(1);
    }

    Int num_;
    Int den_;
};

}  // namespace petbox
