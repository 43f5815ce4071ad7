#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zperm {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with power-of-two denominator: num / 2^log2_den.
// Canonical form: num is odd, or num == 0 with log2_den == 0. Integers keep
// log2_den == 0 and may have even num. Closed under +, -, * and division by
// powers of two, so transforms built from these stay exact.
class Dyadic {
  public:
    Dyadic() = default;
    Dyadic(long long v) : num_(v) {}  // NOLINT: implicit from integers is intended
    Dyadic(BigInt num, std::uint32_t log2_den) : num_(std::move(num)), den_(log2_den) {
        normalize();
    }

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1); }

    const BigInt& numerator() const { return num_; }
    std::uint32_t log2_denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == 0; }
    int sign() const { return num_.sign(); }

    Dyadic operator-() const {
        Dyadic r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        Dyadic r;
        if (a.den_ == b.den_) {
            r.num_ = a.num_ + b.num_;
            r.den_ = a.den_;
        } else if (a.den_ > b.den_) {
            r.num_ = a.num_ + (b.num_ << (a.den_ - b.den_));
            r.den_ = a.den_;
        } else {
            r.num_ = (a.num_ << (b.den_ - a.den_)) + b.num_;
            r.den_ = b.den_;
        }
        r.normalize();
        return r;
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        Dyadic r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_ + b.den_;
        r.normalize();
        return r;
    }

    Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
    Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
    Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

    // Exact division by 2^k.
    Dyadic div_pow2(std::uint32_t k) const {
        Dyadic r;
        r.num_ = num_;
        r.den_ = den_ + k;
        r.normalize();
        return r;
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }

    friend bool operator<(const Dyadic& a, const Dyadic& b) { return (a - b).sign() < 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const {
        return std::ldexp(num_.convert_to<double>(), -static_cast<int>(den_));
    }

    // "3", "-3/4"; denominator printed in decimal.
    std::string to_string() const;

    // Accepts an optionally signed integer or p/q with q a positive power of
    // two. Throws std::invalid_argument otherwise.
    static Dyadic parse(const std::string& text);

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = 0;
            return;
        }
        if (den_ == 0) return;
        using boost::multiprecision::lsb;
        const BigInt mag = boost::multiprecision::abs(num_);
        std::uint32_t shift = static_cast<std::uint32_t>(lsb(mag));
        if (shift > den_) shift = den_;
        if (shift > 0) {
            num_ >>= shift;
            den_ -= shift;
        }
    }

    BigInt num_ = 0;
    std::uint32_t den_ = 0;
};

// Coefficient table indexed by Z_2^n, length 2^n.
struct DyadicVector {
    int n = 0;
    std::vector<Dyadic> values;

    DyadicVector() = default;
    explicit DyadicVector(int n_) : n(n_), values(std::size_t{1} << n_) {
        if (n < 1 || n > 24) throw std::invalid_argument("DyadicVector: n must be in [1,24]");
    }

    std::size_t size() const { return values.size(); }
    Dyadic& operator[](std::size_t i) { return values[i]; }
    const Dyadic& operator[](std::size_t i) const { return values[i]; }

    friend bool operator==(const DyadicVector&, const DyadicVector&) = default;
};

}  // namespace zperm
