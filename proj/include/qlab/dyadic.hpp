#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlab {

using BigInt = boost::multiprecision::cpp_int;

/// Rational of the form num / 2^scale. Canonical form keeps num odd
/// (or num == 0 with scale == 0), so equality is structural.
class DyadicRational {
public:
    DyadicRational() : num_(0), scale_(0) {}
    DyadicRational(long long n) : num_(n), scale_(0) { canonicalize(); }
    DyadicRational(BigInt n, int scale) : num_(std::move(n)), scale_(scale) { canonicalize(); }

    static DyadicRational pow2(int j) { return DyadicRational(BigInt(1), -j); }

    const BigInt& numerator() const { return num_; }
    int scale() const { return scale_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    DyadicRational operator-() const { return DyadicRational(-num_, scale_); }

    DyadicRational operator+(const DyadicRational& o) const {
        int s = std::max(scale_, o.scale_);
        return DyadicRational((num_ << (s - scale_)) + (o.num_ << (s - o.scale_)), s);
    }
    DyadicRational operator-(const DyadicRational& o) const { return *this + (-o); }
    DyadicRational operator*(const DyadicRational& o) const {
        return DyadicRational(num_ * o.num_, scale_ + o.scale_);
    }
    DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
    DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }
    DyadicRational& operator*=(const DyadicRational& o) { return *this = *this * o; }

    /// Multiply by 2^j.
    DyadicRational scaled(int j) const { return DyadicRational(num_, scale_ - j); }

    DyadicRational abs() const { return num_ < 0 ? -*this : *this; }

    bool operator==(const DyadicRational& o) const {
        return num_ == o.num_ && scale_ == o.scale_;
    }
    std::strong_ordering operator<=>(const DyadicRational& o) const {
        int s = std::max(scale_, o.scale_);
        BigInt l = num_ << (s - scale_), r = o.num_ << (s - o.scale_);
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    double to_double() const {
        return std::ldexp(static_cast<double>(num_), -scale_);
    }

    /// Exact decimal string, e.g. -3/8 -> "-0.375".
    std::string to_decimal_string() const {
        BigInt n = num_;
        int k = scale_;
        if (k < 0) { n <<= -k; k = 0; }
        bool neg = n < 0;
        if (neg) n = -n;
        BigInt five = 1;
        for (int i = 0; i < k; ++i) five *= 5;
        std::string digits = BigInt(n * five).str();
        std::string out;
        if (k == 0) {
            out = digits;
        } else {
            if (static_cast<int>(digits.size()) <= k)
                digits.insert(0, k + 1 - digits.size(), '0');
            out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
        }
        return neg ? "-" + out : out;
    }

private:
    void canonicalize() {
        if (num_ == 0) { scale_ = 0; return; }
        while ((num_ & 1) == 0) { num_ >>= 1; --scale_; }
    }

    BigInt num_;
    int scale_;
};

/// Element of the ring Z[1/2, sqrt(2)]: value = a + b*sqrt(2).
struct ExactScalar {
    DyadicRational a, b;

    ExactScalar() = default;
    ExactScalar(DyadicRational a_) : a(std::move(a_)) {}
    ExactScalar(long long n) : a(n) {}
    ExactScalar(DyadicRational a_, DyadicRational b_) : a(std::move(a_)), b(std::move(b_)) {}

    /// Exact 2^{j/2}: for odd j this is 2^{(j-1)/2} * sqrt(2).
    static ExactScalar sqrt_pow2(int j) {
        if (j % 2 == 0) return ExactScalar(DyadicRational::pow2(j / 2));
        return ExactScalar(DyadicRational(), DyadicRational::pow2((j - 1) / 2));
    }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    ExactScalar operator-() const { return {-a, -b}; }
    ExactScalar operator+(const ExactScalar& o) const { return {a + o.a, b + o.b}; }
    ExactScalar operator-(const ExactScalar& o) const { return {a - o.a, b - o.b}; }
    ExactScalar operator*(const ExactScalar& o) const {
        return {a * o.a + (b * o.b).scaled(1), a * o.b + b * o.a};
    }
    ExactScalar& operator+=(const ExactScalar& o) { a += o.a; b += o.b; return *this; }
    ExactScalar& operator-=(const ExactScalar& o) { a -= o.a; b -= o.b; return *this; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    bool operator==(const ExactScalar& o) const { return a == o.a && b == o.b; }

    int sign() const {
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // a and b have opposite signs: sign(a + b*sqrt2) = sign(a^2 - 2 b^2) * sign(a)
        DyadicRational d = a * a - (b * b).scaled(1);
        return d.sign() * sa;
    }

    ExactScalar abs() const { return sign() < 0 ? -*this : *this; }

    /// Square of the value, always of the same form.
    ExactScalar squared() const { return *this * *this; }

    bool operator<(const ExactScalar& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const ExactScalar& o) const { return (*this - o).sign() <= 0; }

    double to_double() const { return a.to_double() + b.to_double() * std::sqrt(2.0); }

    std::string to_string() const {
        if (b.is_zero()) return a.to_decimal_string();
        std::string s = a.is_zero() ? "" : a.to_decimal_string();
        std::string bs = b.to_decimal_string();
        if (!s.empty() && bs[0] != '-') s += "+";
        return s + bs + "*sqrt2";
    }
};

/// Dyadic interval [pos * 2^log_len, (pos+1) * 2^log_len) on the half-line.
struct DyadicInterval {
    long long pos = 0;
    int log_len = 0;

    DyadicRational left() const { return DyadicRational(BigInt(pos), -log_len); }
    DyadicRational right() const { return DyadicRational(BigInt(pos + 1), -log_len); }
    DyadicRational length() const { return DyadicRational::pow2(log_len); }

    bool contains(const DyadicRational& x) const { return left() <= x && x < right(); }
    bool contains(const DyadicInterval& o) const {
        return o.log_len <= log_len && (o.pos >> (log_len - o.log_len)) == pos;
    }
    bool intersects(const DyadicInterval& o) const {
        return contains(o) || o.contains(*this);
    }

    DyadicInterval parent() const { return {pos >> 1, log_len + 1}; }
    DyadicInterval left_child() const { return {pos << 1, log_len - 1}; }
    DyadicInterval right_child() const { return {(pos << 1) | 1, log_len - 1}; }
    DyadicInterval ancestor(int level) const {
        if (level < log_len) throw std::invalid_argument("ancestor: level above interval scale");
        return {pos >> (level - log_len), level};
    }
    DyadicInterval sibling() const { return {pos ^ 1, log_len}; }

    bool operator==(const DyadicInterval&) const = default;
    auto operator<=>(const DyadicInterval&) const = default;
};

}  // namespace qlab
