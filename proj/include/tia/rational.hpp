#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "tia/errors.hpp"

namespace tia {

// Exact rational arithmetic on 64-bit numerator/denominator, always reduced,
// denominator positive. Intermediate products go through 128 bits; a value
// that does not fit back into 64 bits after reduction throws ResourceError.
// Weight comparisons in the solver must be exact, so there is deliberately no
// conversion from floating point.
class Rational {
  public:
    Rational() = default;
    Rational(long long value) : num_(value), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0)
            throw InputError("rational with zero denominator");
        reduce();
    }

    // Accepts "7", "-3" and "7/2". Anything else is an InputError.
    static Rational parse(const std::string& text) {
        if (text.empty())
            throw InputError("empty rational literal");
        auto slash = text.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                long long v = std::stoll(text, &used);
                if (used != text.size())
                    throw InputError("bad rational literal: " + text);
                return Rational(v);
            }
            long long n = std::stoll(text.substr(0, slash), &used);
            if (used != slash)
                throw InputError("bad rational literal: " + text);
            std::string den_part = text.substr(slash + 1);
            long long d = std::stoll(den_part, &used);
            if (used != den_part.size())
                throw InputError("bad rational literal: " + text);
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw InputError("bad rational literal: " + text);
        } catch (const std::out_of_range&) {
            throw ResourceError("rational literal out of range: " + text);
        }
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_negative() const { return num_ < 0; }
    bool is_zero() const { return num_ == 0; }

    std::string str() const {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  private:
    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0)
            throw InputError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd_wide(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        const __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw ResourceError("rational overflow");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }

    static __int128 gcd_wide(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void reduce() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    long long num_ = 0;
    long long den_ = 1;
};

} // namespace tia
