#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace plh {

/// Exact rational scalar backed by GMP. Always in lowest terms with a
/// positive denominator; arithmetic and comparison never round.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}  // NOLINT: implicit on purpose, integer literals abound
    Rat(long num, long den);

    /// Parses "p/q" or "p" with an optional leading minus. Throws ValidationError.
    static Rat parse(const std::string& text);

    /// Lowest-terms rendering, "p/q" or "p" when the denominator is 1.
    std::string str() const { return q_.get_str(); }

    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }

    Rat reciprocal() const;
    Rat abs() const { return sign() < 0 ? Rat(mpq_class(-q_)) : *this; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

    Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
    Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }
    Rat& operator*=(const Rat& b) { q_ *= b.q_; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    // Results of mpq arithmetic on canonical operands are canonical already.
    explicit Rat(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }

}  // namespace plh
