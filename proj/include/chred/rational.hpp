#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chred {

// Exact rational number: arbitrary-precision numerator over a positive
// denominator, always in lowest terms. No floating point anywhere in the
// core; every comparison and arithmetic operation is exact.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(static_cast<long>(n)) {}           // NOLINT(google-explicit-constructor)
    Rational(long long n) : q_(static_cast<long>(n)) {}      // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(static_cast<long>(n)) {}            // NOLINT(google-explicit-constructor)
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses "p/q" or "p" (decimal integers, optional leading '-').
    static Rational parse(const std::string& s);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    // Smallest integer >= *this, as an exact integer.
    mpz_class ceil() const {
        mpz_class r;
        mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
        return r;
    }
    mpz_class floor() const {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
        return r;
    }

    // Serializes as "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    double to_double() const { return q_.get_d(); }  // display only, never for logic

private:
    mpq_class q_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace chred
