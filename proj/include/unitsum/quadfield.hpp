#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace unitsum {

/* An element (a + b*sqrt(d))/2 of the ring of integers of Q(sqrt(d)).
 *
 * Elements are stored in halved coordinates for every d.  When d = 1 mod 4
 * this only requires a = b mod 2; otherwise both a and b must be even, which
 * is how the classical integers a' + b'*sqrt(d) appear.  The sign of sqrt(d)
 * is the positive real root. */
class QuadInt {
public:
    QuadInt(std::int64_t d, mpz_class a, mpz_class b);

    static QuadInt integer(std::int64_t d, const mpz_class& n);
    /* x + y*sqrt(d) */
    static QuadInt classical(std::int64_t d, const mpz_class& x, const mpz_class& y);

    std::int64_t d() const noexcept { return d_; }
    const mpz_class& a() const noexcept { return a_; }
    const mpz_class& b() const noexcept { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    QuadInt conjugate() const;
    mpz_class trace() const { return a_; }
    mpz_class norm() const;
    bool is_unit() const;

    /* "a/2+b/2*sqrt(d)" with an explicit sign between the two halves. */
    std::string to_string() const;

    QuadInt& operator+=(const QuadInt& y);
    QuadInt& operator-=(const QuadInt& y);
    QuadInt& operator*=(const QuadInt& y);

    friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
    friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
    friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }
    friend QuadInt operator-(const QuadInt& x);

    friend bool operator==(const QuadInt& x, const QuadInt& y)
    {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    struct Unchecked {};
    QuadInt(Unchecked, std::int64_t d, mpz_class a, mpz_class b)
        : d_(d), a_(std::move(a)), b_(std::move(b))
    {
    }
    void require_same_field(const QuadInt& y) const;

    std::int64_t d_;
    mpz_class a_;
    mpz_class b_;
};

/* Structural order on (d, b, a); only meant for keys of ordered containers. */
struct QuadIntLess {
    bool operator()(const QuadInt& x, const QuadInt& y) const
    {
        if (x.d() != y.d())
            return x.d() < y.d();
        if (int c = cmp(x.b(), y.b()); c != 0)
            return c < 0;
        return cmp(x.a(), y.a()) < 0;
    }
};

enum class ArithOp { add, sub, mul, neg };

/* neg ignores y apart from the field check. */
QuadInt ring_arithmetic(const QuadInt& x, const QuadInt& y, ArithOp op);

struct GaloisImage {
    QuadInt conjugate;
    mpz_class trace;
    mpz_class norm;
};

GaloisImage galois_maps(const QuadInt& x);

bool is_unit(const QuadInt& x);

/* Exact sign of x - q in the real embedding with sqrt(d) > 0.  Integer
 * arithmetic only. */
std::strong_ordering compare_real(const QuadInt& x, const mpq_class& q);
std::strong_ordering compare_real(const QuadInt& x, const QuadInt& y);

/* Sign of the real embedding: -1, 0 or +1. */
int real_sign(const QuadInt& x);

enum class TwoSplitting { inert, split, ramified };

const char* to_string(TwoSplitting s);

/* Dyadic approximation mantissa * 2^exponent of a real number.  The stated
 * error bound is 2^(4 - precision_bits); the computation actually achieves
 * 2^(-precision_bits). */
struct LogApprox {
    mpz_class mantissa;
    long exponent = 0;
    int precision_bits = 0;

    double value() const;
    double error_bound() const;
    std::string to_decimal(int digits) const;
};

class FieldDescriptor {
public:
    std::int64_t d() const noexcept { return d_; }
    const mpz_class& discriminant() const noexcept { return discriminant_; }
    const QuadInt& eta() const noexcept { return eta_; }
    int eta_norm() const noexcept { return eta_norm_; }
    TwoSplitting two_splitting() const noexcept { return two_splitting_; }
    /* log(eta) at 128 bits */
    const LogApprox& log_eta() const noexcept { return log_eta_; }
    double log_eta_value() const { return log_eta_value_; }

    QuadInt integer(const mpz_class& n) const { return QuadInt::integer(d_, n); }

private:
    friend FieldDescriptor make_field(std::int64_t d);
    FieldDescriptor(std::int64_t d, mpz_class disc, QuadInt eta, int eta_norm, TwoSplitting two);

    std::int64_t d_;
    mpz_class discriminant_;
    QuadInt eta_;
    int eta_norm_;
    TwoSplitting two_splitting_;
    LogApprox log_eta_;
    double log_eta_value_;
};

/* Validates d and computes the fundamental unit from the continued fraction
 * of sqrt(d) (d = 2,3 mod 4) or (1 + sqrt(d))/2 (d = 1 mod 4). */
FieldDescriptor make_field(std::int64_t d);

bool is_squarefree(std::int64_t n);

/* The unit sign * eta^m. */
struct UnitExponent {
    int sign = 1;
    std::int64_t m = 0;

    friend auto operator<=>(const UnitExponent&, const UnitExponent&) = default;
};

QuadInt unit_from_exponent(const FieldDescriptor& field, UnitExponent e);
UnitExponent unit_to_exponent(const FieldDescriptor& field, const QuadInt& u);

LogApprox approx_log_eta(const FieldDescriptor& field, int precision_bits);

} // namespace unitsum
