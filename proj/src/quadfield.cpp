#include "unitsum/quadfield.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <mpfr.h>

#include "unitsum/errors.hpp"

namespace unitsum {

namespace {

bool one_mod_four(std::int64_t d) { return ((d % 4) + 4) % 4 == 1; }

bool valid_coordinates(std::int64_t d, const mpz_class& a, const mpz_class& b)
{
    bool a_odd = mpz_odd_p(a.get_mpz_t());
    bool b_odd = mpz_odd_p(b.get_mpz_t());
    if (one_mod_four(d))
        return a_odd == b_odd;
    return !a_odd && !b_odd;
}

struct Mpfr {
    mpfr_t v;
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

} // namespace

QuadInt::QuadInt(std::int64_t d, mpz_class a, mpz_class b)
    : d_(d), a_(std::move(a)), b_(std::move(b))
{
    if (!valid_coordinates(d_, a_, b_))
        throw Error(ErrorCode::InvalidElement,
                    "(" + a_.get_str() + " + " + b_.get_str() + "*sqrt(" + std::to_string(d_) +
                        "))/2 is not an algebraic integer");
}

QuadInt QuadInt::integer(std::int64_t d, const mpz_class& n)
{
    return QuadInt(Unchecked{}, d, 2 * n, 0);
}

QuadInt QuadInt::classical(std::int64_t d, const mpz_class& x, const mpz_class& y)
{
    return QuadInt(Unchecked{}, d, 2 * x, 2 * y);
}

void QuadInt::require_same_field(const QuadInt& y) const
{
    if (d_ != y.d_)
        throw Error(ErrorCode::FieldMismatch,
                    "d=" + std::to_string(d_) + " vs d=" + std::to_string(y.d_));
}

QuadInt QuadInt::conjugate() const { return QuadInt(Unchecked{}, d_, a_, -b_); }

mpz_class QuadInt::norm() const
{
    mpz_class n = a_ * a_ - d_ * (b_ * b_);
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

bool QuadInt::is_unit() const
{
    mpz_class n = norm();
    return n == 1 || n == -1;
}

std::string QuadInt::to_string() const
{
    std::string s = a_.get_str() + "/2";
    if (sgn(b_) < 0)
        s += "-" + mpz_class(-b_).get_str();
    else
        s += "+" + b_.get_str();
    s += "/2*sqrt(" + std::to_string(d_) + ")";
    return s;
}

QuadInt& QuadInt::operator+=(const QuadInt& y)
{
    require_same_field(y);
    a_ += y.a_;
    b_ += y.b_;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& y)
{
    require_same_field(y);
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& y)
{
    require_same_field(y);
    // ((a1 a2 + d b1 b2)/2, (a1 b2 + a2 b1)/2), both exact divisions
    mpz_class a = a_ * y.a_ + d_ * (b_ * y.b_);
    mpz_class b = a_ * y.b_ + y.a_ * b_;
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), 2);
    mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), 2);
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

QuadInt operator-(const QuadInt& x) { return QuadInt(QuadInt::Unchecked{}, x.d_, -x.a_, -x.b_); }

QuadInt ring_arithmetic(const QuadInt& x, const QuadInt& y, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::neg:
        if (x.d() != y.d())
            throw Error(ErrorCode::FieldMismatch,
                        "d=" + std::to_string(x.d()) + " vs d=" + std::to_string(y.d()));
        return -x;
    }
    throw std::logic_error("unknown ArithOp");
}

GaloisImage galois_maps(const QuadInt& x) { return {x.conjugate(), x.trace(), x.norm()}; }

bool is_unit(const QuadInt& x) { return x.is_unit(); }

namespace {

// sign of A + B*sqrt(d)
int sign_of(const mpz_class& A, const mpz_class& B, std::int64_t d)
{
    int sa = sgn(A);
    int sb = sgn(B);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    int c = cmp(A * A, d * (B * B));
    if (c > 0)
        return sa;
    if (c < 0)
        return sb;
    return 0;
}

std::strong_ordering to_ordering(int s)
{
    if (s < 0)
        return std::strong_ordering::less;
    if (s > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering compare_real(const QuadInt& x, const mpq_class& q)
{
    // (a + b sqrt d)/2 - n/m  ~  (a m - 2 n) + (b m) sqrt d, with m > 0
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    mpz_class A = x.a() * den - 2 * num;
    mpz_class B = x.b() * den;
    return to_ordering(sign_of(A, B, x.d()));
}

std::strong_ordering compare_real(const QuadInt& x, const QuadInt& y)
{
    QuadInt diff = x - y;
    return to_ordering(sign_of(diff.a(), diff.b(), diff.d()));
}

int real_sign(const QuadInt& x) { return sign_of(x.a(), x.b(), x.d()); }

const char* to_string(TwoSplitting s)
{
    switch (s) {
    case TwoSplitting::inert: return "inert";
    case TwoSplitting::split: return "split";
    case TwoSplitting::ramified: return "ramified";
    }
    return "unknown";
}

double LogApprox::value() const
{
    long e = 0;
    double m = mpz_get_d_2exp(&e, mantissa.get_mpz_t());
    return std::ldexp(m, static_cast<int>(e + exponent));
}

double LogApprox::error_bound() const { return std::ldexp(1.0, 4 - precision_bits); }

std::string LogApprox::to_decimal(int digits) const
{
    Mpfr x(static_cast<mpfr_prec_t>(mpz_sizeinbase(mantissa.get_mpz_t(), 2) + 8));
    mpfr_set_z(x.v, mantissa.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_2si(x.v, x.v, exponent, MPFR_RNDN);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", digits, x.v);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

bool is_squarefree(std::int64_t n)
{
    if (n < 0)
        n = -n;
    if (n == 0)
        return false;
    for (std::int64_t p = 2; p <= n / p; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return false;
        }
    }
    return true;
}

namespace {

/* Walks the continued fraction of (P0 + sqrt(d))/Q0 and returns the first
 * convergent p/q whose associated element has norm +-1.  That convergent
 * sits at the end of the first period of complete quotients. */
QuadInt fundamental_unit(std::int64_t d)
{
    bool half = one_mod_four(d);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), mpz_class(d).get_mpz_t());

    mpz_class P = half ? 1 : 0;
    mpz_class Q = half ? 2 : 1;
    mpz_class p = 1, p_prev = 0; // p_{-1}, p_{-2}
    mpz_class q = 0, q_prev = 1;
    std::set<std::pair<mpz_class, mpz_class>> seen;
    const mpz_class quarter = (1 - mpz_class(d)) / 4;

    for (;;) {
        if (!seen.emplace(P, Q).second)
            throw std::logic_error("continued fraction period closed without a unit");
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), mpz_class(P + root).get_mpz_t(), Q.get_mpz_t());
        mpz_class p_next = a * p + p_prev;
        mpz_class q_next = a * q + q_prev;
        p_prev = std::move(p);
        p = std::move(p_next);
        q_prev = std::move(q);
        q = std::move(q_next);

        mpz_class n = half ? mpz_class(p * p - p * q + quarter * q * q) : mpz_class(p * p - d * (q * q));
        if (n == 1 || n == -1)
            return half ? QuadInt(d, 2 * p - q, q) : QuadInt::classical(d, p, q);

        P = a * Q - P;
        mpz_class next_q = (d - P * P);
        mpz_divexact(next_q.get_mpz_t(), next_q.get_mpz_t(), Q.get_mpz_t());
        Q = std::move(next_q);
    }
}

LogApprox log_of_unit(const QuadInt& eta, int precision_bits)
{
    std::size_t magnitude = mpz_sizeinbase(eta.a().get_mpz_t(), 2) + 2;
    std::size_t log_bits = 1;
    while ((std::size_t{1} << log_bits) < magnitude)
        ++log_bits;
    auto work = static_cast<mpfr_prec_t>(precision_bits + 24 + log_bits);

    Mpfr x(work);
    Mpfr y(work);
    mpfr_set_si(x.v, eta.d(), MPFR_RNDN);
    mpfr_sqrt(x.v, x.v, MPFR_RNDN);
    mpfr_mul_z(x.v, x.v, eta.b().get_mpz_t(), MPFR_RNDN);
    mpfr_add_z(x.v, x.v, eta.a().get_mpz_t(), MPFR_RNDN);
    mpfr_div_2ui(x.v, x.v, 1, MPFR_RNDN);
    mpfr_log(y.v, x.v, MPFR_RNDN);
    mpfr_mul_2si(y.v, y.v, precision_bits + 2, MPFR_RNDN);

    LogApprox out;
    mpfr_get_z(out.mantissa.get_mpz_t(), y.v, MPFR_RNDN);
    out.exponent = -(precision_bits + 2);
    out.precision_bits = precision_bits;
    return out;
}

} // namespace

FieldDescriptor::FieldDescriptor(std::int64_t d, mpz_class disc, QuadInt eta, int eta_norm,
                                 TwoSplitting two)
    : d_(d), discriminant_(std::move(disc)), eta_(std::move(eta)), eta_norm_(eta_norm),
      two_splitting_(two), log_eta_(log_of_unit(eta_, 128)), log_eta_value_(log_eta_.value())
{
}

FieldDescriptor make_field(std::int64_t d)
{
    if (d < 2)
        throw Error(ErrorCode::NotRealQuadratic, "d=" + std::to_string(d) + " must be at least 2");
    if (!is_squarefree(d))
        throw Error(ErrorCode::NotSquarefree, "d=" + std::to_string(d));

    mpz_class disc = one_mod_four(d) ? mpz_class(d) : mpz_class(4 * mpz_class(d));
    TwoSplitting two = TwoSplitting::ramified;
    if (d % 8 == 5)
        two = TwoSplitting::inert;
    else if (d % 8 == 1)
        two = TwoSplitting::split;

    QuadInt eta = fundamental_unit(d);
    int eta_norm = eta.norm() == 1 ? 1 : -1;
    return FieldDescriptor(d, std::move(disc), std::move(eta), eta_norm, two);
}

namespace {

QuadInt power(QuadInt base, std::int64_t e)
{
    QuadInt result = QuadInt::integer(base.d(), 1);
    while (e > 0) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e > 0)
            base *= base;
    }
    return result;
}

// eta^{-1} = N(eta) * eta'
QuadInt inverse_eta(const FieldDescriptor& field)
{
    QuadInt inv = field.eta().conjugate();
    if (field.eta_norm() < 0)
        inv = -inv;
    return inv;
}

} // namespace

QuadInt unit_from_exponent(const FieldDescriptor& field, UnitExponent e)
{
    if (e.sign != 1 && e.sign != -1)
        throw Error(ErrorCode::InvalidArgument, "unit sign must be +1 or -1");
    QuadInt u = e.m >= 0 ? power(field.eta(), e.m) : power(inverse_eta(field), -e.m);
    return e.sign < 0 ? -u : u;
}

UnitExponent unit_to_exponent(const FieldDescriptor& field, const QuadInt& u)
{
    if (u.d() != field.d())
        throw Error(ErrorCode::FieldMismatch,
                    "d=" + std::to_string(u.d()) + " vs d=" + std::to_string(field.d()));
    if (!u.is_unit())
        throw Error(ErrorCode::NotAUnit, u.to_string());

    int sign = real_sign(u);
    QuadInt w = sign < 0 ? -u : u;
    bool inverted = false;
    if (compare_real(w, mpq_class(1)) < 0) {
        // w^{-1} = N(w) * w'
        QuadInt inv = w.conjugate();
        if (w.norm() < 0)
            inv = -inv;
        w = std::move(inv);
        inverted = true;
    }

    // w >= 1, so w is within 1 of b*sqrt(d)
    std::int64_t estimate = 0;
    if (sgn(w.b()) != 0) {
        long e = 0;
        double m = mpz_get_d_2exp(&e, w.b().get_mpz_t());
        double log_w = std::log(m) + static_cast<double>(e) * std::log(2.0) +
                       0.5 * std::log(static_cast<double>(field.d()));
        estimate = std::max<std::int64_t>(0, std::llround(log_w / field.log_eta_value()));
    }
    std::int64_t lo = std::max<std::int64_t>(0, estimate - 2);
    QuadInt candidate = power(field.eta(), lo);
    for (std::int64_t m = lo; m <= estimate + 64; ++m) {
        if (candidate == w)
            return {sign, inverted ? -m : m};
        candidate *= field.eta();
    }
    throw std::logic_error("unit_to_exponent: exponent search failed for " + u.to_string());
}

LogApprox approx_log_eta(const FieldDescriptor& field, int precision_bits)
{
    if (precision_bits < 32)
        throw Error(ErrorCode::InvalidArgument, "precision_bits must be at least 32");
    return log_of_unit(field.eta(), precision_bits);
}

} // namespace unitsum
