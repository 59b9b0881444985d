#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracle.hpp"
#include "unitsum/errors.hpp"
#include "unitsum/quadfield.hpp"

using namespace unitsum;
using big_float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;

namespace {

big_float real(const QuadInt& x)
{
    big_float a(x.a().get_str()), b(x.b().get_str());
    return (a + b * boost::multiprecision::sqrt(big_float(x.d()))) / 2;
}

} // namespace

TEST_CASE("fundamental unit agrees with the brute-force minimal unit for d <= 50")
{
    for (std::int64_t d = 2; d <= 50; ++d) {
        if (!oracle::squarefree(d))
            continue;
        CAPTURE(d);
        FieldDescriptor F = make_field(d);
        oracle::Half m = oracle::minimal_unit(d);
        CHECK(oracle::from(F.eta()) == m);
        CHECK(F.eta_norm() == static_cast<int>(oracle::norm4(d, m) / 4));
    }
}

TEST_CASE("fundamental units of small fields")
{
    struct Row { std::int64_t d; long x, y; bool half; };
    // 1+sqrt2, 2+sqrt3, (1+sqrt5)/2, 5+2sqrt6, 8+3sqrt7, 3+sqrt10, 10+3sqrt11, (3+sqrt13)/2
    const Row rows[] = {{2, 1, 1, false}, {3, 2, 1, false}, {5, 1, 1, true},  {6, 5, 2, false},
                        {7, 8, 3, false}, {10, 3, 1, false}, {11, 10, 3, false}, {13, 3, 1, true}};
    for (const Row& r : rows) {
        CAPTURE(r.d);
        QuadInt expect = r.half ? QuadInt(r.d, r.x, r.y) : QuadInt::classical(r.d, r.x, r.y);
        CHECK(make_field(r.d).eta() == expect);
    }
}

TEST_CASE("large fundamental units")
{
    // d = 94: 2143295 + 221064 sqrt(94)
    CHECK(make_field(94).eta() == QuadInt::classical(94, 2143295, 221064));
    // d = 61: (39 + 5 sqrt(61))/2
    CHECK(make_field(61).eta() == QuadInt(61, 39, 5));
}

TEST_CASE("field validation")
{
    CHECK_THROWS_AS(make_field(1), Error);
    CHECK_THROWS_AS(make_field(0), Error);
    CHECK_THROWS_AS(make_field(-5), Error);
    try {
        make_field(12);
        FAIL("expected NotSquarefree");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSquarefree);
    }
    try {
        make_field(1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotRealQuadratic);
    }
}

TEST_CASE("element validation and field mismatch")
{
    CHECK_THROWS_AS(QuadInt(2, 1, 1), Error);
    CHECK_NOTHROW(QuadInt(5, 1, 1));
    CHECK_THROWS_AS(QuadInt(5, 1, 2), Error);
    try {
        QuadInt(3, 1, 0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidElement);
    }
    try {
        (void)(QuadInt(2, 2, 2) + QuadInt(3, 2, 2));
        FAIL("expected FieldMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FieldMismatch);
    }
}

TEST_CASE("ring operations against 128-bit arithmetic")
{
    std::mt19937_64 rng(7);
    for (std::int64_t d : {2, 3, 5, 13, 17}) {
        std::uniform_int_distribution<long> coord(-500, 500);
        for (int i = 0; i < 500; ++i) {
            long a1 = coord(rng), b1 = coord(rng), a2 = coord(rng), b2 = coord(rng);
            if (d % 4 != 1) {
                a1 *= 2; b1 *= 2; a2 *= 2; b2 *= 2;
            } else {
                if ((a1 - b1) % 2) ++a1;
                if ((a2 - b2) % 2) ++a2;
            }
            QuadInt x(d, a1, b1), y(d, a2, b2);
            oracle::Half hx{a1, b1}, hy{a2, b2};
            CHECK(oracle::from(x * y) == oracle::mul(d, hx, hy));
            CHECK(oracle::from(ring_arithmetic(x, y, ArithOp::add)) == oracle::Half{a1 + a2, b1 + b2});
            CHECK(oracle::from(ring_arithmetic(x, y, ArithOp::sub)) == oracle::Half{a1 - a2, b1 - b2});
            CHECK(oracle::from(ring_arithmetic(x, y, ArithOp::neg)) == oracle::Half{-a1, -b1});
            GaloisImage g = galois_maps(x);
            CHECK(g.trace == a1);
            CHECK(g.norm * 4 == mpz_class(static_cast<long>(oracle::norm4(d, hx))));
            CHECK(g.conjugate == QuadInt(d, a1, -b1));
            CHECK((x * y).norm() == x.norm() * y.norm());
        }
    }
}

TEST_CASE("exact comparison agrees with 256-bit floating evaluation")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coord(-1'000'000'000L, 1'000'000'000L);
    const std::int64_t ds[] = {2, 3, 5, 6, 7, 13, 21, 101};
    int decided = 0;
    for (int i = 0; i < 10000; ++i) {
        std::int64_t d = ds[i % 8];
        long a = coord(rng), b = coord(rng);
        if (d % 4 != 1) {
            a *= 2;
            b *= 2;
        } else if ((a - b) % 2) {
            ++a;
        }
        QuadInt x(d, a, b);
        long num = coord(rng), den = 1 + (coord(rng) & 0xffff);
        mpq_class q(num, den);
        q.canonicalize();
        big_float diff = real(x) - big_float(q.get_num().get_str()) / big_float(q.get_den().get_str());
        auto c = compare_real(x, q);
        if (abs(diff) > big_float("1e-60")) {
            ++decided;
            CHECK((diff > 0) == (c > 0));
        }
        // y close to x: shares a or b
        QuadInt y(d, a + (d % 4 == 1 ? 0 : 2) * (i % 3 - 1), b + (i % 2 ? 0 : (d % 4 == 1 ? 0 : 2)));
        big_float dxy = real(x) - real(y);
        auto cxy = compare_real(x, y);
        if (dxy == 0)
            CHECK(cxy == 0);
        else
            CHECK((dxy > 0) == (cxy > 0));
    }
    CHECK(decided > 9000);
}

TEST_CASE("comparison near the boundary")
{
    // eta^20 = t_20 - eta'^20 with 0 < eta'^20 < 1e-7 for d = 2
    FieldDescriptor F = make_field(2);
    QuadInt e20 = unit_from_exponent(F, {1, 20});
    CHECK(compare_real(e20, mpq_class(e20.a())) < 0);
    CHECK(compare_real(e20, mpq_class(e20.a() * 10000000 - 1, 10000000)) > 0);
    CHECK(real_sign(F.integer(0)) == 0);
    CHECK(real_sign(QuadInt::classical(2, -1, 1)) == 1);
    CHECK(real_sign(QuadInt::classical(2, 1, -1)) == -1);
}

TEST_CASE("log eta against an independent 256-bit evaluation")
{
    for (std::int64_t d : {2, 3, 5, 6, 7, 10, 11, 13, 94}) {
        CAPTURE(d);
        FieldDescriptor F = make_field(d);
        big_float expect = boost::multiprecision::log(real(F.eta()));
        for (int bits : {32, 64, 128, 200}) {
            LogApprox l = approx_log_eta(F, bits);
            big_float got = big_float(l.mantissa.get_str()) * boost::multiprecision::ldexp(big_float(1), l.exponent);
            CHECK(abs(got - expect) <= boost::multiprecision::ldexp(big_float(1), 4 - bits));
        }
        CHECK(F.log_eta_value() == doctest::Approx(static_cast<double>(expect)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(approx_log_eta(make_field(2), 31), Error);
}

TEST_CASE("unit exponents round trip")
{
    for (std::int64_t d : {2, 5, 7, 13}) {
        FieldDescriptor F = make_field(d);
        for (int m = -30; m <= 30; ++m)
            for (int s : {-1, 1}) {
                QuadInt u = unit_from_exponent(F, {s, m});
                CHECK(u.is_unit());
                CHECK(unit_to_exponent(F, u) == UnitExponent{s, m});
            }
        CHECK_THROWS_AS(unit_to_exponent(F, F.integer(2)), Error);
    }
}

TEST_CASE("eta^-1 is N(eta) eta'")
{
    for (std::int64_t d : {2, 3, 5, 6, 13}) {
        FieldDescriptor F = make_field(d);
        QuadInt inv = unit_from_exponent(F, {1, -1});
        CHECK(inv * F.eta() == F.integer(1));
        CHECK(inv == F.integer(F.eta_norm()) * F.eta().conjugate());
    }
}

TEST_CASE("splitting of 2 follows d mod 8")
{
    for (std::int64_t d = 2; d < 200; ++d) {
        if (!oracle::squarefree(d))
            continue;
        TwoSplitting s = make_field(d).two_splitting();
        if (d % 8 == 5)
            CHECK(s == TwoSplitting::inert);
        else if (d % 8 == 1)
            CHECK(s == TwoSplitting::split);
        else
            CHECK(s == TwoSplitting::ramified);
    }
}

TEST_CASE("string form")
{
    CHECK(QuadInt(5, 1, 1).to_string() == "1/2+1/2*sqrt(5)");
    CHECK(QuadInt(5, 3, -1).to_string() == "3/2-1/2*sqrt(5)");
    CHECK(make_field(2).integer(-1).to_string() == "-2/2+0/2*sqrt(2)");
}
