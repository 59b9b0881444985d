#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "oracle.hpp"
#include "unitsum/errors.hpp"
#include "unitsum/sums_of_units.hpp"
#include "unitsum/trace_sums.hpp"

using namespace unitsum;

namespace {

std::vector<std::int64_t> oracle_values(std::int64_t d, int k, std::int64_t X, Mode mode, int M)
{
    FieldDescriptor F = make_field(d);
    auto us = oracle::units(d, oracle::from(F.eta()), M);
    std::set<std::int64_t> out;
    if (mode == Mode::exactly) {
        out = oracle::exactly_k_values(us, k, X);
    } else {
        for (int j = 0; j <= k; ++j)
            for (auto n : oracle::exactly_k_values(us, j, X))
                out.insert(n);
    }
    return {out.begin(), out.end()};
}

int oracle_height(std::int64_t d, std::int64_t kX)
{
    // generous: the oracle explores well past the library's starting bound
    double L = make_field(d).log_eta_value();
    return static_cast<int>(std::ceil(std::log(static_cast<double>(kX)) / L)) + 4;
}

UnitTuple random_tuple(const FieldDescriptor& F, std::mt19937_64& rng, int len, int M)
{
    std::uniform_int_distribution<int> m(-M, M), s(0, 1);
    UnitTuple t;
    for (int i = 0; i < len; ++i)
        t.push_back(unit_from_exponent(F, {s(rng) ? 1 : -1, m(rng)}));
    return t;
}

} // namespace

TEST_CASE("value sets match the brute-force oracle")
{
    for (std::int64_t d : {2, 3, 5, 7}) {
        for (int k : {1, 2, 3}) {
            for (std::int64_t X : {10, 60}) {
                for (Mode mode : {Mode::exactly, Mode::at_most}) {
                    CAPTURE(d);
                    CAPTURE(k);
                    CAPTURE(X);
                    CAPTURE(to_string(mode));
                    ValueSetResult v = value_set(make_field(d), k, X, mode, BoundConfig{});
                    CHECK(v.cert.stable);
                    CHECK(v.values == oracle_values(d, k, X, mode, oracle_height(d, k * X)));
                }
            }
        }
    }
}

TEST_CASE("k = 4 value set matches the brute-force oracle")
{
    ValueSetResult v = value_set(make_field(2), 4, 10000, Mode::exactly, BoundConfig{});
    CHECK(v.cert.stable);
    CHECK(v.values.size() == 185);
    CHECK(v.values == oracle_values(2, 4, 10000, Mode::exactly, 16));
}

TEST_CASE("small exact counts")
{
    FieldDescriptor F2 = make_field(2);
    auto v = value_set(F2, 2, 10, Mode::exactly, BoundConfig{});
    CHECK(v.values == std::vector<std::int64_t>{-6, -2, 0, 2, 6});
    CHECK(count_values(F2, 2, 10, Mode::at_most, BoundConfig{}).count == 7);
    CHECK(count_values(F2, 1, 10, Mode::exactly, BoundConfig{}).count == 2);
    CHECK(count_values(F2, 1, 10, Mode::at_most, BoundConfig{}).count == 3);
    // sums of two units of Q(sqrt5): 0, Lucas traces 1, 3, 4, 7, 2 = 1 + 1, and the
    // exceptional pairs giving +-1 and +-2
    auto v5 = value_set(make_field(5), 2, 10, Mode::exactly, BoundConfig{});
    CHECK(v5.values == std::vector<std::int64_t>{-7, -4, -3, -2, -1, 0, 1, 2, 3, 4, 7});
}

TEST_CASE("k = 2 counts follow the trace recurrence")
{
    // for d = 2 the nonzero sums of exactly two units are +-2 and +-t_m
    FieldDescriptor F = make_field(2);
    auto t = oracle::traces(2, oracle::from(F.eta()), 200'000'000);
    for (std::int64_t X : {100, 10000, 1000000, 100000000}) {
        std::set<oracle::i128> pos{2};
        for (auto tm : t)
            if (tm <= X)
                pos.insert(tm);
        auto expect = static_cast<std::int64_t>(2 * pos.size() + 1);
        CountResult c = count_values(F, 2, X, Mode::exactly, BoundConfig{});
        CHECK(c.cert.stable);
        CHECK(c.count == expect);
        CHECK(count_values(F, 2, X, Mode::at_most, BoundConfig{}).count == expect + 2);
    }
    CHECK(count_values(F, 2, 1000000, Mode::exactly, BoundConfig{}).count == 31);
    CHECK(count_values(F, 2, 1000000, Mode::at_most, BoundConfig{}).count == 33);
}

TEST_CASE("representations")
{
    FieldDescriptor F2 = make_field(2);
    auto r2 = enumerate_representations(F2, 2, 2, BoundConfig{});
    REQUIRE(r2.classes.size() == 2);
    CHECK(r2.classes[0].coords == UnitTuple{F2.eta().conjugate(), F2.eta()});
    CHECK(r2.classes[1].coords == UnitTuple{F2.integer(1), F2.integer(1)});
    for (const auto& c : r2.classes)
        CHECK(c.shape == Shape::S1);

    auto r6 = enumerate_representations(F2, 6, 2, BoundConfig{});
    REQUIRE(r6.classes.size() == 1);
    QuadInt e2 = F2.eta() * F2.eta();
    CHECK(r6.classes[0].coords == UnitTuple{e2.conjugate(), e2});

    // n = 1 in Q(sqrt5): (1) and three pairs
    FieldDescriptor F5 = make_field(5);
    auto r1 = enumerate_representations(F5, 1, 2, BoundConfig{});
    REQUIRE(r1.classes.size() == 4);
    CHECK(r1.classes[0].coords == UnitTuple{F5.integer(1)});
    CHECK(r1.classes[0].shape == Shape::S2);
    std::set<std::string> pairs;
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(r1.classes[i].coords.size() == 2);
        pairs.insert(r1.classes[i].coords[0].to_string() + ";" + r1.classes[i].coords[1].to_string());
    }
    QuadInt phi = F5.eta(), phi_inv = unit_from_exponent(F5, {1, -1});
    CHECK(pairs.count(phi.conjugate().to_string() + ";" + phi.to_string()));
    CHECK(pairs.count((-phi).to_string() + ";" + (phi * phi).to_string()));
    CHECK(pairs.count((phi_inv * phi_inv).to_string() + ";" + phi_inv.to_string()));

    CHECK_THROWS_AS(enumerate_representations(F2, 0, 2, BoundConfig{}), Error);
}

TEST_CASE("representations agree with the class oracle")
{
    for (std::int64_t d : {2, 5}) {
        FieldDescriptor F = make_field(d);
        auto us = oracle::units(d, oracle::from(F.eta()), d == 2 ? 10 : 16);
        for (std::int64_t n : {1, 2, 3, 5, -4, 14}) {
            std::set<std::vector<oracle::Half>> expect;
            for (int r = 1; r <= 3; ++r)
                for (auto& c : oracle::subsum_free_classes(us, r, n, n))
                    expect.insert(c);
            std::set<std::vector<oracle::Half>> got;
            for (const auto& c : enumerate_representations(F, n, 3, BoundConfig{}).classes) {
                std::vector<oracle::Half> m;
                for (const auto& x : c.coords)
                    m.push_back(oracle::from(x));
                std::sort(m.begin(), m.end());
                got.insert(m);
                QuadInt sum = F.integer(0);
                for (const auto& x : c.coords)
                    sum += x;
                CHECK(sum == F.integer(n));
                CHECK(c.value == n);
            }
            CAPTURE(d);
            CAPTURE(n);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("non-uniqueness counts")
{
    FieldDescriptor F2 = make_field(2);
    CHECK(count_non_unique(F2, 2, 10, BoundConfig{}).count == 2);
    CHECK(count_non_unique(F2, 2, 1000000, BoundConfig{}).count == 2);
    CHECK(count_non_unique(make_field(5), 2, 10, BoundConfig{}).count == 4);
}

TEST_CASE("canonical form")
{
    FieldDescriptor F = make_field(2);
    UnitTuple t{F.eta(), F.eta().conjugate()};
    CHECK(canonicalize(t) == UnitTuple{F.eta().conjugate(), F.eta()});

    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        UnitTuple u = random_tuple(F, rng, 4, 4);
        UnitTuple c = canonicalize(u);
        CHECK(canonicalize(c) == c);
        std::sort(u.begin(), u.end(), QuadIntLess{});
        do {
            CHECK(canonicalize(u) == c);
        } while (std::next_permutation(u.begin(), u.end(), QuadIntLess{}));
        for (std::size_t i = 1; i < c.size(); ++i)
            CHECK(compare_real(c[i - 1], c[i]) <= 0);
    }
}

TEST_CASE("shapes")
{
    FieldDescriptor F = make_field(2);
    QuadInt e = F.eta(), one = F.integer(1), m1 = F.integer(-1);
    CHECK(classify_shape({e, e.conjugate()}) == Shape::S1);
    CHECK(classify_shape({e, e.conjugate(), one}) == Shape::S2);
    CHECK(classify_shape({e, e.conjugate(), m1}) == Shape::S3);
    CHECK(classify_shape({one, one}) == Shape::S1);
    CHECK(classify_shape({one, m1}) == Shape::generic);
    CHECK(classify_shape({e, e}) == Shape::generic);
    CHECK(classify_shape({e * e, -e, -e}) == Shape::generic);
}

TEST_CASE("trace-form reduction examples")
{
    FieldDescriptor F2 = make_field(2);
    QuadInt e = F2.eta();
    auto r = reduce_to_trace_form(F2, {e, e.conjugate()});
    CHECK(r.v == UnitTuple{e});
    CHECK(r.xi.empty());
    CHECK(r.value == 2);

    auto r3 = reduce_to_trace_form(F2, {e, e.conjugate(), F2.integer(1)});
    CHECK(r3.v == UnitTuple{e});
    CHECK(r3.xi == UnitTuple{F2.integer(1)});
    CHECK(r3.value == 3);

    FieldDescriptor F5 = make_field(5);
    QuadInt phi = F5.eta();
    auto r5 = reduce_to_trace_form(F5, {phi * phi, -phi});
    CHECK(r5.v.empty());
    CHECK(r5.xi == UnitTuple{-phi, phi * phi});
    CHECK(r5.value == 1);

    // |v| >= 1 is enforced by swapping with the conjugate
    auto rs = reduce_to_trace_form(F2, {e.conjugate(), e});
    CHECK(rs.v == UnitTuple{e});
}

TEST_CASE("trace-form reduction preconditions")
{
    FieldDescriptor F = make_field(2);
    QuadInt e = F.eta();
    auto code_of = [&](const UnitTuple& t) {
        try {
            reduce_to_trace_form(F, t);
        } catch (const Error& err) {
            return err.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of({e, -e, F.integer(1)}) == ErrorCode::PreconditionViolated);
    CHECK(code_of({e}) == ErrorCode::PreconditionViolated);
    CHECK(code_of({}) == ErrorCode::PreconditionViolated);
    CHECK(code_of({F.integer(2)}) == ErrorCode::PreconditionViolated);
}

TEST_CASE("trace-form reduction on every small representation")
{
    for (std::int64_t d : {2, 3, 5, 13}) {
        FieldDescriptor F = make_field(d);
        Representations reps = subsum_free_representations(F, 4, 60, BoundConfig{});
        CHECK(reps.cert.stable);
        CHECK_FALSE(reps.classes.empty());
        for (const auto& c : reps.classes) {
            auto red = reduce_to_trace_form(F, c.coords);
            UnitTuple full = red.expanded();
            QuadInt sum = F.integer(0);
            for (const auto& x : full)
                sum += x;
            CHECK(sum == F.integer(c.value));
            CHECK(red.value == c.value);
            CHECK(2 * red.v.size() + red.xi.size() <= c.coords.size());
            CHECK_FALSE(has_vanishing_subsum(full));
            if (red.xi.size() == 1)
                CHECK((red.xi[0] == F.integer(1) || red.xi[0] == F.integer(-1)));
            for (const auto& v : red.v)
                CHECK(compare_real(v * v, mpq_class(1)) >= 0);
        }
    }
}

TEST_CASE("property: negation symmetry and monotonicity on random triples")
{
    std::mt19937_64 rng(2024);
    const std::int64_t ds[] = {2, 3, 5, 6, 7, 13, 17};
    std::uniform_int_distribution<int> pick_d(0, 6), pick_k(1, 3);
    std::uniform_int_distribution<std::int64_t> pick_X(1, 400);
    for (int rep = 0; rep < 12; ++rep) {
        FieldDescriptor F = make_field(ds[pick_d(rng)]);
        int k = pick_k(rng);
        std::int64_t X = pick_X(rng);
        CAPTURE(F.d());
        CAPTURE(k);
        CAPTURE(X);
        for (Mode mode : {Mode::exactly, Mode::at_most}) {
            auto v = value_set(F, k, X, mode, BoundConfig{});
            for (auto n : v.values) {
                CHECK(std::binary_search(v.values.begin(), v.values.end(), -n));
                CHECK(std::abs(n) <= X);
            }
            if (mode == Mode::at_most)
                CHECK(std::binary_search(v.values.begin(), v.values.end(), 0));
        }
        auto a = value_set(F, k, X, Mode::at_most, BoundConfig{}).values;
        auto a1 = value_set(F, k + 1, X, Mode::at_most, BoundConfig{}).values;
        CHECK(std::includes(a1.begin(), a1.end(), a.begin(), a.end()));
        auto e = value_set(F, k, X, Mode::exactly, BoundConfig{}).values;
        auto e2 = value_set(F, k + 2, X, Mode::exactly, BoundConfig{}).values;
        CHECK(std::includes(e2.begin(), e2.end(), e.begin(), e.end()));
        CHECK(std::includes(a.begin(), a.end(), e.begin(), e.end()));
    }
}

TEST_CASE("property: conjugating witnesses preserves values")
{
    for (std::int64_t d : {2, 5, 13}) {
        FieldDescriptor F = make_field(d);
        auto reps = subsum_free_representations(F, 3, 100, BoundConfig{});
        for (const auto& c : reps.classes) {
            QuadInt sum = F.integer(0);
            for (const auto& x : c.coords)
                sum += x.conjugate();
            CHECK(sum == F.integer(c.value));
        }
    }
}

TEST_CASE("property: thread count does not change results")
{
    FieldDescriptor F = make_field(2);
    BoundConfig one, many;
    many.threads = 8;
    CHECK(value_set(F, 4, 1000, Mode::exactly, one).values == value_set(F, 4, 1000, Mode::exactly, many).values);
    auto a = subsum_free_representations(F, 3, 500, one);
    auto b = subsum_free_representations(F, 3, 500, many);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i)
        CHECK(a.classes[i].coords == b.classes[i].coords);
}

TEST_CASE("mode parsing and validation")
{
    CHECK(parse_mode("exactly") == Mode::exactly);
    CHECK(parse_mode("at_most") == Mode::at_most);
    CHECK_THROWS_AS(parse_mode("some"), Error);
    CHECK_THROWS_AS(value_set(make_field(2), 0, 10, Mode::exactly, BoundConfig{}), Error);
    CHECK_THROWS_AS(value_set(make_field(2), 2, 0, Mode::exactly, BoundConfig{}), Error);
}
