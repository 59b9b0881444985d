#include "unitsum/trace_sums.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "unitsum/errors.hpp"

namespace unitsum {

namespace {

bool any_pair_cancels(std::span<const QuadInt> t)
{
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].is_zero())
            return true;
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t[i].a() == -t[j].a() && t[i].b() == -t[j].b())
                return true;
    }
    return false;
}

/* Calls f(sum) for the sum of every nonempty subset, in Gray-code order;
 * stops early when f returns true. */
template <class F>
bool for_each_subset_sum(std::span<const QuadInt> t, F&& f)
{
    const std::size_t n = t.size();
    QuadInt sum = QuadInt::integer(t.front().d(), 0);
    std::uint32_t mask = 0;
    for (std::uint32_t i = 1; i < (std::uint32_t{1} << n); ++i) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(i));
        mask ^= std::uint32_t{1} << bit;
        if (mask & (std::uint32_t{1} << bit))
            sum += t[bit];
        else
            sum -= t[bit];
        if (f(sum))
            return true;
    }
    return false;
}

} // namespace

bool has_vanishing_subsum(std::span<const QuadInt> terms)
{
    if (terms.empty())
        throw Error(ErrorCode::PreconditionViolated, "has_vanishing_subsum needs a nonempty list");
    if (terms.size() > kMaxSubsumTerms)
        throw Error(ErrorCode::TooManyTerms, std::to_string(terms.size()) + " terms, limit " +
                                                 std::to_string(kMaxSubsumTerms));
    for (const QuadInt& t : terms)
        if (t.d() != terms.front().d())
            throw Error(ErrorCode::FieldMismatch, "terms from different fields");

    if (any_pair_cancels(terms))
        return true;

    auto is_zero = [](const QuadInt& s) { return s.is_zero(); };
    if (terms.size() <= 16)
        return for_each_subset_sum(terms, is_zero);

    // meet in the middle: a vanishing subset is left-only, right-only, or
    // a nonempty left part cancelling a nonempty right part
    auto left = terms.first(terms.size() / 2);
    auto right = terms.subspan(terms.size() / 2);
    std::set<QuadInt, QuadIntLess> left_sums;
    bool found = for_each_subset_sum(left, [&](const QuadInt& s) {
        if (s.is_zero())
            return true;
        left_sums.insert(s);
        return false;
    });
    if (found)
        return true;
    return for_each_subset_sum(right, [&](const QuadInt& s) {
        return s.is_zero() || left_sums.count(-s) > 0;
    });
}

TraceSumCount count_trace_sums(const TraceSumQuery& query, const BoundConfig& cfg)
{
    if (query.field == nullptr)
        throw Error(ErrorCode::InvalidArgument, "trace-sum query without a field");
    if (query.coefficients.empty())
        throw Error(ErrorCode::InvalidArgument, "trace-sum query needs ell >= 1");
    if (query.X < 1)
        throw Error(ErrorCode::InvalidArgument, "X must be at least 1");
    const FieldDescriptor& field = *query.field;
    for (const QuadInt& c : query.coefficients) {
        if (c.d() != field.d())
            throw Error(ErrorCode::FieldMismatch, "coefficient " + c.to_string());
        if (c.is_zero())
            throw Error(ErrorCode::InvalidArgument, "coefficients must be nonzero");
    }
    if (2 * query.ell() > kMaxSubsumTerms)
        throw Error(ErrorCode::TooManyTerms, "ell too large for the subsum test");

    const std::size_t ell = query.ell();
    const mpz_class X = query.X;
    std::vector<std::int64_t> histogram;

    auto run = [&](int top) {
        // c_i eta^m and its conjugate, m = 0..top
        std::vector<std::vector<QuadInt>> term, term_conj;
        std::vector<std::vector<mpz_class>> trace;
        for (const QuadInt& c : query.coefficients) {
            std::vector<QuadInt> t, tc;
            std::vector<mpz_class> tr;
            QuadInt x = c;
            for (int m = 0; m <= top; ++m) {
                tr.push_back(x.trace());
                tc.push_back(x.conjugate());
                t.push_back(x);
                x *= field.eta();
            }
            term.push_back(std::move(t));
            term_conj.push_back(std::move(tc));
            trace.push_back(std::move(tr));
        }

        histogram.assign(static_cast<std::size_t>(top) + 1, 0);
        // odometer over (m_i, sign_i), lexicographic in i
        std::vector<int> m(ell, 0), sign(ell, 1);
        std::vector<QuadInt> terms;
        terms.reserve(2 * ell);
        int highest = -1;
        for (;;) {
            mpz_class total = 0;
            for (std::size_t i = 0; i < ell; ++i) {
                if (sign[i] > 0)
                    total += trace[i][m[i]];
                else
                    total -= trace[i][m[i]];
            }
            if (abs(total) <= X) {
                terms.clear();
                for (std::size_t i = 0; i < ell; ++i) {
                    terms.push_back(sign[i] > 0 ? term[i][m[i]] : -term[i][m[i]]);
                    terms.push_back(sign[i] > 0 ? term_conj[i][m[i]] : -term_conj[i][m[i]]);
                }
                if (!has_vanishing_subsum(terms)) {
                    int h = *std::max_element(m.begin(), m.end());
                    ++histogram[h];
                    highest = std::max(highest, h);
                }
            }
            std::size_t i = 0;
            for (; i < ell; ++i) {
                if (sign[i] > 0) {
                    sign[i] = -1;
                    break;
                }
                sign[i] = 1;
                if (m[i] < top) {
                    ++m[i];
                    break;
                }
                m[i] = 0;
            }
            if (i == ell)
                break;
        }
        return highest;
    };

    int start = std::max(cfg.initial_exponent_bound,
                         suggested_start_bound(field.log_eta_value(),
                                               static_cast<double>(ell) * static_cast<double>(query.X)));
    start = std::min(start, cfg.max_exponent_bound);
    StabilityCertificate cert = settle_bound(cfg, start, run);

    TraceSumCount out;
    out.cert = cert;
    for (int h = 0; h <= cert.final_bound && h < static_cast<int>(histogram.size()); ++h)
        out.count += histogram[h];
    return out;
}

Prediction predict_trace_sums(const FieldDescriptor& field, int ell, std::int64_t X, int precision_bits)
{
    if (X < 2)
        throw Error(ErrorCode::InvalidArgument, "prediction needs X >= 2");
    if (ell < 0)
        throw Error(ErrorCode::InvalidArgument, "ell must be nonnegative");
    LogApprox log_eta = approx_log_eta(field, precision_bits);
    double L = log_eta.value();
    double e = log_eta.error_bound();
    double base = 2.0 * std::log(static_cast<double>(X)) / L;
    double value = std::pow(base, ell);
    // d/dL base^ell = -ell * base^ell / L, plus double rounding slack
    double err = 2.0 * ell * value * e / (L - e) + 1e-13 * value;
    return {value, err};
}

namespace {

/* Largest rational with denominator 2^(p+1) that does not exceed y > 0;
 * p grows until the result is positive. */
mpq_class lower_rational(const QuadInt& y)
{
    for (unsigned p = 64;; p += 64) {
        mpz_class scale = 1;
        mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), p);
        mpz_class r;
        mpz_class radicand = y.d() * (y.b() * y.b()) * scale * scale;
        mpz_sqrt(r.get_mpz_t(), radicand.get_mpz_t());
        mpz_class irrational = r;
        if (sgn(y.b()) < 0) {
            irrational = -r;
            if (r * r != radicand)
                irrational -= 1;
        }
        mpz_class num = y.a() * scale + irrational;
        if (sgn(num) > 0)
            return mpq_class(num, 2 * scale);
    }
}

} // namespace

GapEstimate gap_constant_estimate(const FieldDescriptor& field, std::span<const QuadInt> c, int depth)
{
    if (c.empty())
        throw Error(ErrorCode::InvalidArgument, "gap constant needs q >= 1 coefficients");
    if (depth < 1)
        throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
    for (const QuadInt& x : c) {
        if (x.d() != field.d())
            throw Error(ErrorCode::FieldMismatch, "coefficient " + x.to_string());
        if (x.is_zero())
            throw Error(ErrorCode::InvalidArgument, "coefficients must be nonzero");
    }

    std::vector<QuadInt> inverse_powers;
    inverse_powers.push_back(field.integer(1));
    QuadInt eta_inv = unit_from_exponent(field, {1, -1});
    for (int m = 1; m <= depth; ++m)
        inverse_powers.push_back(inverse_powers.back() * eta_inv);

    const std::size_t q = c.size();
    std::vector<int> m(q > 1 ? q - 1 : 0, 0);
    std::optional<QuadInt> best;
    std::vector<int> best_m;
    std::vector<QuadInt> terms;
    for (;;) {
        terms.assign(1, c[0]);
        for (std::size_t i = 1; i < q; ++i)
            terms.push_back(c[i] * inverse_powers[m[i - 1]]);
        if (!has_vanishing_subsum(terms)) {
            QuadInt s = terms[0];
            for (std::size_t i = 1; i < q; ++i)
                s += terms[i];
            if (real_sign(s) < 0)
                s = -s;
            if (!best || compare_real(s, *best) < 0) {
                best = s;
                best_m = m;
            }
        }
        // next nondecreasing sequence in [0, depth]
        std::size_t i = m.size();
        while (i > 0 && m[i - 1] == depth)
            --i;
        if (i == 0)
            break;
        int v = m[i - 1] + 1;
        for (std::size_t j = i - 1; j < m.size(); ++j)
            m[j] = v;
    }
    if (!best)
        throw Error(ErrorCode::PreconditionViolated, "every exponent pattern has a vanishing subsum");
    return GapEstimate{lower_rational(*best), best_m, *best, depth};
}

} // namespace unitsum
