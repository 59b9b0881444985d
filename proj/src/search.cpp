#include "unitsum/search.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <utility>

#include "unitsum/errors.hpp"

namespace unitsum::search {

UnitTable::UnitTable(const FieldDescriptor& field, int bound) : field_(&field), bound_(bound)
{
    if (bound < 0)
        throw Error(ErrorCode::InvalidArgument, "negative exponent bound");
    // eta^m for m = -B..B, then negatives in reverse
    std::vector<QuadInt> positive;
    positive.reserve(2 * static_cast<std::size_t>(bound) + 1);
    QuadInt x = unit_from_exponent(field, {1, -bound});
    for (int m = -bound; m <= bound; ++m) {
        positive.push_back(x);
        x *= field.eta();
    }
    units_.reserve(2 * positive.size());
    for (auto it = positive.rbegin(); it != positive.rend(); ++it)
        units_.push_back(-*it);
    for (auto& u : positive)
        units_.push_back(std::move(u));
}

UnitExponent UnitTable::exponent(std::size_t i) const
{
    auto b = static_cast<std::int64_t>(bound_);
    auto k = static_cast<std::int64_t>(i);
    if (k <= 2 * b)
        return {-1, b - k};
    return {1, k - (3 * b + 1)};
}

int UnitTable::height(std::size_t i) const
{
    auto m = exponent(i).m;
    return static_cast<int>(m < 0 ? -m : m);
}

namespace {

struct Half {
    std::vector<std::uint32_t> idx;
    QuadInt sum;
    int height;
};

bool cancels(const QuadInt& x, const QuadInt& y)
{
    return x.a() == -y.a() && x.b() == -y.b();
}

/* Depth-first over nondecreasing index sequences, keeping the sums of all
 * subsets (empty one first, full one last) to reject vanishing subsums as
 * soon as they appear. */
void extend_halves(const UnitTable& table, std::size_t h, std::vector<std::uint32_t>& idx,
                   const std::vector<QuadInt>& subset_sums, int height, std::vector<Half>& out)
{
    if (idx.size() == h) {
        out.push_back({idx, subset_sums.back(), height});
        return;
    }
    std::uint32_t first = idx.empty() ? 0 : idx.back();
    std::vector<QuadInt> next;
    for (auto i = first; i < table.size(); ++i) {
        const QuadInt& x = table.unit(i);
        bool vanishing = false;
        for (const QuadInt& s : subset_sums) {
            if (cancels(s, x)) {
                vanishing = true;
                break;
            }
        }
        if (vanishing)
            continue;
        next = subset_sums;
        for (const QuadInt& s : subset_sums)
            next.push_back(s + x);
        idx.push_back(i);
        extend_halves(table, h, idx, next, std::max(height, table.height(i)), out);
        idx.pop_back();
    }
}

std::vector<Half> halves(const UnitTable& table, std::size_t h)
{
    std::vector<Half> out;
    std::vector<std::uint32_t> idx;
    std::vector<QuadInt> sums{table.field().integer(0)};
    extend_halves(table, h, idx, sums, 0, out);
    return out;
}

std::vector<QuadInt> nonempty_subset_sums(const UnitTable& table, const std::vector<std::uint32_t>& idx)
{
    std::vector<QuadInt> sums{table.field().integer(0)};
    for (auto i : idx) {
        std::size_t n = sums.size();
        for (std::size_t j = 0; j < n; ++j)
            sums.push_back(sums[j] + table.unit(i));
    }
    sums.erase(sums.begin());
    return sums;
}

struct RightEntry {
    mpz_class a;
    std::uint32_t pos;
};

} // namespace

std::vector<ClassHit> subsum_free_sums(const UnitTable& table, int r, std::int64_t lo, std::int64_t hi,
                                       unsigned threads)
{
    if (r < 1)
        throw Error(ErrorCode::InvalidArgument, "tuple length must be at least 1");
    if (lo > hi)
        return {};
    const auto h_left = static_cast<std::size_t>(r / 2);
    const auto h_right = static_cast<std::size_t>(r) - h_left;

    std::vector<Half> left = halves(table, h_left);
    std::vector<Half> right_storage;
    if (h_right != h_left)
        right_storage = halves(table, h_right);
    const std::vector<Half>& right = h_right == h_left ? left : right_storage;

    std::map<mpz_class, std::vector<RightEntry>> groups;
    for (std::uint32_t pos = 0; pos < right.size(); ++pos)
        groups[right[pos].sum.b()].push_back({right[pos].sum.a(), pos});
    for (auto& [b, entries] : groups)
        std::sort(entries.begin(), entries.end(),
                  [](const RightEntry& x, const RightEntry& y) { return x.a < y.a; });

    const mpz_class two_lo = 2 * mpz_class(lo);
    const mpz_class two_hi = 2 * mpz_class(hi);

    auto work = [&](std::size_t begin, std::size_t end, std::vector<ClassHit>& hits) {
        for (std::size_t li = begin; li < end; ++li) {
            const Half& L = left[li];
            auto g = groups.find(-L.sum.b());
            if (g == groups.end())
                continue;
            const auto& entries = g->second;
            mpz_class a_lo = two_lo - L.sum.a();
            mpz_class a_hi = two_hi - L.sum.a();
            auto it = std::lower_bound(entries.begin(), entries.end(), a_lo,
                                       [](const RightEntry& e, const mpz_class& v) { return e.a < v; });
            std::vector<QuadInt> left_sums;
            bool have_left_sums = false;
            for (; it != entries.end() && it->a <= a_hi; ++it) {
                const Half& R = right[it->pos];
                if (!L.idx.empty() && L.idx.back() > R.idx.front())
                    continue;
                if (!L.idx.empty()) {
                    if (!have_left_sums) {
                        left_sums = nonempty_subset_sums(table, L.idx);
                        have_left_sums = true;
                    }
                    auto right_sums = nonempty_subset_sums(table, R.idx);
                    bool vanishing = false;
                    for (const QuadInt& s : left_sums) {
                        for (const QuadInt& t : right_sums)
                            if (cancels(s, t)) {
                                vanishing = true;
                                break;
                            }
                        if (vanishing)
                            break;
                    }
                    if (vanishing)
                        continue;
                }
                ClassHit hit;
                hit.idx = L.idx;
                hit.idx.insert(hit.idx.end(), R.idx.begin(), R.idx.end());
                mpz_class total = L.sum.a() + it->a;
                hit.value = mpz_class(total / 2).get_si();
                hit.height = std::max(L.height, R.height);
                hits.push_back(std::move(hit));
            }
        }
    };

    std::vector<ClassHit> out;
    unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(left.size())));
    if (workers <= 1) {
        work(0, left.size(), out);
    } else {
        std::vector<std::vector<ClassHit>> parts(workers);
        {
            std::vector<std::jthread> pool;
            std::size_t chunk = (left.size() + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                std::size_t begin = std::min(left.size(), w * chunk);
                std::size_t end = std::min(left.size(), begin + chunk);
                pool.emplace_back([&, begin, end, w] { work(begin, end, parts[w]); });
            }
        }
        for (auto& p : parts)
            for (auto& hit : p)
                out.push_back(std::move(hit));
    }
    std::sort(out.begin(), out.end(), [](const ClassHit& x, const ClassHit& y) { return x.idx < y.idx; });
    return out;
}

} // namespace unitsum::search
