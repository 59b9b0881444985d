#include "unitsum/sums_of_units.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>

#include "unitsum/errors.hpp"
#include "unitsum/search.hpp"
#include "unitsum/trace_sums.hpp"

namespace unitsum {

const char* to_string(Mode m)
{
    return m == Mode::exactly ? "exactly" : "at_most";
}

const char* to_string(Shape s)
{
    switch (s) {
    case Shape::S1: return "S1";
    case Shape::S2: return "S2";
    case Shape::S3: return "S3";
    case Shape::generic: return "generic";
    }
    return "generic";
}

Mode parse_mode(std::string_view s)
{
    if (s == "exactly")
        return Mode::exactly;
    if (s == "at_most" || s == "at-most")
        return Mode::at_most;
    throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

namespace {

int start_bound(const FieldDescriptor& field, const BoundConfig& cfg, double scale)
{
    int s = std::max(cfg.initial_exponent_bound, suggested_start_bound(field.log_eta_value(), scale));
    return std::min(s, cfg.max_exponent_bound);
}

struct FoundClass {
    UnitTuple coords;
    std::int64_t value;
    int height;
};

/* Subsum-free classes of length 1..k with lo <= n <= hi, n != 0. */
struct ClassSweep {
    std::vector<FoundClass> classes;
    StabilityCertificate cert;
};

template <class Height>
ClassSweep sweep_classes(const FieldDescriptor& field, int k, std::int64_t lo, std::int64_t hi,
                         const BoundConfig& cfg, Height object_height)
{
    std::vector<FoundClass> found;
    auto run = [&](int top) {
        found.clear();
        search::UnitTable table(field, top);
        for (int r = 1; r <= k; ++r) {
            for (auto& h : search::subsum_free_sums(table, r, lo, hi, cfg.threads)) {
                if (h.value == 0)
                    continue;
                UnitTuple t;
                for (auto i : h.idx)
                    t.push_back(table.unit(i));
                found.push_back({std::move(t), h.value, h.height});
            }
        }
        return object_height(found);
    };
    double scale = static_cast<double>(k) * static_cast<double>(std::max(std::abs(lo), std::abs(hi)));
    ClassSweep out;
    out.cert = settle_bound(cfg, start_bound(field, cfg, scale), run);
    for (auto& c : found)
        if (c.height <= out.cert.final_bound)
            out.classes.push_back(std::move(c));
    return out;
}

int max_class_height(const std::vector<FoundClass>& found)
{
    int highest = -1;
    for (const auto& c : found)
        highest = std::max(highest, c.height);
    return highest;
}

/* largest over values of the smallest height of a class with that value */
int max_value_height(const std::vector<FoundClass>& found)
{
    std::map<std::int64_t, int> first;
    for (const auto& c : found) {
        auto [it, fresh] = first.emplace(c.value, c.height);
        if (!fresh)
            it->second = std::min(it->second, c.height);
    }
    int highest = -1;
    for (const auto& [n, h] : first)
        highest = std::max(highest, h);
    return highest;
}

void validate_common(int k, std::int64_t X, const BoundConfig& cfg)
{
    cfg.validate();
    if (k < 1)
        throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (X < 1)
        throw Error(ErrorCode::InvalidArgument, "X must be at least 1");
}

/* reachable[j]: j is a sum of profile lengths */
std::vector<bool> semigroup_upto(const std::vector<int>& lengths, int k)
{
    std::vector<bool> reachable(static_cast<std::size_t>(k) + 1, false);
    reachable[0] = true;
    for (int j = 1; j <= k; ++j)
        for (int len : lengths)
            if (len <= j && reachable[static_cast<std::size_t>(j - len)])
                reachable[static_cast<std::size_t>(j)] = true;
    return reachable;
}

RepresentationClass make_class(UnitTuple coords, std::int64_t n)
{
    RepresentationClass c;
    c.coords = canonicalize(coords);
    c.value = n;
    c.shape = classify_shape(c.coords);
    c.subsum_free = true;
    return c;
}

void sort_classes(std::vector<RepresentationClass>& classes)
{
    std::sort(classes.begin(), classes.end(), [](const RepresentationClass& x, const RepresentationClass& y) {
        if (x.value != y.value)
            return x.value < y.value;
        if (x.coords.size() != y.coords.size())
            return x.coords.size() < y.coords.size();
        return std::lexicographical_compare(x.coords.begin(), x.coords.end(), y.coords.begin(),
                                            y.coords.end(), canonical_less);
    });
}

} // namespace

ValueSetResult value_set(const FieldDescriptor& field, int k, std::int64_t X, Mode mode, const BoundConfig& cfg)
{
    validate_common(k, X, cfg);
    ValueSetResult out;
    out.mode = mode;
    out.k = k;

    std::vector<bool> use_length(static_cast<std::size_t>(k) + 1, mode == Mode::at_most);
    bool zero = mode == Mode::at_most;
    StabilityCertificate profile_cert{cfg.initial_exponent_bound, cfg.stability_window, true};
    if (mode == Mode::exactly) {
        VanishingProfile profile = vanishing_sum_profile(field, std::max(k, 2), cfg);
        profile_cert = profile.cert;
        auto reachable = semigroup_upto(profile.lengths, k);
        for (int r = 1; r <= k; ++r)
            use_length[static_cast<std::size_t>(r)] = reachable[static_cast<std::size_t>(k - r)];
        zero = reachable[static_cast<std::size_t>(k)];
    }
    int r_top = 0;
    for (int r = 1; r <= k; ++r)
        if (use_length[static_cast<std::size_t>(r)])
            r_top = r;

    std::vector<std::int64_t> values;
    if (r_top > 0) {
        auto filtered_height = [&](const std::vector<FoundClass>& found) {
            std::vector<FoundClass> kept;
            for (const auto& c : found)
                if (use_length[c.coords.size()])
                    kept.push_back(c);
            return max_value_height(kept);
        };
        ClassSweep sweep = sweep_classes(field, r_top, -X, X, cfg, filtered_height);
        out.cert = combine(sweep.cert, profile_cert);
        for (const auto& c : sweep.classes)
            if (use_length[c.coords.size()])
                values.push_back(c.value);
    } else {
        out.cert = profile_cert;
    }
    if (zero)
        values.push_back(0);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    out.values = std::move(values);
    return out;
}

CountResult count_values(const FieldDescriptor& field, int k, std::int64_t X, Mode mode, const BoundConfig& cfg)
{
    ValueSetResult v = value_set(field, k, X, mode, cfg);
    return {static_cast<std::int64_t>(v.values.size()), v.cert};
}

Representations enumerate_representations(const FieldDescriptor& field, std::int64_t n, int k,
                                          const BoundConfig& cfg)
{
    if (n == 0)
        throw Error(ErrorCode::PreconditionViolated, "n must be nonzero");
    validate_common(k, 1, cfg);
    ClassSweep sweep = sweep_classes(field, k, n, n, cfg, max_class_height);
    Representations out;
    out.cert = sweep.cert;
    for (auto& c : sweep.classes)
        out.classes.push_back(make_class(std::move(c.coords), c.value));
    sort_classes(out.classes);
    return out;
}

Representations subsum_free_representations(const FieldDescriptor& field, int k, std::int64_t X,
                                            const BoundConfig& cfg)
{
    validate_common(k, X, cfg);
    ClassSweep sweep = sweep_classes(field, k, -X, X, cfg, max_class_height);
    Representations out;
    out.cert = sweep.cert;
    for (auto& c : sweep.classes)
        out.classes.push_back(make_class(std::move(c.coords), c.value));
    sort_classes(out.classes);
    return out;
}

CountResult count_non_unique(const FieldDescriptor& field, int k, std::int64_t X, const BoundConfig& cfg)
{
    Representations reps = subsum_free_representations(field, k, X, cfg);
    std::map<std::int64_t, int> per_value;
    for (const auto& c : reps.classes)
        ++per_value[c.value];
    CountResult out;
    out.cert = reps.cert;
    for (const auto& [n, classes] : per_value)
        if (classes >= 2)
            ++out.count;
    return out;
}

bool canonical_less(const QuadInt& x, const QuadInt& y)
{
    auto c = compare_real(x, y);
    if (c != 0)
        return c < 0;
    return compare_real(x.conjugate(), y.conjugate()) < 0;
}

UnitTuple canonicalize(const UnitTuple& t)
{
    UnitTuple out = t;
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

namespace {

using Multiset = std::map<QuadInt, int, QuadIntLess>;

bool pairs_with_conjugates(const Multiset& m)
{
    for (const auto& [x, c] : m) {
        if (c == 0)
            continue;
        QuadInt xc = x.conjugate();
        if (xc == x) {
            if (c % 2 != 0)
                return false;
            continue;
        }
        auto it = m.find(xc);
        if (it == m.end() || it->second != c)
            return false;
    }
    return true;
}

bool pairs_after_removing(Multiset m, const QuadInt& x)
{
    auto it = m.find(x);
    if (it == m.end() || it->second == 0)
        return false;
    --it->second;
    return pairs_with_conjugates(m);
}

} // namespace

Shape classify_shape(const UnitTuple& t)
{
    if (t.empty())
        return Shape::S1;
    Multiset m;
    for (const QuadInt& x : t)
        ++m[x];
    if (t.size() % 2 == 0)
        return pairs_with_conjugates(m) ? Shape::S1 : Shape::generic;
    const std::int64_t d = t.front().d();
    if (pairs_after_removing(m, QuadInt::integer(d, 1)))
        return Shape::S2;
    if (pairs_after_removing(m, QuadInt::integer(d, -1)))
        return Shape::S3;
    return Shape::generic;
}

UnitTuple TraceFormReduction::expanded() const
{
    UnitTuple out = v;
    for (const QuadInt& x : v)
        out.push_back(x.conjugate());
    out.insert(out.end(), xi.begin(), xi.end());
    return out;
}

namespace {

constexpr std::size_t kMaxReductionTerms = 8;

/* A smallest nonempty vanishing subset, as a bit mask; ties go to the
 * numerically smallest mask. */
std::optional<std::uint32_t> smallest_vanishing_subset(const UnitTuple& terms)
{
    const std::size_t n = terms.size();
    if (n == 0)
        return std::nullopt;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<QuadInt> sums(static_cast<std::size_t>(full) + 1, QuadInt::integer(terms.front().d(), 0));
    std::optional<std::uint32_t> best;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t low = mask & (~mask + 1);
        sums[mask] = sums[mask ^ low] + terms[static_cast<std::size_t>(std::countr_zero(low))];
        if (sums[mask].is_zero() && (!best || std::popcount(mask) < std::popcount(*best)))
            best = mask;
    }
    return best;
}

UnitTuple strip_vanishing(UnitTuple t)
{
    while (auto mask = smallest_vanishing_subset(t)) {
        UnitTuple rest;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (!(*mask >> i & 1u))
                rest.push_back(t[i]);
        t = std::move(rest);
    }
    return t;
}

bool at_least_one_in_size(const QuadInt& v)
{
    return compare_real(v, mpq_class(1)) >= 0 || compare_real(v, mpq_class(-1)) <= 0;
}

/* |v v'| = 1, so one of the pair has absolute value >= 1 */
QuadInt normalise_pair(const QuadInt& v)
{
    return at_least_one_in_size(v) ? v : v.conjugate();
}

std::int64_t exact_value(const UnitTuple& t)
{
    QuadInt s = QuadInt::integer(t.front().d(), 0);
    for (const QuadInt& x : t)
        s += x;
    return s.a().get_si() / 2;
}

TraceFormReduction join(TraceFormReduction a, const TraceFormReduction& b)
{
    a.v.insert(a.v.end(), b.v.begin(), b.v.end());
    a.xi.insert(a.xi.end(), b.xi.begin(), b.xi.end());
    a.value += b.value;
    return a;
}

/* u is subsum-free with nonzero rational integer sum. */
TraceFormReduction reduce_rec(const UnitTuple& u)
{
    const std::size_t r = u.size();
    const std::int64_t n = exact_value(u);
    if (r == 1)
        return {{}, u, n};
    if (r == 2) {
        if (u[1] == u[0].conjugate())
            return {{normalise_pair(u[0])}, {}, n};
        return {{}, u, n};
    }

    // sum(u) - sum(u') = 0, so u_1..u_r, -u_1'..-u_r' has a vanishing subset
    UnitTuple terms = u;
    for (const QuadInt& x : u)
        terms.push_back(-x.conjugate());
    std::uint32_t mask = *smallest_vanishing_subset(terms);
    std::vector<bool> in_i(r), in_j(r);
    std::size_t ni = 0, nj = 0;
    for (std::size_t i = 0; i < r; ++i) {
        in_i[i] = mask >> i & 1u;
        in_j[i] = mask >> (r + i) & 1u;
        ni += in_i[i];
        nj += in_j[i];
    }
    // conjugating and negating the relation swaps the roles of I and J
    if (ni < nj) {
        std::swap(in_i, in_j);
        std::swap(ni, nj);
    }

    if (ni > nj) {
        // sum over I equals sum over J of u_j', so replace I by those conjugates
        UnitTuple w;
        for (std::size_t i = 0; i < r; ++i)
            if (!in_i[i])
                w.push_back(u[i]);
        for (std::size_t j = 0; j < r; ++j)
            if (in_j[j])
                w.push_back(u[j].conjugate());
        return reduce_rec(strip_vanishing(std::move(w)));
    }

    std::optional<std::size_t> j0;
    for (std::size_t j = 0; j < r; ++j)
        if (in_j[j] && !in_i[j]) {
            j0 = j;
            break;
        }
    if (j0) {
        // u_j0 + u_j0' splits off as a trace; what is left still sums to an integer
        const QuadInt& pivot = u[*j0];
        const std::int64_t m = pivot.trace().get_si();
        TraceFormReduction head{{normalise_pair(pivot)}, {}, m};
        if (n == m)
            return head;
        UnitTuple w;
        for (std::size_t i = 0; i < r; ++i)
            if (!in_i[i] && i != *j0)
                w.push_back(u[i]);
        for (std::size_t j = 0; j < r; ++j)
            if (in_j[j] && j != *j0)
                w.push_back(u[j].conjugate());
        return join(head, reduce_rec(strip_vanishing(std::move(w))));
    }

    if (ni == r)
        return {{}, u, n};

    UnitTuple inside, outside;
    for (std::size_t i = 0; i < r; ++i)
        (in_i[i] ? inside : outside).push_back(u[i]);
    return join(reduce_rec(inside), reduce_rec(outside));
}

void tidy(TraceFormReduction& red)
{
    red.v = canonicalize(red.v);
    red.xi = canonicalize(red.xi);
}

} // namespace

TraceFormReduction reduce_to_trace_form(const FieldDescriptor& field, const UnitTuple& t)
{
    if (t.empty())
        throw Error(ErrorCode::PreconditionViolated, "empty tuple");
    if (t.size() > kMaxReductionTerms)
        throw Error(ErrorCode::TooManyTerms, "at most 8 units can be reduced");
    QuadInt sum = field.integer(0);
    for (const QuadInt& x : t) {
        if (x.d() != field.d())
            throw Error(ErrorCode::FieldMismatch, x.to_string());
        if (!x.is_unit())
            throw Error(ErrorCode::PreconditionViolated, x.to_string() + " is not a unit");
        sum += x;
    }
    if (!sum.is_rational() || sum.is_zero())
        throw Error(ErrorCode::PreconditionViolated, "sum is not a nonzero rational integer");
    if (has_vanishing_subsum(t))
        throw Error(ErrorCode::PreconditionViolated, "tuple has a vanishing subsum");

    TraceFormReduction red = reduce_rec(t);
    for (;;) {
        UnitTuple full = red.expanded();
        if (!has_vanishing_subsum(full))
            break;
        red = reduce_rec(strip_vanishing(std::move(full)));
    }
    tidy(red);
    return red;
}

} // namespace unitsum
