#include "unitsum/unit_equation.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "unitsum/errors.hpp"
#include "unitsum/search.hpp"

namespace unitsum {

namespace {

struct ClassSearch {
    std::vector<std::vector<std::uint32_t>> classes;
    std::optional<search::UnitTable> table;
    StabilityCertificate cert;
};

ClassSearch solve_classes(const FieldDescriptor& field, int T, const BoundConfig& cfg)
{
    if (T < 1)
        throw Error(ErrorCode::InvalidArgument, "T must be at least 1");
    ClassSearch out;
    std::vector<search::ClassHit> hits;
    auto run = [&](int top) {
        out.table.emplace(field, top);
        hits = search::subsum_free_sums(*out.table, T, 1, 1, cfg.threads);
        int highest = -1;
        for (const auto& h : hits)
            highest = std::max(highest, h.height);
        return highest;
    };
    out.cert = settle_bound(cfg, cfg.initial_exponent_bound, run);
    for (auto& h : hits)
        if (h.height <= out.cert.final_bound)
            out.classes.push_back(std::move(h.idx));
    return out;
}

UnitTuple to_units(const search::UnitTable& table, const std::vector<std::uint32_t>& idx)
{
    UnitTuple t;
    t.reserve(idx.size());
    for (auto i : idx)
        t.push_back(table.unit(i));
    return t;
}

bool valid_half_coordinates(std::int64_t d, const mpz_class& a, const mpz_class& b)
{
    bool a_odd = mpz_odd_p(a.get_mpz_t());
    bool b_odd = mpz_odd_p(b.get_mpz_t());
    return d % 4 == 1 ? a_odd == b_odd : (!a_odd && !b_odd);
}

void sort_by_real_value(std::vector<QuadInt>& units)
{
    std::sort(units.begin(), units.end(),
              [](const QuadInt& x, const QuadInt& y) { return compare_real(x, y) < 0; });
    units.erase(std::unique(units.begin(), units.end()), units.end());
}

} // namespace

UnitEquationSolutions unit_equation_classes(const FieldDescriptor& field, int T, const BoundConfig& cfg)
{
    ClassSearch found = solve_classes(field, T, cfg);
    UnitEquationSolutions out;
    out.cert = found.cert;
    for (const auto& idx : found.classes)
        out.solutions.push_back(to_units(*found.table, idx));
    return out;
}

UnitEquationSolutions enumerate_unit_equation_solutions(const FieldDescriptor& field, int T,
                                                        const BoundConfig& cfg)
{
    ClassSearch found = solve_classes(field, T, cfg);
    UnitEquationSolutions out;
    out.cert = found.cert;
    for (auto idx : found.classes) {
        do {
            out.solutions.push_back(to_units(*found.table, idx));
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return out;
}

std::vector<QuadInt> exceptional_pair_units(const FieldDescriptor& field)
{
    std::vector<QuadInt> units;
    if (field.d() != 5)
        return units;
    // (3e1 +- sqrt5)/2 and (e2 -+ sqrt5)/2
    for (int a : {3, -3, 1, -1})
        for (int b : {1, -1})
            units.emplace_back(5, a, b);
    sort_by_real_value(units);
    return units;
}

ExceptionalSets build_exceptional_sets(const FieldDescriptor& field, int t_max, const BoundConfig& cfg)
{
    if (t_max < 0)
        throw Error(ErrorCode::InvalidArgument, "t_max must be nonnegative");
    cfg.validate();
    ExceptionalSets out;
    out.cert = {cfg.initial_exponent_bound, cfg.stability_window, true};

    std::vector<QuadInt> current{field.integer(-1), field.integer(1)};
    out.sets.push_back(current);
    if (t_max >= 1)
        out.sets.push_back(current);
    if (t_max >= 2) {
        for (const QuadInt& u : exceptional_pair_units(field))
            current.push_back(u);
        sort_by_real_value(current);
        out.sets.push_back(current);
    }

    for (int t = 3; t <= t_max; ++t) {
        ClassSearch found = solve_classes(field, 2 * t - 1, cfg);
        out.cert = combine(out.cert, found.cert);
        const auto& table = *found.table;

        std::set<std::vector<std::uint32_t>> prefixes;
        for (const auto& cls : found.classes) {
            // every t-element sub-multiset occurs as the first t coordinates
            // of some ordering of the solution
            std::vector<bool> pick(cls.size(), false);
            std::fill(pick.begin(), pick.begin() + t, true);
            do {
                std::vector<std::uint32_t> sub;
                for (std::size_t i = 0; i < cls.size(); ++i)
                    if (pick[i])
                        sub.push_back(cls[i]);
                prefixes.insert(std::move(sub));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }

        for (const auto& sub : prefixes) {
            QuadInt sigma = field.integer(0);
            for (auto i : sub)
                sigma += table.unit(i);
            if (sigma.is_zero())
                continue;
            // u * sigma = m in Z forces m^2 = |N(sigma)| and u = m sigma' / N(sigma)
            mpz_class norm = sigma.norm();
            mpz_class abs_norm = abs(norm);
            mpz_class m;
            mpz_sqrt(m.get_mpz_t(), abs_norm.get_mpz_t());
            if (m * m != abs_norm)
                continue;
            for (int s : {1, -1}) {
                mpz_class ua = s * m * sigma.a();
                mpz_class ub = -s * m * sigma.b();
                if (!mpz_divisible_p(ua.get_mpz_t(), norm.get_mpz_t()) ||
                    !mpz_divisible_p(ub.get_mpz_t(), norm.get_mpz_t()))
                    continue;
                mpz_divexact(ua.get_mpz_t(), ua.get_mpz_t(), norm.get_mpz_t());
                mpz_divexact(ub.get_mpz_t(), ub.get_mpz_t(), norm.get_mpz_t());
                if (!valid_half_coordinates(field.d(), ua, ub))
                    continue;
                QuadInt u(field.d(), ua, ub);
                if (!u.is_unit())
                    continue;
                for (auto i : sub)
                    current.push_back(u * table.unit(i));
            }
        }
        sort_by_real_value(current);
        out.sets.push_back(current);
    }
    return out;
}

VanishingProfile vanishing_sum_profile(const FieldDescriptor& field, int r_max, const BoundConfig& cfg)
{
    if (r_max < 2)
        throw Error(ErrorCode::InvalidArgument, "r_max must be at least 2");
    cfg.validate();
    VanishingProfile out;
    out.cert = {cfg.initial_exponent_bound, cfg.stability_window, true};
    out.lengths.push_back(2);
    for (int r = 3; r <= r_max; ++r) {
        // divide by -u_r: minimal vanishing r-sums <-> non-degenerate S_{r-1}
        ClassSearch found = solve_classes(field, r - 1, cfg);
        if (!found.classes.empty())
            out.lengths.push_back(r);
        else
            out.cert = combine(out.cert, found.cert);
    }
    return out;
}

bool is_exceptional(const FieldDescriptor& field)
{
    // u1 + u2 = 1 needs u2 = u1' (a unit of trace 1: 1 - d b^2 = +-4) or the
    // d = 5 relation; u2 = -u1 sums to 0
    const std::int64_t d = field.d();
    if (d == 5)
        return true;
    for (std::int64_t b = 1; d * b * b <= 5; ++b)
        if (d * b * b == 5 && valid_half_coordinates(d, 1, b))
            return true;
    return false;
}

} // namespace unitsum
