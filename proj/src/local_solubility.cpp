#include "unitsum/local_solubility.hpp"

#include <string>

#include "unitsum/errors.hpp"

namespace unitsum {

TwoSplitting splitting_of_two(const FieldDescriptor& field)
{
    return field.two_splitting();
}

const char* to_string(LocalReason r)
{
    switch (r) {
    case LocalReason::odd_prime_unit_construction: return "odd_prime_unit_construction";
    case LocalReason::parity_match: return "parity_match";
    case LocalReason::two_inert_F4: return "two_inert_F4";
    case LocalReason::obstruction_mod_2: return "obstruction_mod_2";
    }
    return "obstruction_mod_2";
}

namespace {

std::int64_t reduce(const mpq_class& x, std::int64_t modulus)
{
    mpz_class m = modulus;
    mpz_class den = x.get_den();
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorCode::InvalidArgument, "denominator " + den.get_str() + " is not invertible");
    mpz_class r = x.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r.get_si();
}

/* v_p(x) = 0 */
bool p_adic_unit(const mpq_class& x, std::int64_t p)
{
    if (sgn(x) == 0)
        return false;
    mpz_class pp = p;
    return !mpz_divisible_p(x.get_num_mpz_t(), pp.get_mpz_t()) &&
           !mpz_divisible_p(x.get_den_mpz_t(), pp.get_mpz_t());
}

/* `head` fixed terms followed by k - |head| copies of (n - sum head)/(k - |head|) */
std::optional<std::vector<LocalUnit>> rational_construction(int k, std::int64_t n, std::int64_t p,
                                                           const std::vector<std::int64_t>& head)
{
    const int rest = k - static_cast<int>(head.size());
    if (rest < 0)
        return std::nullopt;
    std::int64_t remaining = n;
    std::vector<LocalUnit> out;
    for (std::int64_t e : head) {
        if (!p_adic_unit(mpq_class(e), p))
            return std::nullopt;
        remaining -= e;
        out.push_back({mpq_class(e), mpq_class(0)});
    }
    if (rest == 0)
        return remaining == 0 ? std::optional(out) : std::nullopt;
    mpq_class share(remaining, rest);
    share.canonicalize();
    if (!p_adic_unit(share, p))
        return std::nullopt;
    for (int i = 0; i < rest; ++i)
        out.push_back({share, mpq_class(0)});
    return out;
}

std::optional<std::vector<LocalUnit>> rational_witness(int k, std::int64_t n, std::int64_t p)
{
    const std::vector<std::vector<std::int64_t>> heads{{}, {1}, {2}, {1, 1}};
    for (const auto& head : heads)
        if (auto w = rational_construction(k, n, p, head))
            return w;
    return std::nullopt;
}

} // namespace

std::pair<std::int64_t, std::int64_t> LocalUnit::residue(std::int64_t modulus) const
{
    return {reduce(rational, modulus), reduce(omega, modulus)};
}

std::string LocalUnit::to_string() const
{
    if (sgn(omega) == 0)
        return rational.get_str();
    std::string w = omega == 1 ? "omega" : omega == -1 ? "-omega" : omega.get_str() + "*omega";
    if (sgn(rational) == 0)
        return w;
    return rational.get_str() + (w.front() == '-' ? "" : "+") + w;
}

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

LocalDecision local_decision(const FieldDescriptor& field, int k, std::int64_t n, std::int64_t p)
{
    if (k < 2)
        throw Error(ErrorCode::KTooSmall, "k must be at least 2");
    if (!is_prime(p))
        throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    LocalDecision out;
    out.p = p;
    const bool parity = (n - k) % 2 == 0;
    if (p != 2 || parity) {
        out.soluble = true;
        out.reason = p != 2 ? LocalReason::odd_prime_unit_construction : LocalReason::parity_match;
        out.witness = rational_witness(k, n, p);
        return out;
    }
    if (field.two_splitting() == TwoSplitting::inert) {
        // omega and m - omega both have odd norm; pad with 1s
        out.soluble = true;
        out.reason = LocalReason::two_inert_F4;
        const std::int64_t m = n - k + 2;
        std::vector<LocalUnit> w{{mpq_class(0), mpq_class(1)}, {mpq_class(m), mpq_class(-1)}};
        for (int i = 2; i < k; ++i)
            w.push_back({mpq_class(1), mpq_class(0)});
        out.witness = std::move(w);
        return out;
    }
    out.soluble = false;
    out.reason = LocalReason::obstruction_mod_2;
    return out;
}

bool everywhere_locally_soluble(const FieldDescriptor& field, int k, std::int64_t n)
{
    return local_decision(field, k, n, 2).soluble;
}

int default_residue_depth(std::int64_t p)
{
    return p == 2 ? 3 : 2;
}

ResidueSearch verify_by_residue_search(const FieldDescriptor& field, int k, std::int64_t n, std::int64_t p,
                                       int depth)
{
    LocalDecision decision = local_decision(field, k, n, p);
    if (depth < 1)
        throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
    if (k > kResidueMaxTerms)
        throw Error(ErrorCode::BudgetExceeded, "residue search handles at most 6 units");
    std::int64_t q = 1;
    for (int i = 0; i < depth; ++i) {
        q *= p;
        if (q * q > kResidueRingBudget)
            throw Error(ErrorCode::BudgetExceeded, "residue ring larger than 10^6 elements");
    }

    // norm form of x + y*omega, reduced mod p
    const std::int64_t d = field.d();
    const bool half = d % 4 == 1;
    auto norm_mod_p = [&](std::int64_t x, std::int64_t y) {
        __int128 v = half ? static_cast<__int128>(x) * x + static_cast<__int128>(x) * y +
                                static_cast<__int128>((1 - d) / 4) * y * y
                          : static_cast<__int128>(x) * x - static_cast<__int128>(d) * y * y;
        auto r = static_cast<std::int64_t>(v % p);
        return r < 0 ? r + p : r;
    };

    const std::int64_t size = q * q;
    std::vector<std::int32_t> units;
    for (std::int64_t x = 0; x < q; ++x)
        for (std::int64_t y = 0; y < q; ++y)
            if (norm_mod_p(x, y) != 0)
                units.push_back(static_cast<std::int32_t>(x * q + y));
    if (static_cast<double>(k) * static_cast<double>(size) * static_cast<double>(units.size()) >
        kResidueWorkBudget)
        throw Error(ErrorCode::BudgetExceeded, "residue search exceeds the work budget");

    auto add = [q](std::int32_t s, std::int32_t u) {
        std::int64_t x = (s / q + u / q) % q;
        std::int64_t y = (s % q + u % q) % q;
        return static_cast<std::int32_t>(x * q + y);
    };

    // parent[j][t]: unit used last in a j-term sum reaching t, -1 if unreached
    std::vector<std::vector<std::int32_t>> parent(static_cast<std::size_t>(k) + 1,
                                                  std::vector<std::int32_t>(static_cast<std::size_t>(size), -1));
    std::vector<std::int32_t> layer{0};
    for (int j = 1; j <= k; ++j) {
        auto& par = parent[static_cast<std::size_t>(j)];
        std::vector<std::int32_t> next;
        for (std::int32_t s : layer)
            for (std::int32_t u : units) {
                std::int32_t t = add(s, u);
                if (par[static_cast<std::size_t>(t)] < 0) {
                    par[static_cast<std::size_t>(t)] = u;
                    next.push_back(t);
                }
            }
        layer = std::move(next);
    }

    ResidueSearch out;
    out.p = p;
    out.depth = depth;
    out.modulus = q;
    out.reachable = static_cast<std::int64_t>(layer.size());
    std::int64_t target_x = ((n % q) + q) % q;
    auto target = static_cast<std::int32_t>(target_x * q);
    if (parent[static_cast<std::size_t>(k)][static_cast<std::size_t>(target)] >= 0) {
        out.found = true;
        std::int32_t t = target;
        for (int j = k; j >= 1; --j) {
            std::int32_t u = parent[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
            out.witness.emplace_back(u / q, u % q);
            std::int64_t x = ((t / q - u / q) % q + q) % q;
            std::int64_t y = ((t % q - u % q) % q + q) % q;
            t = static_cast<std::int32_t>(x * q + y);
        }
    }
    out.consistent = out.found == decision.soluble;
    return out;
}

} // namespace unitsum
