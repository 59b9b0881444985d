#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unitsum/quadfield.hpp"

namespace unitsum {

TwoSplitting splitting_of_two(const FieldDescriptor& field);

enum class LocalReason { odd_prime_unit_construction, parity_match, two_inert_F4, obstruction_mod_2 };

const char* to_string(LocalReason r);

/* rational + omega * w, with p-integral rational coordinates; omega is
 * sqrt(d), or (1 + sqrt(d))/2 when d = 1 mod 4 */
struct LocalUnit {
    mpq_class rational;
    mpq_class omega;

    /* coordinates modulo `modulus`, which must be coprime to the denominators */
    std::pair<std::int64_t, std::int64_t> residue(std::int64_t modulus) const;
    std::string to_string() const;
};

struct LocalDecision {
    std::int64_t p = 0;
    bool soluble = false;
    LocalReason reason = LocalReason::obstruction_mod_2;
    std::optional<std::vector<LocalUnit>> witness;
};

bool is_prime(std::int64_t p);

/* u_1 + ... + u_k = n in units of Z_p (x) O_L */
LocalDecision local_decision(const FieldDescriptor& field, int k, std::int64_t n, std::int64_t p);

/* Solubility at every place; only p = 2 can fail. */
bool everywhere_locally_soluble(const FieldDescriptor& field, int k, std::int64_t n);

inline constexpr std::int64_t kResidueRingBudget = 1'000'000;
inline constexpr double kResidueWorkBudget = 4e8;
inline constexpr int kResidueMaxTerms = 6;

int default_residue_depth(std::int64_t p);

struct ResidueSearch {
    std::int64_t p = 0;
    int depth = 0;
    std::int64_t modulus = 0; // p^depth
    bool found = false;
    /* unit residues (x, y) = x + y*omega mod p^depth summing to n */
    std::vector<std::pair<std::int64_t, std::int64_t>> witness;
    /* number of residues reachable as sums of k units, out of modulus^2 */
    std::int64_t reachable = 0;
    bool consistent = false;
};

/* Exhaustive sumset search in (Z/p^depth) (x) O_L; `consistent` records
 * agreement with local_decision. */
ResidueSearch verify_by_residue_search(const FieldDescriptor& field, int k, std::int64_t n, std::int64_t p,
                                       int depth);

} // namespace unitsum
