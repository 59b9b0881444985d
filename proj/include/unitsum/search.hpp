#pragma once

#include <cstdint>
#include <vector>

#include "unitsum/quadfield.hpp"

namespace unitsum::search {

/* The units +-eta^m with |m| <= bound, indexed in increasing real order:
 * -eta^B < ... < -eta^-B < eta^-B < ... < eta^B. */
class UnitTable {
public:
    UnitTable(const FieldDescriptor& field, int bound);

    const FieldDescriptor& field() const { return *field_; }
    int bound() const { return bound_; }
    std::size_t size() const { return units_.size(); }
    const QuadInt& unit(std::size_t i) const { return units_[i]; }
    UnitExponent exponent(std::size_t i) const;
    int height(std::size_t i) const;

private:
    const FieldDescriptor* field_;
    int bound_;
    std::vector<QuadInt> units_;
};

/* A multiset of units, as nondecreasing table indices. */
struct ClassHit {
    std::vector<std::uint32_t> idx;
    std::int64_t value = 0;
    int height = 0; // max |m| over the coordinates
};

/* All r-element multisets of table units whose sum is a rational integer n
 * with lo <= n <= hi and which have no vanishing subsum.  Meet in the
 * middle: each multiset is split once, into its floor(r/2) smallest entries
 * and the rest, and the halves are joined on the irrational coordinate.
 * Output is sorted by idx and does not depend on `threads`. */
std::vector<ClassHit> subsum_free_sums(const UnitTable& table, int r, std::int64_t lo, std::int64_t hi,
                                       unsigned threads = 1);

} // namespace unitsum::search
