#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "unitsum/bounds.hpp"
#include "unitsum/quadfield.hpp"
#include "unitsum/unit_equation.hpp"

namespace unitsum {

enum class Mode { exactly, at_most };
enum class Shape { S1, S2, S3, generic };

const char* to_string(Mode m);
const char* to_string(Shape s);
Mode parse_mode(std::string_view s);

/* A permutation class of unit tuples summing to a rational integer, held by
 * its canonical representative. */
struct RepresentationClass {
    UnitTuple coords;
    std::int64_t value = 0;
    Shape shape = Shape::generic;
    bool subsum_free = true;
};

struct ValueSetResult {
    std::vector<std::int64_t> values; // ascending
    Mode mode = Mode::exactly;
    int k = 0;
    StabilityCertificate cert;
};

/* Integers n with |n| <= X that are sums of exactly / at most k units.
 *
 * Both modes are assembled from the subsum-free value sets F_r (sums of r
 * units without a vanishing subsum).  at_most is {0} together with F_1..F_k.
 * exactly is the union of F_r over those r for which k - r is a sum of
 * minimal vanishing-sum lengths, with 0 present iff k itself is such a sum. */
ValueSetResult value_set(const FieldDescriptor& field, int k, std::int64_t X, Mode mode,
                         const BoundConfig& cfg);

struct CountResult {
    std::int64_t count = 0;
    StabilityCertificate cert;
};

/* card{n in value_set : |n| <= X} */
CountResult count_values(const FieldDescriptor& field, int k, std::int64_t X, Mode mode,
                         const BoundConfig& cfg);

struct Representations {
    std::vector<RepresentationClass> classes;
    StabilityCertificate cert;
};

/* Subsum-free representation classes of n by at most k units, ordered by
 * length and then canonically. */
Representations enumerate_representations(const FieldDescriptor& field, std::int64_t n, int k,
                                          const BoundConfig& cfg);

/* All subsum-free representation classes of length <= k with 1 <= |n| <= X. */
Representations subsum_free_representations(const FieldDescriptor& field, int k, std::int64_t X,
                                            const BoundConfig& cfg);

/* Number of n, |n| <= X, with at least two inequivalent subsum-free
 * representations of length <= k. */
CountResult count_non_unique(const FieldDescriptor& field, int k, std::int64_t X, const BoundConfig& cfg);

/* Exact total order used for canonical forms: real value, then the real
 * value of the conjugate. */
bool canonical_less(const QuadInt& x, const QuadInt& y);

UnitTuple canonicalize(const UnitTuple& t);

Shape classify_shape(const UnitTuple& t);

/* n = S_(v, v', xi) */
struct TraceFormReduction {
    UnitTuple v;  // |v_i| >= 1
    UnitTuple xi;
    std::int64_t value = 0;

    /* (v, v', xi) */
    UnitTuple expanded() const;
};

/* Rewrites a subsum-free unit sum with nonzero rational integer value as
 * traces of units plus at most a few coefficients from the exceptional
 * sets, with 2*|v| + |xi| <= |t| and no vanishing subsum in the result. */
TraceFormReduction reduce_to_trace_form(const FieldDescriptor& field, const UnitTuple& t);

} // namespace unitsum
