#pragma once

#include <vector>

#include "unitsum/bounds.hpp"
#include "unitsum/quadfield.hpp"

namespace unitsum {

/* An ordered list of units of one field. */
using UnitTuple = std::vector<QuadInt>;

struct UnitEquationSolutions {
    std::vector<UnitTuple> solutions;
    StabilityCertificate cert;
};

/* Non-degenerate solutions of v_1 + ... + v_T = 1 in units, every ordering
 * listed.  "Non-degenerate" means no nonempty subset of the v_i sums to 0. */
UnitEquationSolutions enumerate_unit_equation_solutions(const FieldDescriptor& field, int T,
                                                        const BoundConfig& cfg);

/* Same set, one sorted representative per permutation class. */
UnitEquationSolutions unit_equation_classes(const FieldDescriptor& field, int T, const BoundConfig& cfg);

struct ExceptionalSets {
    /* sets[t] is the coefficient set for t, sorted by real value */
    std::vector<std::vector<QuadInt>> sets;
    StabilityCertificate cert;
};

/* The increasing chain {+-1} = U_0 = U_1 <= U_2 <= ... <= U_{t_max}.  U_2
 * adds the d = 5 exceptional pairs; for t >= 3, U_t adds u*v_i for the
 * first t coordinates v of each solution in S_{2t-1} and each unit u with
 * u * (v_1 + ... + v_t) a nonzero rational integer. */
ExceptionalSets build_exceptional_sets(const FieldDescriptor& field, int t_max, const BoundConfig& cfg);

struct VanishingProfile {
    std::vector<int> lengths; // ascending
    StabilityCertificate cert;
};

/* Lengths r <= r_max of minimal vanishing unit sums u_1 + ... + u_r = 0.
 * r belongs to the profile iff S_{r-1} is nonempty. */
VanishingProfile vanishing_sum_profile(const FieldDescriptor& field, int r_max, const BoundConfig& cfg);

/* 1 is a sum of two units.  Decided from the classification of two-unit
 * sums with rational value, without any search. */
bool is_exceptional(const FieldDescriptor& field);

/* Units of O_L in the d = 5 exceptional two-unit relations, empty for d != 5. */
std::vector<QuadInt> exceptional_pair_units(const FieldDescriptor& field);

} // namespace unitsum
