#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "unitsum/bounds.hpp"
#include "unitsum/quadfield.hpp"

namespace unitsum {

inline constexpr std::size_t kMaxSubsumTerms = 24;

/* True iff some nonempty subset of `terms` (the full set included) sums to
 * zero.  Exhaustive up to 16 terms, meet-in-the-middle above. */
bool has_vanishing_subsum(std::span<const QuadInt> terms);

/* Query for the number of unit tuples (u_1..u_ell), |u_i| >= 1, with
 * |sum Tr(c_i u_i)| <= X and no vanishing subsum among the 2*ell terms
 * c_i u_i, c_i' u_i'.  Coefficients are nonzero elements of O_L. */
struct TraceSumQuery {
    const FieldDescriptor* field = nullptr;
    std::vector<QuadInt> coefficients;
    std::int64_t X = 1;

    std::size_t ell() const { return coefficients.size(); }
};

struct TraceSumCount {
    std::int64_t count = 0;
    StabilityCertificate cert;
};

TraceSumCount count_trace_sums(const TraceSumQuery& query, const BoundConfig& cfg);

struct Prediction {
    double value = 0;
    double error_bound = 0;
};

/* (2 log X / log eta)^ell */
Prediction predict_trace_sums(const FieldDescriptor& field, int ell, std::int64_t X,
                              int precision_bits = 64);

struct GapEstimate {
    mpq_class lower;              // rational lower approximation of the minimum
    std::vector<int> exponents;   // minimising (m_2, ..., m_q)
    QuadInt minimiser;            // the minimising sum, exactly
    int depth = 0;
};

/* min |c_1 + c_2 eta^{-m_2} + ... + c_q eta^{-m_q}| over 0 <= m_2 <= ... <= m_q
 * <= depth, restricted to sums without a vanishing subsum.  This is an
 * empirical envelope at finite depth, not a certified constant. */
GapEstimate gap_constant_estimate(const FieldDescriptor& field, std::span<const QuadInt> c, int depth);

} // namespace unitsum
