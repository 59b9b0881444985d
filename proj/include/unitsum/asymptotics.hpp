#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "unitsum/bounds.hpp"
#include "unitsum/quadfield.hpp"
#include "unitsum/sums_of_units.hpp"
#include "unitsum/trace_sums.hpp"

namespace unitsum {

struct AsymptoticSpec {
    int k = 0;
    int rho = 0; // floor(k/2)
    Mode variant = Mode::exactly;
    mpq_class leading_constant;
};

/* 1/rho! for even k; 3/rho! (at most k) or 2/rho! (exactly k) for odd k */
mpq_class leading_constant(int k, Mode variant);

AsymptoticSpec asymptotic_spec(int k, Mode variant);

/* Leading term c_k (2 log X / log eta)^rho only. */
Prediction predict_count(const FieldDescriptor& field, int k, std::int64_t X, Mode variant,
                         int precision_bits = 64);

struct ComparisonRow {
    std::int64_t X = 0;
    std::int64_t exact = 0;
    double predicted = 0;
    double ratio = 0;    // exact / predicted, 0 when predicted == 0
    double residual = 0; // exact - predicted
    bool certificate_stable = false;
};

/* One row per grid point.  The grid must be ascending with X >= 2.  An
 * unstable certificate is reported in its row, not thrown. */
std::vector<ComparisonRow> comparison_report(const FieldDescriptor& field, int k,
                                             const std::vector<std::int64_t>& grid, Mode variant,
                                             const BoundConfig& cfg, int precision_bits = 64);

} // namespace unitsum
