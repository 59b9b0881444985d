#include "unitsum/asymptotics.hpp"

#include <cmath>

#include "unitsum/errors.hpp"

namespace unitsum {

mpq_class leading_constant(int k, Mode variant)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    const int rho = k / 2;
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(rho));
    int numerator = 1;
    if (k % 2 == 1)
        numerator = variant == Mode::at_most ? 3 : 2;
    mpq_class c(numerator, fact);
    c.canonicalize();
    return c;
}

AsymptoticSpec asymptotic_spec(int k, Mode variant)
{
    return {k, k / 2, variant, leading_constant(k, variant)};
}

Prediction predict_count(const FieldDescriptor& field, int k, std::int64_t X, Mode variant, int precision_bits)
{
    if (X < 2)
        throw Error(ErrorCode::InvalidArgument, "prediction needs X >= 2");
    const double c = leading_constant(k, variant).get_d();
    Prediction p = predict_trace_sums(field, k / 2, X, precision_bits);
    return {c * p.value, c * p.error_bound};
}

std::vector<ComparisonRow> comparison_report(const FieldDescriptor& field, int k,
                                             const std::vector<std::int64_t>& grid, Mode variant,
                                             const BoundConfig& cfg, int precision_bits)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 2)
            throw Error(ErrorCode::InvalidArgument, "grid points must be at least 2");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw Error(ErrorCode::InvalidArgument, "grid must be strictly ascending");
    }
    std::vector<ComparisonRow> rows;
    for (std::int64_t X : grid) {
        CountResult exact = count_values(field, k, X, variant, cfg);
        ComparisonRow row;
        row.X = X;
        row.exact = exact.count;
        row.predicted = predict_count(field, k, X, variant, precision_bits).value;
        row.ratio = row.predicted > 0 ? static_cast<double>(row.exact) / row.predicted : 0.0;
        row.residual = static_cast<double>(row.exact) - row.predicted;
        row.certificate_stable = exact.cert.stable;
        rows.push_back(row);
    }
    return rows;
}

} // namespace unitsum
