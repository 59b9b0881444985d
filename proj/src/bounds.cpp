#include "unitsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unitsum/errors.hpp"

namespace unitsum {

void BoundConfig::validate() const
{
    if (initial_exponent_bound < 1)
        throw Error(ErrorCode::InvalidArgument, "initial exponent bound must be at least 1");
    if (stability_window < 1)
        throw Error(ErrorCode::InvalidArgument, "stability window must be at least 1");
    if (initial_exponent_bound > max_exponent_bound)
        throw Error(ErrorCode::InvalidArgument,
                    "initial exponent bound " + std::to_string(initial_exponent_bound) +
                        " exceeds the cap " + std::to_string(max_exponent_bound));
    if (threads < 1)
        throw Error(ErrorCode::InvalidArgument, "threads must be at least 1");
}

StabilityCertificate combine(const StabilityCertificate& a, const StabilityCertificate& b)
{
    return {std::max(a.final_bound, b.final_bound), std::min(a.window_checked, b.window_checked),
            a.stable && b.stable};
}

StabilityCertificate settle_bound(const BoundConfig& cfg, int start, const std::function<int(int)>& run)
{
    cfg.validate();
    const int cap = cfg.max_exponent_bound;
    const int window = cfg.stability_window;
    int b = std::clamp(start, 1, cap);
    for (;;) {
        int top = std::min(b + window, cap);
        int highest = run(top);
        if (highest <= b)
            return {b, top - b, top == b + window};
        if (top == cap)
            return {cap, 0, false};
        b = highest;
    }
}

int suggested_start_bound(double log_eta, double scale)
{
    scale = std::max(scale, 1.0);
    return static_cast<int>(std::ceil(std::log(scale) / log_eta)) + 8;
}

} // namespace unitsum
