#pragma once

#include <cstdint>
#include <functional>

namespace unitsum {

/* Controls the exponent search.  Every unit is +-eta^m and a search at bound
 * B visits all units with |m| <= B. */
struct BoundConfig {
    int initial_exponent_bound = 20;
    int stability_window = 5;
    int max_exponent_bound = 60;
    /* worker threads for the enumeration engine; never changes results */
    unsigned threads = 1;

    void validate() const;
};

/* stable == true: the enumerated object was identical for every bound in
 * [final_bound, final_bound + window_checked]. */
struct StabilityCertificate {
    int final_bound = 0;
    int window_checked = 0;
    bool stable = false;
};

StabilityCertificate combine(const StabilityCertificate& a, const StabilityCertificate& b);

/* Adaptive bound driver.
 *
 * `run(top)` performs the enumeration at exponent bound `top` and returns the
 * largest height among the enumerated objects (-1 when there are none); the
 * height of an object is the smallest bound at which it is found.  The driver
 * raises the working bound until no object first appears inside the window
 * above it, or until the cap is hit.  On return the caller's last `run` was
 * made at `final_bound + window_checked` (or at the cap) and the objects that
 * belong to the answer are exactly those of height <= final_bound. */
StabilityCertificate settle_bound(const BoundConfig& cfg, int start, const std::function<int(int)>& run);

/* ceil(log(scale)/log(eta)) + 8, the starting bound for value searches */
int suggested_start_bound(double log_eta, double scale);

} // namespace unitsum
