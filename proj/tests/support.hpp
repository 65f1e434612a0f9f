#pragma once

#include <charconv>
#include <random>
#include <string>

#include "diskconn/geometry.hpp"

// Shared helpers for the test suites. Random draws mirror the generators'
// technique (raw mt19937_64 plus exact arithmetic) so test inputs are as
// reproducible as the library's own instances.
namespace testsupport {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline diskconn::Point random_point(std::mt19937_64& rng, double extent) {
    return {uniform_in(rng, 0.0, extent), uniform_in(rng, 0.0, extent)};
}

inline diskconn::Site random_site(std::mt19937_64& rng, diskconn::SiteId id, double extent,
                                  double radius_min, double radius_max) {
    return {id, random_point(rng, extent), uniform_in(rng, radius_min, radius_max)};
}

inline std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

}  // namespace testsupport
