#pragma once

#include <string_view>

namespace subseries {

/// Three-valued outcome of a finite-horizon check of an infinitary relation.
/// Unknown means the horizon did not provide enough evidence either way.
enum class TriVerdict { Holds, Fails, Unknown };

constexpr std::string_view to_string(TriVerdict v) {
    switch (v) {
        case TriVerdict::Holds: return "Holds";
        case TriVerdict::Fails: return "Fails";
        default: return "Unknown";
    }
}

constexpr TriVerdict negate(TriVerdict v) {
    switch (v) {
        case TriVerdict::Holds: return TriVerdict::Fails;
        case TriVerdict::Fails: return TriVerdict::Holds;
        default: return TriVerdict::Unknown;
    }
}

/// Conjunction for composed relations: any Fails wins, then Unknown.
constexpr TriVerdict conjoin(TriVerdict a, TriVerdict b) {
    if (a == TriVerdict::Fails || b == TriVerdict::Fails) return TriVerdict::Fails;
    if (a == TriVerdict::Unknown || b == TriVerdict::Unknown) return TriVerdict::Unknown;
    return TriVerdict::Holds;
}

}  // namespace subseries
