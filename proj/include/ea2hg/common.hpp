#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ea2hg {

// Bitmask over at most kMaxWidth coordinates; bit i = coordinate i.
// One machine word holds every vector, element support, and thick mask
// in this library.
using Mask = std::uint64_t;

inline constexpr unsigned kMaxWidth = 62;

inline unsigned popcount(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

inline Mask full_mask(unsigned width) { return (Mask{1} << width) - 1; }

// Calls fn(a) for every submask a of m in ascending numeric order,
// including 0 and m itself.
template <typename F>
void for_each_submask(Mask m, F&& fn) {
    Mask a = 0;
    while (true) {
        fn(a);
        if (a == m) break;
        a = (a - m) & m;
    }
}

// A brute-force or output-size guard was exceeded. The CLI reports these
// with exit code 3.
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// The element set handed to recognize() is not a closed subset.
struct NotClosedError : std::runtime_error {
    explicit NotClosedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ea2hg
