#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nbl/window.hpp"

namespace nbl {

// Debug dump of a ±1 window. All integers little-endian.
//
//   offset  size  field
//   0       4     magic "NBLW"
//   4       4     u32 format version (1)
//   8       8     u64 source seed
//   16      8     u64 window start
//   24      8     u64 window length L
//   32      4     u32 byte length E of the expression text
//   36      E     canonical form of the expression, ASCII, no terminator
//   36+E    8*W   W = ceil(L/64) u64 words; sample j is bit j%64 of word j/64,
//                 bit 1 <-> +1, padding bits zero

inline constexpr std::uint32_t kWindowDumpVersion = 1;

struct WindowDump {
    std::uint64_t seed = 0;
    std::string expr;
    BitWindow window{0, 0};
};

void write_window_dump(std::ostream& out, std::uint64_t seed, const std::string& expr,
                       const BitWindow& w);
/// Throws Error on bad magic, unknown version or truncated input.
WindowDump read_window_dump(std::istream& in);

}  // namespace nbl
