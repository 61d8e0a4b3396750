#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qobjsim {

/// Memory state encoding. Slot 0 is the least significant bit, so the bit
/// string "b_{n-1}...b_1 b_0" reads slot n-1 leftmost. Output carries no
/// zero padding ("0x0", "0x1D", ...); decoding accepts any width and is
/// case-insensitive.
std::string encode_hex(const std::vector<uint8_t>& slot_bits);

/// Inverse of encode_hex for a fixed slot count. Extra high bits in the
/// input are an error; missing ones read as zero.
std::vector<uint8_t> decode_hex(const std::string& hex, size_t slots);

/// Numeric value of a hex literal such as "0x1C" (at most 64 bits).
uint64_t hex_to_u64(const std::string& hex);

bool is_hex_literal(const std::string& s);

}  // namespace qobjsim
