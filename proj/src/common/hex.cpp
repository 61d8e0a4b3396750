#include "qobjsim/common/hex.hpp"

#include <stdexcept>

namespace qobjsim {

namespace {

int nibble_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

char nibble_char(int v) { return v < 10 ? char('0' + v) : char('A' + v - 10); }

}  // namespace

std::string encode_hex(const std::vector<uint8_t>& slot_bits) {
  size_t n = slot_bits.size();
  size_t nibbles = (n + 3) / 4;
  std::string digits;
  bool leading = true;
  for (size_t k = nibbles; k-- > 0;) {
    int v = 0;
    for (int b = 3; b >= 0; --b) {
      size_t slot = k * 4 + static_cast<size_t>(b);
      v <<= 1;
      if (slot < n && slot_bits[slot]) v |= 1;
    }
    if (v == 0 && leading && k != 0) continue;
    leading = false;
    digits.push_back(nibble_char(v));
  }
  if (digits.empty()) digits = "0";
  return "0x" + digits;
}

bool is_hex_literal(const std::string& s) {
  if (s.size() < 3) return false;
  if (s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) return false;
  for (size_t i = 2; i < s.size(); ++i) {
    if (nibble_value(s[i]) < 0) return false;
  }
  return true;
}

std::vector<uint8_t> decode_hex(const std::string& hex, size_t slots) {
  if (!is_hex_literal(hex)) {
    throw std::invalid_argument("not a hex literal: '" + hex + "'");
  }
  std::vector<uint8_t> bits(slots, 0);
  size_t bit = 0;
  for (size_t i = hex.size(); i-- > 2;) {
    int v = nibble_value(hex[i]);
    for (int b = 0; b < 4; ++b, ++bit) {
      bool set = (v >> b) & 1;
      if (bit < slots) {
        bits[bit] = set ? 1 : 0;
      } else if (set) {
        throw std::invalid_argument("hex value '" + hex + "' does not fit in " +
                                    std::to_string(slots) + " slots");
      }
    }
  }
  return bits;
}

uint64_t hex_to_u64(const std::string& hex) {
  if (!is_hex_literal(hex)) {
    throw std::invalid_argument("not a hex literal: '" + hex + "'");
  }
  uint64_t v = 0;
  for (size_t i = 2; i < hex.size(); ++i) {
    if (v >> 60) throw std::invalid_argument("hex value too wide: '" + hex + "'");
    v = (v << 4) | static_cast<uint64_t>(nibble_value(hex[i]));
  }
  return v;
}

}  // namespace qobjsim
