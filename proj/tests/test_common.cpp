#include <doctest.h>

#include "qobjsim/common/hex.hpp"
#include "qobjsim/common/iso8601.hpp"
#include "qobjsim/common/rng.hpp"

using namespace qobjsim;

TEST_CASE("hex encoding uses slot 0 as the least significant bit") {
  // bit string "1010" = decimal 10
  CHECK(encode_hex({0, 1, 0, 1}) == "0xA");
  CHECK(encode_hex({0, 0, 0, 0}) == "0x0");
  // bit string "11101" = 0x1D
  CHECK(encode_hex({1, 0, 1, 1, 1}) == "0x1D");
  CHECK(encode_hex({1}) == "0x1");
  CHECK(encode_hex({}) == "0x0");
}

TEST_CASE("hex decoding accepts any width and case") {
  CHECK(decode_hex("0x0", 4) == std::vector<uint8_t>{0, 0, 0, 0});
  CHECK(decode_hex("0x00", 4) == std::vector<uint8_t>{0, 0, 0, 0});
  CHECK(decode_hex("0x1d", 5) == std::vector<uint8_t>{1, 0, 1, 1, 1});
  CHECK(decode_hex("0x1D", 5) == std::vector<uint8_t>{1, 0, 1, 1, 1});
  CHECK_THROWS(decode_hex("0x10", 4));  // bit 4 set but only 4 slots
  CHECK_THROWS(decode_hex("12", 4));
  CHECK(hex_to_u64("0x1C") == 28);
}

TEST_CASE("hex round-trips exhaustively up to 16 slots") {
  for (size_t slots = 1; slots <= 16; ++slots) {
    uint64_t limit = 1ULL << slots;
    // Exhaustive for small widths; strided above 2^12 to keep runtime sane.
    uint64_t step = slots <= 12 ? 1 : 37;
    for (uint64_t v = 0; v < limit; v += step) {
      std::vector<uint8_t> bits(slots);
      for (size_t b = 0; b < slots; ++b) bits[b] = (v >> b) & 1;
      std::string h = encode_hex(bits);
      CHECK(decode_hex(h, slots) == bits);
      CHECK(hex_to_u64(h) == v);
    }
  }
}

TEST_CASE("iso8601 parsing") {
  CHECK(is_iso8601("2018-04-02 15:00:00Z"));
  CHECK(is_iso8601("2018-04-02T15:00:00Z"));
  CHECK(is_iso8601("2018-04-02"));
  CHECK(is_iso8601("2018-04-02T15:00:00.123+02:00"));
  CHECK_FALSE(is_iso8601("02/04/2018"));
  CHECK_FALSE(is_iso8601("2018-13-02"));
  CHECK_FALSE(is_iso8601(""));

  auto t0 = parse_iso8601("1970-01-01 00:00:00Z");
  REQUIRE(t0.has_value());
  CHECK(*t0 == 0);
  auto t1 = parse_iso8601("1970-01-02T01:00:00+01:00");
  REQUIRE(t1.has_value());
  CHECK(*t1 == 86400);
  CHECK(format_iso8601(0) == "1970-01-01 00:00:00Z");
}

TEST_CASE("shot rng is keyed and order independent") {
  ShotRng a(42, 1, 7);
  ShotRng b(42, 1, 7);
  ShotRng c(42, 1, 8);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  CHECK(ShotRng(42, 1, 7).next_u64() != c.next_u64());
  CHECK(ShotRng(1, 0, 0).next_u64() != ShotRng(2, 0, 0).next_u64());
}

TEST_CASE("shot rng distributions look sane") {
  ShotRng r(7, 0, 0);
  double sum = 0, sumsq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double x = r.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.02);

  ShotRng g(9, 0, 0);
  sum = 0;
  for (int i = 0; i < n; ++i) {
    double x = g.next_gaussian();
    sum += x;
    sumsq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sumsq / n - 1.0) < 0.05);
}
