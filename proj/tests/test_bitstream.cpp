/* The copyright in this software is being made available under the BSD
 * Licence, included below.  This software may be subject to other third
 * party and contributor rights, including patent rights, and no such
 * rights are granted under this licence.
 *
 * Copyright (c) 2026, the pcwf authors
 * All rights reserved.
 *
 * Redistribution and use in source and binary forms, with or without
 * modification, are permitted provided that the following conditions are met:
 *
 * * Redistributions of source code must retain the above copyright
 *   notice, this list of conditions and the following disclaimer.
 *
 * * Redistributions in binary form must reproduce the above copyright
 *   notice, this list of conditions and the following disclaimer in the
 *   documentation and/or other materials provided with the distribution.
 *
 * * Neither the name of the copyright holder nor the names of its
 *   contributors may be used to endorse or promote products derived from
 *   this software without specific prior written permission.
 *
 * THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
 * AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
 * IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
 * ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE
 * LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
 * CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
 * SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
 * INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
 * CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
 * ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
 * POSSIBILITY OF SUCH DAMAGE.
 */

#include "doctest.h"

#include "pcwf/bitstream.h"
#include "test_util.h"

#include <string>

using namespace pcwf;

namespace {

QuantizedFilter
randomFilter(std::mt19937_64& rng)
{
  QuantizedFilter q;
  for (auto& v : q.raw)
    v = int16_t(uint16_t(rng()));
  return q;
}

// Random payload stream that is consistent with its header.
PayloadStream
randomStream(std::mt19937_64& rng)
{
  PayloadStream s;
  s.header.qp = uint8_t(rng() % 64);
  s.header.mode = EnhancementMode(rng() % 3);
  s.header.gofSize =
    s.header.mode == EnhancementMode::kBwf ? 1 : uint8_t(1 + rng() % 10);
  const bool vcwf = s.header.mode == EnhancementMode::kVcwf;
  const std::size_t frames = rng() % 12;
  for (std::size_t f = 0; f < frames; f++) {
    FramePayload p;
    const bool first = carriesCoefficients(s.header, f);
    for (auto& b : p.componentFlags)
      b = rng() & 1;
    if (vcwf) {
      bool any = false;
      for (auto& b : p.classFlags)
        any |= (b = rng() & 1);
      p.componentFlags[0] = any;
    }
    if (first) {
      for (int c = 0; c < 3; c++)
        if (p.componentFlags[c] && !(vcwf && c == 0))
          p.componentCoeffs[c] = randomFilter(rng);
      for (int j = 0; j < 5; j++)
        if (p.classFlags[j])
          p.classCoeffs[j] = randomFilter(rng);
    }
    s.frames.push_back(p);
  }
  return s;
}

// Reads `bits` bits MSB first starting at absolute bit position pos.
uint32_t
readBits(const std::vector<uint8_t>& b, std::size_t pos, int bits)
{
  uint32_t v = 0;
  for (int i = 0; i < bits; i++, pos++)
    v = (v << 1) | ((b[pos / 8] >> (7 - pos % 8)) & 1);
  return v;
}

}  // namespace

TEST_CASE("fixed point quantisation")
{
  auto id = quantizeFilter(FilterCoefficients::identity());
  CHECK(id.q.raw == std::array<int16_t, 7>{0x4000, 0, 0, 0, 0, 0, 0});
  CHECK_FALSE(id.clamped);

  FilterCoefficients big{{3.0, -2.5, 1.99999, -2.0, 0.5, 0, 0}};
  auto q = quantizeFilter(big);
  CHECK(q.clamped);
  CHECK(q.q.raw[0] == INT16_MAX);
  CHECK(q.q.raw[1] == INT16_MIN);
  CHECK(q.q.raw[3] == INT16_MIN);
  CHECK(dequantizeFilter(q.q).h[3] == -2.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 1.9999);
  for (int i = 0; i < 1000; i++) {
    FilterCoefficients h;
    for (int j = 0; j < 7; j++)
      h.h.push_back(u(rng));
    auto r = quantizeFilter(h);
    CHECK_FALSE(r.clamped);
    const auto d = dequantizeFilter(r.q);
    for (int j = 0; j < 7; j++)
      CHECK(std::abs(d.h[j] - h.h[j]) <= std::ldexp(1.0, -15));
  }
}

TEST_CASE("header-only and flag-only streams")
{
  PayloadStream s;
  auto bytes = serialize(s);
  CHECK(bytes.size() == StreamHeader::kSize);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "PCWF");
  CHECK(bytes[4] == 1);
  CHECK(bytes[7] == 7);
  CHECK(parse(bytes) == s);

  s.frames.push_back(FramePayload{});
  bytes = serialize(s);
  CHECK(bytes.size() == StreamHeader::kSize + 1);
  CHECK(bytes.back() == 0);
  CHECK(parse(bytes) == s);
}

TEST_CASE("identity coefficients on the second component")
{
  PayloadStream s;
  FramePayload p;
  p.componentFlags[1] = true;
  p.componentCoeffs[1] = quantizeFilter(FilterCoefficients::identity()).q;
  s.frames.push_back(p);
  const auto bytes = serialize(s);
  CHECK(bytes.size() == StreamHeader::kSize + (3 + 112 + 7) / 8);
  CHECK(framePayloadBits(s.header, p) == 3 + 112);

  const std::size_t base = StreamHeader::kSize * 8;
  CHECK(readBits(bytes, base, 3) == 0b010);
  // Each tap: low byte then high byte.
  const uint32_t lo = readBits(bytes, base + 3, 8);
  const uint32_t hi = readBits(bytes, base + 11, 8);
  CHECK((lo | hi << 8) == 0x4000);
  for (int t = 1; t < 7; t++)
    CHECK(readBits(bytes, base + 3 + 16 * t, 16) == 0);
  CHECK(parse(bytes).frames[0].componentCoeffs[1]->raw[0] == 0x4000);
}

TEST_CASE("VCWF bit accounting")
{
  std::mt19937_64 rng(99);
  for (int t = 0; t < 500; t++) {
    auto r = randomStream(rng);
    if (r.header.mode != EnhancementMode::kVcwf || r.frames.empty())
      continue;
    const auto& p = r.frames[0];
    int flagged = 0;
    for (bool b : p.classFlags)
      flagged += b;
    flagged += p.componentFlags[1] + p.componentFlags[2];
    const int expect = 2 + 1 + (p.componentFlags[0] ? 5 : 0) + 112 * flagged;
    CHECK(framePayloadBits(r.header, p) == expect);

    PayloadStream one{r.header, {p}};
    CHECK(serialize(one).size() == StreamHeader::kSize + std::size_t(expect + 7) / 8);
  }
}

TEST_CASE("serialize and parse round trip")
{
  std::mt19937_64 rng(2718);
  for (int t = 0; t < 10000; t++) {
    const auto s = randomStream(rng);
    const auto bytes = serialize(s);
    std::size_t expect = StreamHeader::kSize;
    for (const auto& f : s.frames)
      expect += std::size_t(framePayloadBits(s.header, f) + 7) / 8;
    REQUIRE(bytes.size() == expect);
    REQUIRE(parse(bytes) == s);
  }
}

TEST_CASE("serializer rejects inconsistent payloads")
{
  PayloadStream s;
  s.header.mode = EnhancementMode::kCiwf;
  s.header.gofSize = 4;
  FramePayload first, second;
  first.componentFlags[2] = true;
  second.componentFlags[2] = true;
  second.componentCoeffs[2] = QuantizedFilter{};
  s.frames = {first, second};
  CHECK_THROWS_AS(serialize(s), ValidationError);

  PayloadStream v;
  v.header.mode = EnhancementMode::kVcwf;
  FramePayload p;
  p.classFlags[2] = true;
  p.classCoeffs[2] = QuantizedFilter{};
  v.frames = {p};
  CHECK_THROWS_AS(serialize(v), ValidationError);  // flag_Luma not set
}

TEST_CASE("parse errors")
{
  std::mt19937_64 rng(5);
  PayloadStream s;
  s.header.mode = EnhancementMode::kBwf;
  s.header.gofSize = 1;
  for (int f = 0; f < 3; f++) {
    FramePayload p;
    p.componentFlags[0] = true;
    p.componentCoeffs[0] = randomFilter(rng);
    s.frames.push_back(p);
  }
  auto bytes = serialize(s);

  SUBCASE("bad magic")
  {
    auto b = bytes;
    std::copy_n("XXXX", 4, b.begin());
    try {
      parse(b);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.offset == 0);
    }
  }

  SUBCASE("reserved mode and bad version")
  {
    auto b = bytes;
    b[8] = 3;
    CHECK_THROWS_AS(parse(b), ParseError);
    b = bytes;
    b[4] = 2;
    CHECK_THROWS_AS(parse(b), ParseError);
  }

  SUBCASE("truncated mid-coefficient names the frame")
  {
    // Each frame is 3 + 112 bits = 15 bytes; cut inside frame 1.
    std::vector<uint8_t> b(bytes.begin(), bytes.begin() + StreamHeader::kSize + 15 + 7);
    try {
      parse(b);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.frame == 1);
      CHECK(std::string(e.what()).find("frame 1") != std::string::npos);
    }
  }

  SUBCASE("truncated header")
  {
    std::vector<uint8_t> b(bytes.begin(), bytes.begin() + 6);
    CHECK_THROWS_AS(parse(b), ParseError);
  }

  SUBCASE("non-zero padding")
  {
    PayloadStream z;
    z.frames.push_back(FramePayload{});
    auto b = serialize(z);
    b.back() |= 0x01;
    CHECK_THROWS_AS(parse(b), ParseError);
  }
}
