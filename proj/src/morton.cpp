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

#include "pcwf/morton.h"

namespace pcwf {

namespace {

  // Spread the low 21 bits of v so bit i moves to bit 3i.
  uint64_t spreadBits(uint64_t v)
  {
    v &= 0x1fffff;
    v = (v | v << 32) & 0x1f00000000ffffull;
    v = (v | v << 16) & 0x1f0000ff0000ffull;
    v = (v | v << 8) & 0x100f00f00f00f00full;
    v = (v | v << 4) & 0x10c30c30c30c30c3ull;
    v = (v | v << 2) & 0x1249249249249249ull;
    return v;
  }

  uint32_t compactBits(uint64_t v)
  {
    v &= 0x1249249249249249ull;
    v = (v ^ (v >> 2)) & 0x10c30c30c30c30c3ull;
    v = (v ^ (v >> 4)) & 0x100f00f00f00f00full;
    v = (v ^ (v >> 8)) & 0x1f0000ff0000ffull;
    v = (v ^ (v >> 16)) & 0x1f00000000ffffull;
    v = (v ^ (v >> 32)) & 0x1fffff;
    return uint32_t(v);
  }

  // Coordinate fields restricted to the 63 bits a position can occupy.
  constexpr uint64_t kLow63 = ~(uint64_t(1) << 63);
  constexpr std::array<uint64_t, 3> kFieldMask{
    kDimMask & kLow63, (kDimMask << 1) & kLow63, (kDimMask << 2) & kLow63};

  // Highest bit of each 21-bit field: set in the offset means a negative delta.
  constexpr std::array<uint64_t, 3> kFieldSign{
    uint64_t(1) << 60, uint64_t(1) << 61, uint64_t(1) << 62};

}  // namespace

//============================================================================

MortonCode
mortonEncode(const VoxelPosition& p)
{
  if (p.x > kMaxCoordinate || p.y > kMaxCoordinate || p.z > kMaxCoordinate)
    throw ValidationError(
      "coordinate exceeds 21 bits (" + std::to_string(p.x) + ", "
      + std::to_string(p.y) + ", " + std::to_string(p.z) + ")");
  return spreadBits(p.z) | spreadBits(p.y) << 1 | spreadBits(p.x) << 2;
}

//----------------------------------------------------------------------------

VoxelPosition
mortonDecode(MortonCode code)
{
  return {compactBits(code >> 2), compactBits(code >> 1), compactBits(code)};
}

//----------------------------------------------------------------------------

std::optional<MortonCode>
mortonOffsetAdd(MortonCode a, uint64_t offset)
{
  MortonCode result = 0;
  for (int d = 0; d < 3; d++) {
    const uint64_t field = kFieldMask[d];
    const uint64_t lhs = a | ~field;
    const uint64_t sum = lhs + (offset & field);
    const bool carry = sum < lhs;
    const bool negative = offset & kFieldSign[d];
    // A non-negative delta must not carry out of the field; a negative one
    // (stored as 2^21 + delta) must.
    if (carry != negative)
      return std::nullopt;
    result |= sum & field;
  }
  return result;
}

//----------------------------------------------------------------------------

MortonCode
mortonOffsetAddUnsaturated(MortonCode a, uint64_t offset)
{
  const uint64_t m0 = kDimMask, m1 = kDimMask << 1, m2 = kDimMask << 2;
  return ((a & m0) + (offset & m0)) | ((a & m1) + (offset & m1))
    | ((a & m2) + (offset & m2));
}

}  // namespace pcwf
