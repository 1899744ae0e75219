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

#pragma once

#include "pcwf/point_cloud.h"

#include <array>
#include <cstdint>
#include <optional>

namespace pcwf {

//============================================================================
// Interleaved 63-bit key: bit 3i holds z_i, bit 3i+1 holds y_i and bit
// 3i+2 holds x_i, so z is least significant within each triple.

using MortonCode = uint64_t;

// Selects the z bits; shifted left by one or two it selects y or x.
constexpr uint64_t kDimMask = 0x9249249249249249ull;

struct SearchOffset {
  int index;  // 1..6
  std::array<int, 3> delta;  // (dx, dy, dz)
  uint64_t offset;
};

// Coplanar neighbour offsets in column order.
inline constexpr std::array<SearchOffset, 6> kSearchTable{{
  {1, {1, 0, 0}, 0x0000000000000004ull},
  {2, {0, 1, 0}, 0x0000000000000002ull},
  {3, {0, 0, 1}, 0x0000000000000001ull},
  {4, {-1, 0, 0}, 0x4924924924924924ull},
  {5, {0, -1, 0}, 0x2492492492492492ull},
  {6, {0, 0, -1}, 0x9249249249249249ull},
}};

//----------------------------------------------------------------------------

// Throws ValidationError if a coordinate is >= 2^21.
MortonCode mortonEncode(const VoxelPosition& p);

VoxelPosition mortonDecode(MortonCode code);

//----------------------------------------------------------------------------
// Adds a per-dimension two's complement offset to a code without decoding.
// Each dimension is summed with the bits of the other two saturated to one
// so carries ripple across the gaps.  Returns nullopt when any coordinate
// leaves [0, 2^21).

std::optional<MortonCode> mortonOffsetAdd(MortonCode a, uint64_t offset);

// The unsaturated per-dimension sum (a & m) + (b & m).  Carries between
// non-adjacent bits land in the wrong dimension; kept for tests that pin
// down where it diverges from mortonOffsetAdd.
MortonCode mortonOffsetAddUnsaturated(MortonCode a, uint64_t offset);

}  // namespace pcwf
