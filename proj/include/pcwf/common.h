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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcwf {

//============================================================================
// Error types shared by all modules.

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//----------------------------------------------------------------------------
// Malformed payload or file.  offset is the byte position where parsing
// stopped; frame is the frame record being read (-1 for the header).

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset, int frame = -1)
    : std::runtime_error(
        what + " (byte " + std::to_string(offset)
        + (frame >= 0 ? ", frame " + std::to_string(frame) : std::string())
        + ")")
    , offset(offset)
    , frame(frame)
  {}

  std::size_t offset;
  int frame;
};

//============================================================================
// Round half away from zero.  Both codec sides use this rule.

inline double
roundHalfAway(double v)
{
  return v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5);
}

inline int
clampAttr(double v)
{
  return int(std::clamp(roundHalfAway(v), 0.0, 255.0));
}

//============================================================================

constexpr int kNumComponents = 3;

// Filter order: the point itself plus its six coplanar neighbours.
constexpr int kFilterOrder = 7;

}  // namespace pcwf
