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

#include "pcwf/colour.h"

namespace pcwf {

namespace {

  constexpr double kKr = 0.2126;
  constexpr double kKb = 0.0722;
  constexpr double kKg = 1.0 - kKr - kKb;

  void checkRange(int v)
  {
    if (v < 0 || v > 255)
      throw ValidationError("colour value out of range: " + std::to_string(v));
  }

}  // namespace

//============================================================================

ColorTriple
rgbToYCbCr(int r, int g, int b)
{
  checkRange(r);
  checkRange(g);
  checkRange(b);

  double y = kKr * r + kKg * g + kKb * b;
  double cb = (b - y) / (2.0 * (1.0 - kKb)) + 128.0;
  double cr = (r - y) / (2.0 * (1.0 - kKr)) + 128.0;

  ColorTriple t;
  t[0] = uint8_t(clampAttr(y));
  t[1] = uint8_t(clampAttr(cb));
  t[2] = uint8_t(clampAttr(cr));
  return t;
}

//----------------------------------------------------------------------------

std::array<uint8_t, 3>
yCbCrToRgb(const ColorTriple& t)
{
  double y = t[0];
  double cb = t[1] - 128.0;
  double cr = t[2] - 128.0;

  double r = y + 2.0 * (1.0 - kKr) * cr;
  double b = y + 2.0 * (1.0 - kKb) * cb;
  double g = (y - kKr * r - kKb * b) / kKg;

  return {uint8_t(clampAttr(r)), uint8_t(clampAttr(g)), uint8_t(clampAttr(b))};
}

}  // namespace pcwf
