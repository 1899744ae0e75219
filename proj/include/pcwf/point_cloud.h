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

#include "pcwf/common.h"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace pcwf {

//============================================================================

constexpr uint32_t kMaxCoordinate = (1u << 21) - 1;

struct VoxelPosition {
  uint32_t x = 0;
  uint32_t y = 0;
  uint32_t z = 0;

  friend bool operator==(const VoxelPosition&, const VoxelPosition&) = default;
};

//----------------------------------------------------------------------------
// c[0] = Luma, c[1] = Cb, c[2] = Cr.

struct ColorTriple {
  std::array<uint8_t, 3> c{};

  uint8_t operator[](int i) const { return c[i]; }
  uint8_t& operator[](int i) { return c[i]; }

  friend bool operator==(const ColorTriple&, const ColorTriple&) = default;
};

struct Point {
  VoxelPosition pos;
  ColorTriple color;
};

//============================================================================
// A voxelised frame: unique positions with one colour each.  Immutable once
// constructed; every mutating operation builds a new cloud.

class PointCloud {
public:
  // Throws ValidationError on an empty list, an out-of-range coordinate or a
  // repeated position.
  explicit PointCloud(std::vector<Point> points);
  PointCloud(std::vector<VoxelPosition> positions, std::vector<ColorTriple> colors);

  std::size_t size() const { return _positions.size(); }
  bool mortonSorted() const { return _mortonSorted; }

  std::span<const VoxelPosition> positions() const { return _positions; }
  std::span<const ColorTriple> colors() const { return _colors; }
  const VoxelPosition& position(std::size_t i) const { return _positions[i]; }
  const ColorTriple& color(std::size_t i) const { return _colors[i]; }

  // Component c of every point, widened to double.
  std::vector<double> component(int c) const;

  // Same geometry, new colours.  colors.size() must equal size().
  PointCloud withColors(std::vector<ColorTriple> colors) const;

  bool sameGeometry(const PointCloud& other) const;

  friend bool operator==(const PointCloud& a, const PointCloud& b)
  {
    return a._positions == b._positions && a._colors == b._colors;
  }

private:
  PointCloud() = default;
  void validate();

  std::vector<VoxelPosition> _positions;
  std::vector<ColorTriple> _colors;
  bool _mortonSorted = false;
};

//----------------------------------------------------------------------------
// Stable reorder by ascending Morton code.

PointCloud sortByMorton(const PointCloud& cloud);

//============================================================================

struct FrameSequence {
  std::vector<PointCloud> frames;
  int gofSize = 8;
};

}  // namespace pcwf
