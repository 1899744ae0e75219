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

#include "pcwf/point_cloud.h"

#include "pcwf/morton.h"

#include <numeric>

namespace pcwf {

//============================================================================

PointCloud::PointCloud(std::vector<Point> points)
{
  _positions.reserve(points.size());
  _colors.reserve(points.size());
  for (const auto& p : points) {
    _positions.push_back(p.pos);
    _colors.push_back(p.color);
  }
  validate();
}

//----------------------------------------------------------------------------

PointCloud::PointCloud(
  std::vector<VoxelPosition> positions, std::vector<ColorTriple> colors)
  : _positions(std::move(positions)), _colors(std::move(colors))
{
  if (_positions.size() != _colors.size())
    throw ValidationError("position and colour counts differ");
  validate();
}

//----------------------------------------------------------------------------

void
PointCloud::validate()
{
  if (_positions.empty())
    throw ValidationError("point cloud has no points");

  std::vector<MortonCode> codes(_positions.size());
  for (std::size_t i = 0; i < _positions.size(); i++)
    codes[i] = mortonEncode(_positions[i]);

  _mortonSorted = std::is_sorted(codes.begin(), codes.end());
  if (!_mortonSorted)
    std::sort(codes.begin(), codes.end());

  auto dup = std::adjacent_find(codes.begin(), codes.end());
  if (dup != codes.end()) {
    auto p = mortonDecode(*dup);
    throw ValidationError(
      "duplicate voxel position (" + std::to_string(p.x) + ", "
      + std::to_string(p.y) + ", " + std::to_string(p.z) + ")");
  }
}

//----------------------------------------------------------------------------

std::vector<double>
PointCloud::component(int c) const
{
  std::vector<double> out(_colors.size());
  for (std::size_t i = 0; i < _colors.size(); i++)
    out[i] = _colors[i][c];
  return out;
}

//----------------------------------------------------------------------------

PointCloud
PointCloud::withColors(std::vector<ColorTriple> colors) const
{
  if (colors.size() != _colors.size())
    throw ValidationError("colour count does not match geometry");
  PointCloud out;
  out._positions = _positions;
  out._colors = std::move(colors);
  out._mortonSorted = _mortonSorted;
  return out;
}

//----------------------------------------------------------------------------

bool
PointCloud::sameGeometry(const PointCloud& other) const
{
  return _positions == other._positions;
}

//============================================================================

PointCloud
sortByMorton(const PointCloud& cloud)
{
  if (cloud.mortonSorted())
    return cloud;

  const auto n = cloud.size();
  std::vector<MortonCode> codes(n);
  for (std::size_t i = 0; i < n; i++)
    codes[i] = mortonEncode(cloud.position(i));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return codes[a] < codes[b];
  });

  std::vector<VoxelPosition> pos(n);
  std::vector<ColorTriple> col(n);
  for (std::size_t i = 0; i < n; i++) {
    pos[i] = cloud.position(order[i]);
    col[i] = cloud.color(order[i]);
  }
  return PointCloud(std::move(pos), std::move(col));
}

}  // namespace pcwf
