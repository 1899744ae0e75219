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

#include "pcwf/neighbor_search.h"

#include "pcwf/parallel.h"

namespace pcwf {

//============================================================================

IndexTable::IndexTable(const PointCloud& cloud)
{
  if (!cloud.mortonSorted())
    throw ValidationError("index table requires a Morton sorted cloud");

  const auto n = cloud.size();
  const MortonCode first = mortonEncode(cloud.position(0));
  const MortonCode last = mortonEncode(cloud.position(n - 1));

  // Smallest aligned cube: strip whole octree levels until the first and
  // last codes share a prefix.
  int level = 0;
  while (level < 21 && (first >> (3 * level)) != (last >> (3 * level)))
    level++;

  if (3 * level > kDenseLog2Volume) {
    _hashed = true;
    _map.reserve(n);
    for (uint32_t i = 0; i < n; i++) {
      if (!_map.emplace(mortonEncode(cloud.position(i)), i).second)
        throw ValidationError("duplicate Morton code in index table");
    }
    return;
  }

  _range = uint64_t(1) << (3 * level);
  _base = level == 21 ? 0 : (first >> (3 * level)) << (3 * level);
  const uint64_t sliceSize = uint64_t(1) << kSliceLog2;
  _slices.resize((_range + sliceSize - 1) / sliceSize);

  for (uint32_t i = 0; i < n; i++) {
    const uint64_t rel = mortonEncode(cloud.position(i)) - _base;
    auto& slice = _slices[rel >> kSliceLog2];
    if (!slice) {
      const auto len = std::min(sliceSize, _range);
      slice.reset(new int32_t[len]);
      std::fill_n(slice.get(), len, kNull);
    }
    int32_t& entry = slice[rel & (sliceSize - 1)];
    if (entry != kNull)
      throw ValidationError("duplicate Morton code in index table");
    entry = int32_t(i);
  }
}

//----------------------------------------------------------------------------

std::optional<uint32_t>
IndexTable::lookup(MortonCode code) const
{
  if (_hashed) {
    auto it = _map.find(code);
    if (it == _map.end())
      return std::nullopt;
    return it->second;
  }

  if (code < _base || code - _base >= _range)
    return std::nullopt;
  const uint64_t rel = code - _base;
  const auto& slice = _slices[rel >> kSliceLog2];
  if (!slice)
    return std::nullopt;
  const int32_t v = slice[rel & ((uint64_t(1) << kSliceLog2) - 1)];
  if (v == kNull)
    return std::nullopt;
  return uint32_t(v);
}

//----------------------------------------------------------------------------

std::size_t
IndexTable::allocatedSlices() const
{
  return std::count_if(
    _slices.begin(), _slices.end(), [](const auto& s) { return bool(s); });
}

//============================================================================

NeighborMatrix::NeighborMatrix(std::size_t rows)
  : _rows(rows), _occupied(rows * 6, 0)
{
  for (auto& v : _values)
    v.assign(rows * k, 0.0);
}

//----------------------------------------------------------------------------

namespace {

  void fillRow(
    NeighborMatrix& m,
    const PointCloud& cloud,
    std::size_t i,
    const std::array<std::optional<uint32_t>, 6>& hits)
  {
    const auto& self = cloud.color(i);
    for (int c = 0; c < kNumComponents; c++) {
      auto row = m.component(c).subspan(i * NeighborMatrix::k, NeighborMatrix::k);
      row[0] = self[c];
      for (int j = 1; j <= 6; j++)
        row[j] = hits[j - 1] ? cloud.color(*hits[j - 1])[c] : self[c];
    }
    for (int j = 1; j <= 6; j++)
      m.setOccupied(i, j, hits[j - 1].has_value());
  }

}  // namespace

//----------------------------------------------------------------------------

NeighborMatrix
gatherNeighbors(const PointCloud& cloud, const IndexTable& table)
{
  NeighborMatrix m(cloud.size());

  parallelFor(cloud.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++) {
      const MortonCode code = mortonEncode(cloud.position(i));
      std::array<std::optional<uint32_t>, 6> hits;
      for (int j = 0; j < 6; j++) {
        if (auto probe = mortonOffsetAdd(code, kSearchTable[j].offset))
          hits[j] = table.lookup(*probe);
      }
      fillRow(m, cloud, i, hits);
    }
  });

  return m;
}

//----------------------------------------------------------------------------

NeighborMatrix
gatherNeighbors(const PointCloud& cloud)
{
  return gatherNeighbors(cloud, IndexTable(cloud));
}

//----------------------------------------------------------------------------

NeighborMatrix
bruteForceNeighbors(const PointCloud& cloud)
{
  const auto n = cloud.size();
  NeighborMatrix m(n);

  for (std::size_t i = 0; i < n; i++) {
    const auto& p = cloud.position(i);
    std::array<std::optional<uint32_t>, 6> hits;
    for (std::size_t q = 0; q < n; q++) {
      const auto& o = cloud.position(q);
      const int64_t dx = int64_t(o.x) - p.x;
      const int64_t dy = int64_t(o.y) - p.y;
      const int64_t dz = int64_t(o.z) - p.z;
      for (int j = 0; j < 6; j++) {
        const auto& d = kSearchTable[j].delta;
        if (dx == d[0] && dy == d[1] && dz == d[2])
          hits[j] = uint32_t(q);
      }
    }
    fillRow(m, cloud, i, hits);
  }

  return m;
}

}  // namespace pcwf
