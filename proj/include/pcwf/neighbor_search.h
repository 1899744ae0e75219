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

#include "pcwf/morton.h"
#include "pcwf/point_cloud.h"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace pcwf {

//============================================================================
// Occupancy lookup from Morton code to point serial.
//
// When the smallest aligned cube enclosing the cloud holds at most 2^24
// voxels the table is dense: the cube's contiguous Morton range is split
// into slices of 2^18 codes and only slices containing points are
// allocated.  Larger clouds fall back to a hash table.

class IndexTable {
public:
  static constexpr int kDenseLog2Volume = 24;
  static constexpr int kSliceLog2 = 18;
  static constexpr int32_t kNull = -1;

  // cloud must be Morton sorted.
  explicit IndexTable(const PointCloud& cloud);

  std::optional<uint32_t> lookup(MortonCode code) const;

  bool dense() const { return !_hashed; }
  MortonCode rangeBegin() const { return _base; }
  uint64_t rangeSize() const { return _range; }
  std::size_t sliceCount() const { return _slices.size(); }
  std::size_t allocatedSlices() const;

private:
  bool _hashed = false;
  MortonCode _base = 0;
  uint64_t _range = 0;
  std::vector<std::unique_ptr<int32_t[]>> _slices;
  std::unordered_map<MortonCode, uint32_t> _map;
};

//============================================================================
// Per-component n x k attribute rows: column 0 is the point itself, columns
// 1..6 follow kSearchTable.  Missing neighbours repeat column 0.

class NeighborMatrix {
public:
  static constexpr int k = kFilterOrder;

  explicit NeighborMatrix(std::size_t rows);

  std::size_t rows() const { return _rows; }

  std::span<const double> component(int c) const { return _values[c]; }
  std::span<double> component(int c) { return _values[c]; }

  std::span<const double> row(int c, std::size_t i) const
  {
    return component(c).subspan(i * k, k);
  }

  // Occupancy of neighbour column j (1..6) for row i.
  bool occupied(std::size_t i, int j) const { return _occupied[i * 6 + j - 1]; }
  void setOccupied(std::size_t i, int j, bool v) { _occupied[i * 6 + j - 1] = v; }

  friend bool operator==(const NeighborMatrix&, const NeighborMatrix&) = default;

private:
  std::size_t _rows;
  std::array<std::vector<double>, kNumComponents> _values;
  std::vector<uint8_t> _occupied;
};

//----------------------------------------------------------------------------

// cloud must be Morton sorted and table built from it.
NeighborMatrix gatherNeighbors(const PointCloud& cloud, const IndexTable& table);

// Convenience: sorts check, builds the index and gathers.
NeighborMatrix gatherNeighbors(const PointCloud& cloud);

// Reference implementation scanning every point for each row.  O(n^2).
NeighborMatrix bruteForceNeighbors(const PointCloud& cloud);

}  // namespace pcwf
