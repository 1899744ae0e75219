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
#include <iosfwd>
#include <vector>

namespace pcwf {

//============================================================================
// Local stationarity statistics over octree blocks.

struct ComponentMoments {
  std::array<double, kNumComponents> mean{};
  std::array<double, kNumComponents> variance{};
};

ComponentMoments moments(const PointCloud& cloud, std::span<const uint32_t> members);

struct OctreeBlock {
  VoxelPosition index;  // block coordinates at the requested depth
  std::vector<uint32_t> members;  // serials in the Morton-sorted cloud
  ComponentMoments stats;
};

// Bits needed for the largest coordinate of the cloud (at least 1).
int coordinateBits(const PointCloud& cloud);

// Points are bucketed by coordinates >> (coordinateBits - depth); depths
// beyond coordinateBits shift by zero.  Non-empty blocks are returned in
// Morton order of their index.  The cloud is Morton sorted first.
std::vector<OctreeBlock> octreeSegment(const PointCloud& cloud, int depth);

//----------------------------------------------------------------------------

struct SubblockStats {
  std::vector<std::size_t> counts;
  std::vector<ComponentMoments> runs;
  // gamma1[s] pairs run s with run s + 1.
  std::vector<std::array<double, kNumComponents>> gamma1;
};

// Population covariance of x and y paired by rank after truncation to the
// shorter of the two.
double pairedCovariance(std::span<const double> x, std::span<const double> y);

// Splits a block (members ascending in Morton order) into min(m, count)
// contiguous runs; the first count % runs runs take one extra point.
SubblockStats subblockStats(
  const PointCloud& sortedCloud, const OctreeBlock& block, int m = 100);

//----------------------------------------------------------------------------
// CSV with one "block" row per non-empty block followed by its "subblock"
// rows:
//
//   record,block,subblock,count,bx,by,bz,mean_y,mean_cb,mean_cr,
//   var_y,var_cb,var_cr,gamma1_y,gamma1_cb,gamma1_cr
//
// subblock is empty on block rows; bx/by/bz are empty on subblock rows;
// gamma1 is empty on block rows and on the last run of a block.

extern const char* const kWssCsvHeader;

void wssReport(std::ostream& os, const PointCloud& cloud, int depth, int m = 100);

}  // namespace pcwf
