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

#include "pcwf/stationarity.h"

#include "pcwf/metrics.h"
#include "pcwf/morton.h"

#include <map>
#include <ostream>

namespace pcwf {

//============================================================================

ComponentMoments
moments(const PointCloud& cloud, std::span<const uint32_t> members)
{
  ComponentMoments m;
  if (members.empty())
    return m;
  const double n = double(members.size());
  for (int c = 0; c < kNumComponents; c++) {
    double mean = 0.0;
    for (auto i : members)
      mean += cloud.color(i)[c];
    mean /= n;
    double var = 0.0;
    for (auto i : members) {
      const double d = cloud.color(i)[c] - mean;
      var += d * d;
    }
    m.mean[c] = mean;
    m.variance[c] = var / n;
  }
  return m;
}

//----------------------------------------------------------------------------

int
coordinateBits(const PointCloud& cloud)
{
  uint32_t maxCoord = 0;
  for (const auto& p : cloud.positions())
    maxCoord = std::max({maxCoord, p.x, p.y, p.z});
  int bits = 1;
  while (bits < 21 && (maxCoord >> bits))
    bits++;
  return bits;
}

//----------------------------------------------------------------------------

std::vector<OctreeBlock>
octreeSegment(const PointCloud& input, int depth)
{
  if (depth < 1)
    throw ValidationError("octree depth must be at least 1");

  const PointCloud cloud = sortByMorton(input);
  const int shift = std::max(0, coordinateBits(cloud) - depth);

  std::map<MortonCode, OctreeBlock> blocks;
  for (uint32_t i = 0; i < cloud.size(); i++) {
    const auto& p = cloud.position(i);
    const VoxelPosition idx{p.x >> shift, p.y >> shift, p.z >> shift};
    auto& b = blocks[mortonEncode(idx)];
    b.index = idx;
    b.members.push_back(i);
  }

  std::vector<OctreeBlock> out;
  out.reserve(blocks.size());
  for (auto& [code, b] : blocks) {
    b.stats = moments(cloud, b.members);
    out.push_back(std::move(b));
  }
  return out;
}

//============================================================================

double
pairedCovariance(std::span<const double> x, std::span<const double> y)
{
  const std::size_t n = std::min(x.size(), y.size());
  if (n == 0)
    return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; i++) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double cov = 0.0;
  for (std::size_t i = 0; i < n; i++)
    cov += (x[i] - mx) * (y[i] - my);
  return cov / double(n);
}

//----------------------------------------------------------------------------

SubblockStats
subblockStats(const PointCloud& cloud, const OctreeBlock& block, int m)
{
  if (block.members.empty())
    throw ValidationError("subblock statistics of an empty block");
  if (m < 1)
    throw ValidationError("subblock count must be positive");

  const std::size_t count = block.members.size();
  const std::size_t runs = std::min<std::size_t>(m, count);
  const std::size_t base = count / runs;
  const std::size_t extra = count % runs;

  SubblockStats s;
  std::vector<std::span<const uint32_t>> spans;
  std::size_t pos = 0;
  for (std::size_t r = 0; r < runs; r++) {
    const std::size_t len = base + (r < extra ? 1 : 0);
    spans.emplace_back(block.members.data() + pos, len);
    s.counts.push_back(len);
    s.runs.push_back(moments(cloud, spans.back()));
    pos += len;
  }

  for (std::size_t r = 0; r + 1 < runs; r++) {
    std::array<double, kNumComponents> g{};
    for (int c = 0; c < kNumComponents; c++) {
      std::vector<double> x, y;
      for (auto i : spans[r])
        x.push_back(cloud.color(i)[c]);
      for (auto i : spans[r + 1])
        y.push_back(cloud.color(i)[c]);
      g[c] = pairedCovariance(x, y);
    }
    s.gamma1.push_back(g);
  }
  return s;
}

//============================================================================

const char* const kWssCsvHeader =
  "record,block,subblock,count,bx,by,bz,mean_y,mean_cb,mean_cr,"
  "var_y,var_cb,var_cr,gamma1_y,gamma1_cb,gamma1_cr";

void
wssReport(std::ostream& os, const PointCloud& input, int depth, int m)
{
  const PointCloud cloud = sortByMorton(input);
  const auto blocks = octreeSegment(cloud, depth);

  auto putMoments = [&os](const ComponentMoments& mo) {
    for (double v : mo.mean)
      os << ',' << csvNumber(v);
    for (double v : mo.variance)
      os << ',' << csvNumber(v);
  };

  os << kWssCsvHeader << '\n';
  for (std::size_t b = 0; b < blocks.size(); b++) {
    const auto& blk = blocks[b];
    os << "block," << b << ",," << blk.members.size() << ',' << blk.index.x
       << ',' << blk.index.y << ',' << blk.index.z;
    putMoments(blk.stats);
    os << ",,,\n";

    const auto sub = subblockStats(cloud, blk, m);
    for (std::size_t r = 0; r < sub.runs.size(); r++) {
      os << "subblock," << b << ',' << r << ',' << sub.counts[r] << ",,,";
      putMoments(sub.runs[r]);
      if (r < sub.gamma1.size()) {
        for (double g : sub.gamma1[r])
          os << ',' << csvNumber(g);
      } else {
        os << ",,,";
      }
      os << '\n';
    }
  }
  if (!os)
    throw std::runtime_error("failed writing stationarity report");
}

}  // namespace pcwf
