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

#include "pcwf/surrogate.h"

#include "pcwf/morton.h"
#include "pcwf/neighbor_search.h"

#include <limits>
#include <map>

namespace pcwf {

//============================================================================

QuantizerConfig::QuantizerConfig(int qp)
  : qp(qp), qstep(std::exp2((qp - 4) / 6.0))
{
  if (qp < 0)
    throw ValidationError("qp must be non-negative");
}

double
quantizeLevel(double value, double qstep)
{
  return roundHalfAway(value / qstep) * qstep;
}

//----------------------------------------------------------------------------

double
entropyBits(std::span<const int> symbols)
{
  if (symbols.empty())
    return 0.0;
  std::map<int, std::size_t> counts;
  for (int s : symbols)
    counts[s]++;
  const double n = double(symbols.size());
  double bits = 0.0;
  for (const auto& [sym, count] : counts)
    bits -= double(count) * std::log2(double(count) / n);
  return bits;
}

//============================================================================

CodedFrame
intraCode(const PointCloud& input, const QuantizerConfig& cfg)
{
  const PointCloud original = sortByMorton(input);
  const auto n = original.size();
  CodedFrame out{original, {}, 0.0};
  std::vector<ColorTriple> colors(n);

  for (int c = 0; c < kNumComponents; c++) {
    auto& sym = out.symbols[c];
    sym.resize(n);
    for (std::size_t i = 0; i < n; i++) {
      const double a = original.color(i)[c];
      sym[i] = int(roundHalfAway(a / cfg.qstep));
      colors[i][c] = uint8_t(clampAttr(sym[i] * cfg.qstep));
    }
    out.bits += entropyBits(sym);
  }

  out.reconstructed = original.withColors(std::move(colors));
  return out;
}

//============================================================================

namespace {

  // Chebyshev shells around p, nearest hit by squared distance.
  std::optional<uint32_t> shellSearch(
    const VoxelPosition& p, const IndexTable& table, int maxRadius)
  {
    int64_t bestD2 = std::numeric_limits<int64_t>::max();
    MortonCode bestCode = 0;
    std::optional<uint32_t> best;

    for (int r = 1; r <= maxRadius; r++) {
      if (best && int64_t(r) * r > bestD2)
        return best;
      for (int dx = -r; dx <= r; dx++)
        for (int dy = -r; dy <= r; dy++)
          for (int dz = -r; dz <= r; dz++) {
            if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r)
              continue;
            const int64_t x = int64_t(p.x) + dx;
            const int64_t y = int64_t(p.y) + dy;
            const int64_t z = int64_t(p.z) + dz;
            if (x < 0 || y < 0 || z < 0 || x > kMaxCoordinate
                || y > kMaxCoordinate || z > kMaxCoordinate)
              continue;
            const MortonCode code =
              mortonEncode({uint32_t(x), uint32_t(y), uint32_t(z)});
            auto hit = table.lookup(code);
            if (!hit)
              continue;
            const int64_t d2 = int64_t(dx) * dx + int64_t(dy) * dy + int64_t(dz) * dz;
            if (d2 < bestD2 || (d2 == bestD2 && code < bestCode)) {
              bestD2 = d2;
              bestCode = code;
              best = hit;
            }
          }
    }
    // A closer point could still sit beyond the last shell searched.
    if (best && bestD2 >= int64_t(maxRadius + 1) * (maxRadius + 1))
      return std::nullopt;
    return best;
  }

  uint32_t linearSearch(const VoxelPosition& p, const PointCloud& ref)
  {
    int64_t bestD2 = std::numeric_limits<int64_t>::max();
    uint32_t best = 0;
    for (uint32_t q = 0; q < ref.size(); q++) {
      const auto& o = ref.position(q);
      const int64_t dx = int64_t(o.x) - p.x;
      const int64_t dy = int64_t(o.y) - p.y;
      const int64_t dz = int64_t(o.z) - p.z;
      const int64_t d2 = dx * dx + dy * dy + dz * dz;
      // ref is Morton sorted, so the first minimum has the smaller code.
      if (d2 < bestD2) {
        bestD2 = d2;
        best = q;
      }
    }
    return best;
  }

}  // namespace

//----------------------------------------------------------------------------

std::vector<uint32_t>
mapToReference(const PointCloud& cur, const PointCloud& ref)
{
  constexpr int kMaxShellRadius = 8;

  std::vector<uint32_t> map(cur.size());
  if (cur.sameGeometry(ref)) {
    for (std::size_t i = 0; i < map.size(); i++)
      map[i] = uint32_t(i);
    return map;
  }

  const IndexTable table(ref);
  for (std::size_t i = 0; i < cur.size(); i++) {
    const auto& p = cur.position(i);
    if (auto hit = table.lookup(mortonEncode(p))) {
      map[i] = *hit;
      continue;
    }
    auto hit = shellSearch(p, table, kMaxShellRadius);
    map[i] = hit ? *hit : linearSearch(p, ref);
  }
  return map;
}

//----------------------------------------------------------------------------

CodedFrame
interCode(
  const PointCloud& originalCur,
  const PointCloud& reconstructedRef,
  const QuantizerConfig& cfg)
{
  const PointCloud cur = sortByMorton(originalCur);
  const PointCloud ref = sortByMorton(reconstructedRef);
  const auto map = mapToReference(cur, ref);
  const auto n = cur.size();

  CodedFrame out{cur, {}, 0.0};
  std::vector<ColorTriple> colors(n);
  for (int c = 0; c < kNumComponents; c++) {
    auto& sym = out.symbols[c];
    sym.resize(n);
    for (std::size_t i = 0; i < n; i++) {
      const double pred = ref.color(map[i])[c];
      const double residual = cur.color(i)[c] - pred;
      sym[i] = int(roundHalfAway(residual / cfg.qstep));
      colors[i][c] = uint8_t(clampAttr(pred + sym[i] * cfg.qstep));
    }
    out.bits += entropyBits(sym);
  }

  out.reconstructed = cur.withColors(std::move(colors));
  return out;
}

//============================================================================

double
propagationIdentityCheck(
  std::span<const double> aCur,
  std::span<const double> aRef,
  std::span<const double> aRecRef,
  std::span<const double> deltaA)
{
  const auto n = aCur.size();
  if (aRef.size() != n || aRecRef.size() != n || deltaA.size() != n)
    throw ValidationError("propagation check inputs differ in length");

  double worst = 0.0;
  for (std::size_t i = 0; i < n; i++) {
    const double dRef = aRef[i] - aRecRef[i];
    const double recCur = aRecRef[i] + deltaA[i];
    const double dCur = aCur[i] - recCur;
    const double predicted = aCur[i] - aRef[i] - deltaA[i] + dRef;
    worst = std::max(worst, std::abs(dCur - predicted));
  }
  return worst;
}

}  // namespace pcwf
