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

#include "pcwf/enhancer.h"
#include "pcwf/metrics.h"
#include "pcwf/surrogate.h"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pcwf {

//============================================================================
// Seeded synthetic sequence: a wavy height-field surface of width x width
// voxels whose Luma is a smooth gradient plus a drifting sinusoid and
// uniform integer noise; Chroma follows slower patterns.  The pattern
// shifts by `drift` voxels per frame while the geometry stays fixed.

struct SyntheticParams {
  int frames = 8;
  int width = 64;
  uint64_t seed = 1;
  int noise = 3;  // noise is uniform in [-noise, noise]
  double drift = 1.5;
};

std::vector<PointCloud> makeSyntheticSequence(const SyntheticParams& spec);

//============================================================================
// Surrogate codec over a sequence: frame 0 intra, every later frame inter
// coded against the previous output.  With an enhancement config the
// output of each frame is the Wiener-filtered reconstruction, which then
// serves as the next reference.

struct CodecRun {
  int qp = 0;
  std::vector<PointCloud> originals;  // Morton sorted
  std::vector<PointCloud> reconstructed;  // decoder input to the enhancer
  std::vector<PointCloud> output;
  std::vector<double> residualBits;
  std::optional<PayloadStream> stream;
  std::vector<FrameDiagnostics> diagnostics;
  double codecSeconds = 0.0;
  double enhanceSeconds = 0.0;

  std::size_t payloadBits() const;
  RateRow rate() const;
};

CodecRun runCodec(
  std::span<const PointCloud> originals,
  int qp,
  const std::optional<EnhancerConfig>& enhancement = std::nullopt);

// Per-component SSE of candidate against original over a sequence; the
// clouds are compared in Morton order.
std::array<double, kNumComponents> sequenceSse(
  std::span<const PointCloud> originals, std::span<const PointCloud> candidate);

RateRow makeRateRow(
  int qp,
  std::span<const PointCloud> originals,
  std::span<const PointCloud> output,
  double bits);

}  // namespace pcwf
