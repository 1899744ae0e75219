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

#include "pcwf/sequence_codec.h"

#include <chrono>
#include <numbers>
#include <random>

namespace pcwf {

//============================================================================

std::vector<PointCloud>
makeSyntheticSequence(const SyntheticParams& spec)
{
  if (spec.frames < 1 || spec.width < 2)
    throw ValidationError("synthetic sequence needs frames >= 1 and width >= 2");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(spec.seed);
  const int span = 2 * spec.noise + 1;

  std::vector<VoxelPosition> pos;
  const int w = spec.width;
  for (int y = 0; y < w; y++)
    for (int x = 0; x < w; x++) {
      const double h = 16.0 + 6.0 * std::sin(kTwoPi * x / 37.0)
        * std::cos(kTwoPi * y / 29.0);
      pos.push_back({uint32_t(x), uint32_t(y), uint32_t(std::lround(h))});
    }

  std::vector<PointCloud> frames;
  for (int f = 0; f < spec.frames; f++) {
    const double shift = spec.drift * f;
    std::vector<ColorTriple> col(pos.size());
    for (std::size_t i = 0; i < pos.size(); i++) {
      const double x = pos[i].x + shift;
      const double y = pos[i].y;
      const int noise = int(rng() % uint64_t(span)) - spec.noise;
      const double luma = 30.0 + 190.0 * y / w
        + 25.0 * std::sin(kTwoPi * x / 23.0) * std::cos(kTwoPi * y / 31.0)
        + 12.0 * std::sin(kTwoPi * x / 11.0) + noise;
      const double cb = 128.0 + 90.0 * std::sin(kTwoPi * x / 53.0);
      const double cr = 128.0 + 90.0 * std::cos(kTwoPi * y / 47.0);
      col[i].c = {uint8_t(clampAttr(luma)), uint8_t(clampAttr(cb)),
                  uint8_t(clampAttr(cr))};
    }
    frames.push_back(sortByMorton(PointCloud(pos, std::move(col))));
  }
  return frames;
}

//============================================================================

std::array<double, kNumComponents>
sequenceSse(
  std::span<const PointCloud> originals, std::span<const PointCloud> candidate)
{
  if (originals.size() != candidate.size())
    throw ValidationError("frame counts differ");
  std::array<double, kNumComponents> acc{};
  for (std::size_t f = 0; f < originals.size(); f++) {
    const auto a = sortByMorton(originals[f]);
    const auto b = sortByMorton(candidate[f]);
    if (!a.sameGeometry(b))
      throw ValidationError("geometry differs in frame " + std::to_string(f));
    for (int c = 0; c < kNumComponents; c++)
      acc[c] += sse(a.component(c), b.component(c));
  }
  return acc;
}

//----------------------------------------------------------------------------

RateRow
makeRateRow(
  int qp,
  std::span<const PointCloud> originals,
  std::span<const PointCloud> output,
  double bits)
{
  RateRow r;
  r.qp = qp;
  r.frames = originals.size();
  for (const auto& f : originals)
    r.points += f.size();
  r.bits = bits;
  r.bpop = r.points ? bits / double(r.points) : 0.0;
  const auto s = sequenceSse(originals, output);
  for (int c = 0; c < kNumComponents; c++)
    r.psnr[c] = psnrFromSse(s[c], r.points);
  r.psnrWeighted = weightedPsnr(r.psnr[0], r.psnr[1], r.psnr[2]);
  return r;
}

//============================================================================

std::size_t
CodecRun::payloadBits() const
{
  return stream ? serialize(*stream).size() * 8 : 0;
}

RateRow
CodecRun::rate() const
{
  double bits = double(payloadBits());
  for (double b : residualBits)
    bits += b;
  return makeRateRow(qp, originals, output, bits);
}

//----------------------------------------------------------------------------

CodecRun
runCodec(
  std::span<const PointCloud> originals,
  int qp,
  const std::optional<EnhancerConfig>& enhancement)
{
  using Clock = std::chrono::steady_clock;
  const QuantizerConfig qcfg(qp);

  CodecRun run;
  run.qp = qp;
  std::optional<Enhancer> enhancer;
  if (enhancement) {
    auto cfg = *enhancement;
    cfg.qp = qp;
    enhancer.emplace(cfg);
    run.stream.emplace();
    run.stream->header = enhancer->header();
  }

  for (std::size_t f = 0; f < originals.size(); f++) {
    run.originals.push_back(sortByMorton(originals[f]));

    auto t0 = Clock::now();
    CodedFrame coded = f == 0
      ? intraCode(run.originals.back(), qcfg)
      : interCode(run.originals.back(), run.output.back(), qcfg);
    auto t1 = Clock::now();
    run.codecSeconds += std::chrono::duration<double>(t1 - t0).count();

    run.residualBits.push_back(coded.bits);
    run.reconstructed.push_back(coded.reconstructed);

    if (enhancer) {
      auto ef = enhancer->encodeFrame(run.originals.back(), coded.reconstructed);
      run.enhanceSeconds +=
        std::chrono::duration<double>(Clock::now() - t1).count();
      run.output.push_back(std::move(ef.filtered));
      run.stream->frames.push_back(std::move(ef.payload));
      run.diagnostics.push_back(std::move(ef.diagnostics));
    } else {
      run.output.push_back(std::move(coded.reconstructed));
    }
  }
  return run;
}

}  // namespace pcwf
