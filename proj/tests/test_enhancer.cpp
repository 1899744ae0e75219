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

#include "doctest.h"

#include "pcwf/enhancer.h"
#include "pcwf/parallel.h"
#include "pcwf/sequence_codec.h"
#include "pcwf/surrogate.h"
#include "test_util.h"

#include <Eigen/Dense>

using namespace pcwf;

namespace {

// Flat 64x64 sheet, constant colour, with a +-4 checkerboard on Luma in the
// reconstruction.
std::pair<PointCloud, PointCloud>
checkerboardPair(int width = 64)
{
  std::vector<VoxelPosition> pos;
  std::vector<ColorTriple> orig, rec;
  for (int y = 0; y < width; y++)
    for (int x = 0; x < width; x++) {
      pos.push_back({uint32_t(x), uint32_t(y), 3});
      orig.push_back(ColorTriple{{100, 128, 128}});
      rec.push_back(ColorTriple{{uint8_t((x + y) % 2 ? 104 : 96), 128, 128}});
    }
  return {sortByMorton(PointCloud(pos, orig)), sortByMorton(PointCloud(pos, rec))};
}

std::vector<PointCloud>
noisyCopies(std::span<const PointCloud> frames, uint64_t seed, int amp)
{
  std::mt19937_64 rng(seed);
  std::vector<PointCloud> out;
  for (const auto& f : frames) {
    std::vector<ColorTriple> cols(f.size());
    for (std::size_t i = 0; i < f.size(); i++)
      for (int c = 0; c < 3; c++)
        cols[i].c[c] = uint8_t(
          std::clamp(f.color(i)[c] + int(rng() % (2 * amp + 1)) - amp, 0, 255));
    out.push_back(f.withColors(cols));
  }
  return out;
}

std::vector<PointCloud>
smallSequence(int frames = 8, uint64_t seed = 3)
{
  SyntheticParams spec;
  spec.frames = frames;
  spec.width = 32;
  spec.seed = seed;
  return makeSyntheticSequence(spec);
}

void
checkNeverWorse(const std::vector<FrameDiagnostics>& diags)
{
  for (const auto& d : diags)
    for (const auto& a : d.decisions) {
      const auto& r = a.decision;
      CHECK((r.flag ? r.costFiltered : r.costUnfiltered) <= r.costUnfiltered);
    }
}

}  // namespace

TEST_CASE("BWF leaves an exact reconstruction alone")
{
  auto frames = smallSequence(1);
  auto ef = enhanceFrameBwf(frames[0], frames[0], 22);
  CHECK(ef.payload == FramePayload{});
  CHECK(ef.filtered == frames[0]);
}

TEST_CASE("BWF on a single point")
{
  PointCloud orig(std::vector<Point>{{{3, 3, 3}, ColorTriple{{100, 128, 128}}}});
  for (int qp : {4, 22, 46}) {
    auto ef = enhanceFrameBwf(orig, orig, qp);
    CHECK(ef.payload == FramePayload{});
    CHECK(ef.filtered == orig);
  }
  // Even with a distorted reconstruction a lone point has nothing to gain
  // that pays for 113 bits.
  PointCloud rec(std::vector<Point>{{{3, 3, 3}, ColorTriple{{104, 128, 128}}}});
  auto ef = enhanceFrameBwf(orig, rec, 46);
  CHECK(ef.payload == FramePayload{});
  CHECK(ef.filtered == rec);
}

TEST_CASE("BWF on a checkerboard")
{
  auto [orig, rec] = checkerboardPair();
  const auto M = gatherNeighbors(rec);
  const RowMatrixView P(M, 0);
  const auto a = orig.component(0);

  // Independent prediction: least squares through Eigen, rounding, Eq 17.
  Eigen::MatrixXd Pm(P.rows(), 7);
  Eigen::VectorXd av(P.rows());
  double traceA = 0;
  for (std::size_t i = 0; i < P.rows(); i++) {
    for (int j = 0; j < 7; j++) {
      Pm(i, j) = P.row(i)[j];
      traceA += Pm(i, j) * Pm(i, j);
    }
    av(i) = a[i];
  }
  const double eps = 1e-6 * traceA / 7;
  const Eigen::MatrixXd A = Pm.transpose() * Pm + eps * Eigen::MatrixXd::Identity(7, 7);
  const Eigen::VectorXd h = A.ldlt().solve(Pm.transpose() * av);
  FilterCoefficients hq;
  for (int j = 0; j < 7; j++)
    hq.h.push_back(roundHalfAway(h(j) * 16384) / 16384);
  double sseFil = 0, sseUnf = 0;
  for (std::size_t i = 0; i < P.rows(); i++) {
    const double f = clampAttr(applyRow(P.row(i), hq));
    sseFil += (a[i] - f) * (a[i] - f);
    sseUnf += (a[i] - P.row(i)[0]) * (a[i] - P.row(i)[0]);
  }
  CHECK(sseUnf == 16.0 * 4096);

  for (int qp : {12, 22, 28, 34, 40, 46, 51}) {
    CAPTURE(qp);
    const bool expect = sseFil + rdLambda(qp) * 113 < sseUnf + rdLambda(qp);
    auto ef = enhanceFrameBwf(orig, rec, qp);
    CHECK(ef.payload.componentFlags[0] == expect);
    CHECK_FALSE(ef.payload.componentFlags[1]);
    CHECK_FALSE(ef.payload.componentFlags[2]);
    if (qp <= 34) {
      CHECK(expect);
      CHECK(ef.diagnostics.sseOutput[0] < ef.diagnostics.sseReconstructed[0]);
      CHECK(ef.diagnostics.sseOutput[0] == sseFil);
    }
    checkNeverWorse({ef.diagnostics});
  }
}

TEST_CASE("geometry mismatch is rejected")
{
  auto frames = smallSequence(1);
  std::vector<Point> pts{{{0, 0, 0}, {}}, {{1, 0, 0}, {}}};
  Enhancer enc({EnhancementMode::kBwf, 30, 1});
  CHECK_THROWS_AS(enc.encodeFrame(frames[0], PointCloud(pts)), ValidationError);
}

//----------------------------------------------------------------------------

TEST_CASE("CIWF with identical frames reuses the first frame")
{
  auto [orig, rec] = checkerboardPair(48);
  std::vector<PointCloud> o(8, orig), r(8, rec);
  auto seq = enhanceGofCiwf(o, r, 22);
  REQUIRE(seq.stream.frames[0].componentFlags[0]);
  for (std::size_t f = 1; f < 8; f++) {
    CHECK(seq.filtered[f] == seq.filtered[0]);
    CHECK(seq.stream.frames[f].coefficientSetCount() == 0);
    CHECK(seq.stream.frames[f].componentFlags == seq.stream.frames[0].componentFlags);
  }
  CHECK(decodeReplay(r, seq.stream) == seq.filtered);
}

TEST_CASE("CIWF with one frame equals BWF")
{
  auto frames = smallSequence(1, 8);
  auto rec = noisyCopies(frames, 2, 6);
  auto bwf = enhanceFrameBwf(frames[0], rec[0], 28);
  auto ciwf = enhanceGofCiwf(frames, rec, 28);
  CHECK(ciwf.stream.header.gofSize == 1);
  CHECK(ciwf.stream.frames[0] == bwf.payload);
  CHECK(ciwf.filtered[0] == bwf.filtered);
  CHECK(bwf.payload.componentFlags[0]);
}

TEST_CASE("CIWF coefficient accounting on a drifting sequence")
{
  auto frames = smallSequence(8);
  const QuantizerConfig q(40);
  std::vector<PointCloud> rec;
  for (const auto& f : frames)
    rec.push_back(intraCode(f, q).reconstructed);

  for (auto mode : {EnhancementMode::kCiwf, EnhancementMode::kVcwf}) {
    CAPTURE(modeName(mode));
    auto seq = encodeSequence(frames, rec, {mode, 40, 8});
    const auto bytes = serialize(seq.stream);
    const auto parsed = parse(bytes);
    CHECK(parsed == seq.stream);

    const int sets = parsed.frames[0].coefficientSetCount();
    CHECK(sets > 0);
    int firstBits = framePayloadBits(parsed.header, parsed.frames[0]);
    std::size_t expectBytes = StreamHeader::kSize + (firstBits + 7) / 8;
    for (std::size_t f = 1; f < parsed.frames.size(); f++) {
      CHECK(parsed.frames[f].coefficientSetCount() == 0);
      expectBytes += (framePayloadBits(parsed.header, parsed.frames[f]) + 7) / 8;
      for (int c = 1; c < 3; c++)
        if (parsed.frames[f].componentFlags[c])
          CHECK(parsed.frames[0].componentFlags[c]);
      for (int j = 0; j < 5; j++)
        if (parsed.frames[f].classFlags[j])
          CHECK(parsed.frames[0].classFlags[j]);
    }
    CHECK(bytes.size() == expectBytes);
    CHECK(decodeReplay(rec, parsed) == seq.filtered);
    checkNeverWorse(seq.diagnostics);
  }
}

//----------------------------------------------------------------------------

TEST_CASE("VCWF on uniform Luma")
{
  auto frames = smallSequence(1, 4);
  std::vector<ColorTriple> cols(frames[0].size());
  for (std::size_t i = 0; i < cols.size(); i++)
    cols[i] = ColorTriple{{90, frames[0].color(i)[1], frames[0].color(i)[2]}};
  auto orig = frames[0].withColors(cols);
  // Chroma noise only, Luma left uniform.
  auto rec = noisyCopies(std::vector<PointCloud>{orig}, 1, 5)[0];
  std::vector<ColorTriple> rc(rec.colors().begin(), rec.colors().end());
  for (auto& c : rc)
    c.c[0] = 90;
  rec = rec.withColors(rc);

  for (auto c : classifyLuma(gatherNeighbors(rec)))
    CHECK(c == 1);
  std::vector<PointCloud> o{orig}, r{rec};
  auto seq = enhanceGofVcwf(o, r, 22);
  const auto& p = seq.stream.frames[0];
  for (int j = 1; j < 5; j++) {
    CHECK_FALSE(p.classFlags[j]);
    CHECK_FALSE(p.classCoeffs[j].has_value());
  }
  CHECK(decodeReplay(r, seq.stream) == seq.filtered);
}

TEST_CASE("VCWF with nothing to gain sends no class flags")
{
  auto frames = smallSequence(2, 6);
  auto seq = enhanceGofVcwf(frames, frames, 34);
  for (const auto& p : seq.stream.frames) {
    CHECK_FALSE(p.componentFlags[0]);
    CHECK(framePayloadBits(seq.stream.header, p) == 3);
  }
  CHECK(serialize(seq.stream).size() == StreamHeader::kSize + 2);
}

TEST_CASE("VCWF refines the single-set solution")
{
  for (uint64_t seed = 1; seed <= 6; seed++) {
    auto frames = smallSequence(1, seed);
    auto rec = noisyCopies(frames, seed * 7, 2 + int(seed));
    auto seq = enhanceGofVcwf(frames, rec, 28);
    const auto& d = seq.diagnostics[0];
    REQUIRE(d.lumaSseSingleSet.has_value());
    REQUIRE(d.lumaSseClassSets.has_value());
    CHECK(*d.lumaSseClassSets <= *d.lumaSseSingleSet * (1 + 1e-9));

    // Independent single-set value.
    const auto M = gatherNeighbors(rec[0]);
    const RowMatrixView P(M, 0);
    const auto a = frames[0].component(0);
    const auto single = applyReal(P, solve(accumulate(P, a)).coeffs);
    CHECK(*d.lumaSseSingleSet == doctest::Approx(sse(a, single)).epsilon(1e-12));
  }
}

//----------------------------------------------------------------------------

TEST_CASE("decoder replay")
{
  auto frames = smallSequence(8, 11);
  auto rec = noisyCopies(frames, 5, 4);

  for (auto mode : {EnhancementMode::kBwf, EnhancementMode::kCiwf, EnhancementMode::kVcwf})
    for (int gof : {1, 3, 8}) {
      CAPTURE(modeName(mode));
      CAPTURE(gof);
      auto seq = encodeSequence(frames, rec, {mode, 28, gof});
      auto parsed = parse(serialize(seq.stream));
      CHECK(decodeReplay(rec, parsed) == seq.filtered);
      checkNeverWorse(seq.diagnostics);
    }

  SUBCASE("all-zero flags return the reconstruction")
  {
    PayloadStream s;
    s.header.mode = EnhancementMode::kCiwf;
    s.header.gofSize = 4;
    s.frames.resize(rec.size());
    auto out = decodeReplay(rec, s);
    for (std::size_t f = 0; f < rec.size(); f++)
      CHECK(out[f] == sortByMorton(rec[f]));
  }

  SUBCASE("truncated payload")
  {
    auto seq = encodeSequence(frames, rec, {EnhancementMode::kBwf, 22, 1});
    auto bytes = serialize(seq.stream);
    bytes.resize(bytes.size() - 3);
    CHECK_THROWS_AS(parse(bytes), ParseError);
  }

  SUBCASE("flag without coefficients")
  {
    PayloadStream s;
    s.header.mode = EnhancementMode::kCiwf;
    s.header.gofSize = 8;
    s.frames.resize(2);
    s.frames[1].componentFlags[1] = true;
    std::vector<PointCloud> two(rec.begin(), rec.begin() + 2);
    CHECK_THROWS_AS(decodeReplay(two, s), ValidationError);
  }
}

TEST_CASE("encoder output is independent of the thread count")
{
  SyntheticParams spec;
  spec.frames = 3;
  spec.width = 128;
  auto frames = makeSyntheticSequence(spec);
  auto rec = noisyCopies(frames, 9, 5);
  setMaxThreads(1);
  auto a = encodeSequence(frames, rec, {EnhancementMode::kVcwf, 28, 8});
  setMaxThreads(3);
  auto b = encodeSequence(frames, rec, {EnhancementMode::kVcwf, 28, 8});
  setMaxThreads(0);
  CHECK(a.stream == b.stream);
  CHECK(a.filtered == b.filtered);
}
