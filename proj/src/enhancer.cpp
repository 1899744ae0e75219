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

#include "pcwf/enhancer.h"

namespace pcwf {

//============================================================================

StreamHeader
EnhancerConfig::header() const
{
  if (qp < 0 || qp > 255)
    throw ValidationError("qp out of range");
  if (gofSize < 1 || gofSize > 255)
    throw ValidationError("GOF size out of range");

  StreamHeader h;
  h.qp = uint8_t(qp);
  h.gofSize = uint8_t(mode == EnhancementMode::kBwf ? 1 : gofSize);
  h.mode = mode;
  return h;
}

//============================================================================

namespace {

  // Rounded filter output for the listed rows.
  std::vector<int> filterRows(
    const RowMatrixView& P,
    const FilterCoefficients& h,
    std::span<const uint32_t> rows)
  {
    std::vector<int> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); r++)
      out[r] = clampAttr(applyRow(P.row(rows[r]), h));
    return out;
  }

  double sseRows(
    std::span<const double> a,
    std::span<const double> b,
    std::span<const uint32_t> rows)
  {
    double acc = 0.0;
    for (auto i : rows)
      acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc;
  }

  double sseRowsInt(
    std::span<const double> a,
    std::span<const int> filtered,
    std::span<const uint32_t> rows)
  {
    double acc = 0.0;
    for (std::size_t r = 0; r < rows.size(); r++) {
      const double d = a[rows[r]] - filtered[r];
      acc += d * d;
    }
    return acc;
  }

  struct Prepared {
    PointCloud rec;
    NeighborMatrix M;
  };

  Prepared prepare(const PointCloud& reconstructed)
  {
    PointCloud rec = sortByMorton(reconstructed);
    NeighborMatrix M = gatherNeighbors(rec);
    return {std::move(rec), std::move(M)};
  }

}  // namespace

//============================================================================

Enhancer::Enhancer(EnhancerConfig cfg)
  : _cfg(cfg), _lambda(rdLambda(cfg.qp))
{
  _cfg.header();
}

//----------------------------------------------------------------------------

EncodedFrame
Enhancer::encodeFrame(const PointCloud& original, const PointCloud& reconstructed)
{
  const PointCloud orig = sortByMorton(original);
  auto [rec, M] = prepare(reconstructed);
  if (!orig.sameGeometry(rec))
    throw ValidationError(
      "original and reconstructed geometry differ in frame "
      + std::to_string(_frame));

  const bool first = carriesCoefficients(header(), _frame);
  if (first)
    _buffer.clear(_frame);

  EncodedFrame ef{rec, FramePayload{}, FrameDiagnostics{}};
  ef.diagnostics.frame = _frame;
  ef.diagnostics.gofFirst = first;

  std::vector<ColorTriple> out(rec.colors().begin(), rec.colors().end());
  for (int c = 0; c < kNumComponents; c++) {
    const auto origC = orig.component(c);
    const auto recC = rec.component(c);
    ef.diagnostics.sseReconstructed[c] = sse(origC, recC);
    if (c == 0 && _cfg.mode == EnhancementMode::kVcwf)
      encodeLumaClasses(first, M, origC, recC, out, ef);
    else
      encodeComponent(c, first, M, origC, recC, out, ef);
  }

  ef.filtered = rec.withColors(std::move(out));
  for (int c = 0; c < kNumComponents; c++)
    ef.diagnostics.sseOutput[c] =
      sse(orig.component(c), ef.filtered.component(c));
  ef.diagnostics.payloadBits = framePayloadBits(header(), ef.payload);

  _frame++;
  return ef;
}

//----------------------------------------------------------------------------

void
Enhancer::encodeComponent(
  int c, bool first, const NeighborMatrix& M,
  std::span<const double> orig, std::span<const double> rec,
  std::vector<ColorTriple>& out, EncodedFrame& ef)
{
  const RowMatrixView P(M, c);
  const double sseUnf = sse(orig, rec);

  RdAudit audit;
  audit.frame = _frame;
  audit.component = c;

  std::optional<FilterCoefficients> coeffs;
  std::optional<QuantizedFilter> quantized;
  int bits = 1;
  if (first) {
    auto sol = solve(accumulate(P, orig));
    quantized = quantizeFilter(sol.coeffs).q;
    coeffs = dequantizeFilter(*quantized);
    bits += kCoeffSetBits;
  } else {
    coeffs = _buffer.component[c];
  }

  if (!coeffs) {
    audit.forcedOff = true;
    audit.decision = rdDecide(sseUnf, sseUnf, 1, _lambda);
    ef.diagnostics.decisions.push_back(audit);
    return;
  }

  const auto filtered = apply(P, *coeffs);
  double sseFil = 0.0;
  for (std::size_t i = 0; i < filtered.size(); i++)
    sseFil += (orig[i] - filtered[i]) * (orig[i] - filtered[i]);

  audit.decision = rdDecide(sseUnf, sseFil, bits, _lambda);
  ef.diagnostics.decisions.push_back(audit);
  if (!audit.decision.flag)
    return;

  ef.payload.componentFlags[c] = true;
  if (first) {
    ef.payload.componentCoeffs[c] = quantized;
    _buffer.component[c] = coeffs;
  }
  for (std::size_t i = 0; i < filtered.size(); i++)
    out[i][c] = uint8_t(filtered[i]);
}

//----------------------------------------------------------------------------

void
Enhancer::encodeLumaClasses(
  bool first, const NeighborMatrix& M,
  std::span<const double> orig, std::span<const double> rec,
  std::vector<ColorTriple>& out, EncodedFrame& ef)
{
  const RowMatrixView P(M, 0);
  const auto classes = classifyLuma(M);
  const auto groups = groupByClass(classes);

  if (first) {
    auto single = solve(accumulate(P, orig));
    ef.diagnostics.lumaSseSingleSet = sse(orig, applyReal(P, single.coeffs));
    ef.diagnostics.lumaSseClassSets = 0.0;
  }

  bool any = false;
  for (int j = 0; j < kNumLumaClasses; j++) {
    const auto& rows = groups[j];
    const double sseUnf = sseRows(orig, rec, rows);

    RdAudit audit;
    audit.frame = _frame;
    audit.component = 0;
    audit.lumaClass = j + 1;

    std::optional<FilterCoefficients> coeffs;
    std::optional<QuantizedFilter> quantized;
    int bits = 1;
    if (first && !rows.empty()) {
      auto sol = solve(accumulate(P, orig, rows));
      double classSse = 0.0;
      for (auto i : rows) {
        const double d = orig[i] - applyRow(P.row(i), sol.coeffs);
        classSse += d * d;
      }
      *ef.diagnostics.lumaSseClassSets += classSse;

      quantized = quantizeFilter(sol.coeffs).q;
      coeffs = dequantizeFilter(*quantized);
      bits += kCoeffSetBits;
    } else if (!first) {
      coeffs = _buffer.lumaClass[j];
    }

    if (!coeffs || rows.empty()) {
      audit.forcedOff = true;
      audit.decision = rdDecide(sseUnf, sseUnf, 1, _lambda);
      ef.diagnostics.decisions.push_back(audit);
      continue;
    }

    const auto filtered = filterRows(P, *coeffs, rows);
    audit.decision =
      rdDecide(sseUnf, sseRowsInt(orig, filtered, rows), bits, _lambda);
    ef.diagnostics.decisions.push_back(audit);
    if (!audit.decision.flag)
      continue;

    any = true;
    ef.payload.classFlags[j] = true;
    if (first) {
      ef.payload.classCoeffs[j] = quantized;
      _buffer.lumaClass[j] = coeffs;
    }
    for (std::size_t r = 0; r < rows.size(); r++)
      out[rows[r]][0] = uint8_t(filtered[r]);
  }
  ef.payload.componentFlags[0] = any;
}

//============================================================================

EnhancementDecoder::EnhancementDecoder(StreamHeader header)
  : _header(header)
{}

//----------------------------------------------------------------------------

PointCloud
EnhancementDecoder::decodeFrame(
  const PointCloud& reconstructed, const FramePayload& payload)
{
  const bool first = carriesCoefficients(_header, _frame);
  const bool vcwf = _header.mode == EnhancementMode::kVcwf;
  const std::string where = " in frame " + std::to_string(_frame);

  if (first) {
    _buffer.clear(_frame);
    for (int c = 0; c < kNumComponents; c++)
      if (payload.componentCoeffs[c])
        _buffer.component[c] = dequantizeFilter(*payload.componentCoeffs[c]);
    for (int j = 0; j < kNumLumaClasses; j++)
      if (payload.classCoeffs[j])
        _buffer.lumaClass[j] = dequantizeFilter(*payload.classCoeffs[j]);
  }
  _frame++;

  bool anyFlag = false;
  for (bool f : payload.componentFlags)
    anyFlag |= f;
  if (!anyFlag)
    return sortByMorton(reconstructed);

  auto [rec, M] = prepare(reconstructed);
  std::vector<ColorTriple> out(rec.colors().begin(), rec.colors().end());

  for (int c = 0; c < kNumComponents; c++) {
    if (!payload.componentFlags[c])
      continue;
    const RowMatrixView P(M, c);

    if (c == 0 && vcwf) {
      const auto groups = groupByClass(classifyLuma(M));
      for (int j = 0; j < kNumLumaClasses; j++) {
        if (!payload.classFlags[j])
          continue;
        if (!_buffer.lumaClass[j])
          throw ValidationError(
            "class " + std::to_string(j + 1) + " flagged without coefficients"
            + where);
        const auto filtered = filterRows(P, *_buffer.lumaClass[j], groups[j]);
        for (std::size_t r = 0; r < groups[j].size(); r++)
          out[groups[j][r]][0] = uint8_t(filtered[r]);
      }
      continue;
    }

    if (!_buffer.component[c])
      throw ValidationError(
        "component " + std::to_string(c) + " flagged without coefficients"
        + where);
    const auto filtered = apply(P, *_buffer.component[c]);
    for (std::size_t i = 0; i < filtered.size(); i++)
      out[i][c] = uint8_t(filtered[i]);
  }

  return rec.withColors(std::move(out));
}

//============================================================================

EncodedFrame
enhanceFrameBwf(const PointCloud& original, const PointCloud& reconstructed, int qp)
{
  Enhancer enc({EnhancementMode::kBwf, qp, 1});
  return enc.encodeFrame(original, reconstructed);
}

//----------------------------------------------------------------------------

EncodedSequence
encodeSequence(
  std::span<const PointCloud> originals,
  std::span<const PointCloud> reconstructed,
  const EnhancerConfig& cfg)
{
  if (originals.size() != reconstructed.size())
    throw ValidationError("original and reconstructed frame counts differ");

  Enhancer enc(cfg);
  EncodedSequence seq;
  seq.stream.header = enc.header();
  for (std::size_t f = 0; f < originals.size(); f++) {
    auto ef = enc.encodeFrame(originals[f], reconstructed[f]);
    seq.filtered.push_back(std::move(ef.filtered));
    seq.stream.frames.push_back(std::move(ef.payload));
    seq.diagnostics.push_back(std::move(ef.diagnostics));
  }
  return seq;
}

//----------------------------------------------------------------------------

EncodedSequence
enhanceGofCiwf(
  std::span<const PointCloud> originals,
  std::span<const PointCloud> reconstructed,
  int qp)
{
  return encodeSequence(
    originals, reconstructed,
    {EnhancementMode::kCiwf, qp, int(std::max<std::size_t>(1, originals.size()))});
}

EncodedSequence
enhanceGofVcwf(
  std::span<const PointCloud> originals,
  std::span<const PointCloud> reconstructed,
  int qp)
{
  return encodeSequence(
    originals, reconstructed,
    {EnhancementMode::kVcwf, qp, int(std::max<std::size_t>(1, originals.size()))});
}

//----------------------------------------------------------------------------

std::vector<PointCloud>
decodeReplay(
  std::span<const PointCloud> reconstructed, const PayloadStream& stream)
{
  if (reconstructed.size() != stream.frames.size())
    throw ValidationError(
      "payload has " + std::to_string(stream.frames.size())
      + " frames, reconstruction has " + std::to_string(reconstructed.size()));

  EnhancementDecoder dec(stream.header);
  std::vector<PointCloud> out;
  out.reserve(reconstructed.size());
  for (std::size_t f = 0; f < reconstructed.size(); f++)
    out.push_back(dec.decodeFrame(reconstructed[f], stream.frames[f]));
  return out;
}

}  // namespace pcwf
