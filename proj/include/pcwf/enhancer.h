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

#include "pcwf/bitstream.h"
#include "pcwf/classify.h"
#include "pcwf/rdo.h"
#include "pcwf/wiener.h"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace pcwf {

//============================================================================
// Dequantised coefficient sets transmitted on the first frame of a GOF.
// A set is present iff its flag was set on that frame.

struct GofCoefficientBuffer {
  std::array<std::optional<FilterCoefficients>, kNumComponents> component;
  std::array<std::optional<FilterCoefficients>, kNumLumaClasses> lumaClass;
  std::size_t originFrame = 0;

  void clear(std::size_t origin)
  {
    *this = GofCoefficientBuffer{};
    originFrame = origin;
  }
};

struct EnhancerConfig {
  EnhancementMode mode = EnhancementMode::kBwf;
  int qp = 34;
  int gofSize = 8;

  StreamHeader header() const;
};

//----------------------------------------------------------------------------
// One RD decision.  lumaClass is 0 for a whole component, else 1..5.
// forcedOff marks sets that could not be filtered (nothing buffered or an
// empty class); both costs then equal the unfiltered cost.

struct RdAudit {
  std::size_t frame = 0;
  int component = 0;
  int lumaClass = 0;
  bool forcedOff = false;
  RdDecision decision;
};

struct FrameDiagnostics {
  std::size_t frame = 0;
  bool gofFirst = false;
  std::array<double, kNumComponents> sseReconstructed{};
  std::array<double, kNumComponents> sseOutput{};
  int payloadBits = 0;
  std::vector<RdAudit> decisions;

  // VCWF, GOF-first frames: in-sample Luma SSE before rounding with the
  // unquantised single-set solution and with the per-class solutions.
  std::optional<double> lumaSseSingleSet;
  std::optional<double> lumaSseClassSets;
};

struct EncodedFrame {
  PointCloud filtered;
  FramePayload payload;
  FrameDiagnostics diagnostics;
};

struct EncodedSequence {
  std::vector<PointCloud> filtered;
  PayloadStream stream;
  std::vector<FrameDiagnostics> diagnostics;
};

//============================================================================
// Encoder side.  Frames are fed in order; output clouds are Morton sorted.
// Every filtered value is produced with the dequantised coefficients so
// EnhancementDecoder reproduces it bit for bit.

class Enhancer {
public:
  explicit Enhancer(EnhancerConfig cfg);

  // Throws ValidationError when the two clouds differ in geometry.
  EncodedFrame encodeFrame(const PointCloud& original, const PointCloud& reconstructed);

  const EnhancerConfig& config() const { return _cfg; }
  StreamHeader header() const { return _cfg.header(); }
  std::size_t framesEncoded() const { return _frame; }

private:
  void encodeComponent(
    int c, bool first, const NeighborMatrix& M,
    std::span<const double> orig, std::span<const double> rec,
    std::vector<ColorTriple>& out, EncodedFrame& ef);

  void encodeLumaClasses(
    bool first, const NeighborMatrix& M,
    std::span<const double> orig, std::span<const double> rec,
    std::vector<ColorTriple>& out, EncodedFrame& ef);

  EnhancerConfig _cfg;
  double _lambda;
  std::size_t _frame = 0;
  GofCoefficientBuffer _buffer;
};

//----------------------------------------------------------------------------

class EnhancementDecoder {
public:
  explicit EnhancementDecoder(StreamHeader header);

  // Throws ValidationError when the payload references a set that was
  // never transmitted.
  PointCloud decodeFrame(const PointCloud& reconstructed, const FramePayload& payload);

private:
  StreamHeader _header;
  std::size_t _frame = 0;
  GofCoefficientBuffer _buffer;
};

//============================================================================

EncodedFrame enhanceFrameBwf(
  const PointCloud& original, const PointCloud& reconstructed, int qp);

// One GOF: coefficients estimated on the first frame only.
EncodedSequence enhanceGofCiwf(
  std::span<const PointCloud> originals,
  std::span<const PointCloud> reconstructed,
  int qp);

EncodedSequence enhanceGofVcwf(
  std::span<const PointCloud> originals,
  std::span<const PointCloud> reconstructed,
  int qp);

EncodedSequence encodeSequence(
  std::span<const PointCloud> originals,
  std::span<const PointCloud> reconstructed,
  const EnhancerConfig& cfg);

std::vector<PointCloud> decodeReplay(
  std::span<const PointCloud> reconstructed, const PayloadStream& stream);

}  // namespace pcwf
