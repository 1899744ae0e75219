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

#include "pcwf/classify.h"
#include "pcwf/wiener.h"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace pcwf {

//============================================================================

enum class EnhancementMode : uint8_t
{
  kBwf = 0,
  kCiwf = 1,
  kVcwf = 2,
};

const char* modeName(EnhancementMode mode);
EnhancementMode parseModeName(const std::string& name);

//----------------------------------------------------------------------------
// s1.14 fixed point taps.

constexpr int kCoeffFracBits = 14;
constexpr int kCoeffBits = 16;
constexpr int kCoeffSetBits = kCoeffBits * kFilterOrder;

struct QuantizedFilter {
  std::array<int16_t, kFilterOrder> raw{};

  friend bool operator==(const QuantizedFilter&, const QuantizedFilter&) = default;
};

struct QuantizeResult {
  QuantizedFilter q;
  bool clamped = false;
};

QuantizeResult quantizeFilter(const FilterCoefficients& h);
FilterCoefficients dequantizeFilter(const QuantizedFilter& q);

//============================================================================
// Flags and coefficient sets of one frame.
//
// componentFlags[0] is flag_Luma in every mode.  Under VCWF the Luma
// coefficients live in classCoeffs and classFlags carries flag_cat_1..5;
// componentCoeffs[0] is unused.  Coefficients are present only on the first
// frame of a GOF (every frame under BWF) and only for flagged sets.

struct FramePayload {
  std::array<bool, kNumComponents> componentFlags{};
  std::array<bool, kNumLumaClasses> classFlags{};
  std::array<std::optional<QuantizedFilter>, kNumComponents> componentCoeffs;
  std::array<std::optional<QuantizedFilter>, kNumLumaClasses> classCoeffs;

  int coefficientSetCount() const;
  friend bool operator==(const FramePayload&, const FramePayload&) = default;
};

struct StreamHeader {
  static constexpr uint8_t kVersion = 1;
  static constexpr std::size_t kSize = 9;

  uint8_t version = kVersion;
  uint8_t qp = 0;
  uint8_t gofSize = 8;
  uint8_t k = kFilterOrder;
  EnhancementMode mode = EnhancementMode::kBwf;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct PayloadStream {
  StreamHeader header;
  std::vector<FramePayload> frames;

  friend bool operator==(const PayloadStream&, const PayloadStream&) = default;
};

// True when frame index carries coefficient sets under the header's mode.
bool carriesCoefficients(const StreamHeader& header, std::size_t frame);

// Exact number of payload bits (before byte alignment) of one frame.
int framePayloadBits(const StreamHeader& header, const FramePayload& p);

// Throws ValidationError when a payload is inconsistent with its position
// in the stream (coefficients on an inheriting frame, VCWF flag mismatch).
std::vector<uint8_t> serialize(const PayloadStream& stream);

// Throws ParseError with the byte offset (and frame index) of the fault.
PayloadStream parse(std::span<const uint8_t> bytes);

}  // namespace pcwf
