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
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace pcwf {

//============================================================================

constexpr double kPeak = 255.0;
constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

// 10 log10(peak^2 n / SSE); +inf when SSE is zero.
double psnr(std::span<const double> original, std::span<const double> candidate, double peak = kPeak);
double psnrFromSse(double sse, std::size_t count, double peak = kPeak);

// (7 Y + Cb + Cr) / 9
double weightedPsnr(double luma, double cb, double cr);

// 100 * proposed / anchor.
double complexityRatio(double secondsProposed, double secondsAnchor);

//----------------------------------------------------------------------------

struct RatePoint {
  double bpop = 0.0;
  double psnr = 0.0;
};

// Bjontegaard delta rate of test against anchor, in percent.  Each curve
// is fitted with a least-squares cubic log10(rate) = p(psnr) and the
// difference of the integrals over the common psnr interval is averaged.
// Negative means the test curve needs fewer bits at equal quality.
// Throws ValidationError for fewer than four points, non-monotone curves or
// disjoint psnr ranges.
double bdRate(std::span<const RatePoint> anchor, std::span<const RatePoint> test);

// Least-squares polynomial fit, coefficients in ascending degree.
std::vector<double> polyFit(std::span<const double> x, std::span<const double> y, int degree);

//============================================================================
// Rate-point table: one row per QP of a run.
//
//   qp,frames,points,bits,bpop,psnr_y,psnr_cb,psnr_cr,psnr_w

struct RateRow {
  int qp = 0;
  std::size_t frames = 0;
  std::size_t points = 0;
  double bits = 0.0;
  double bpop = 0.0;
  std::array<double, kNumComponents> psnr{};
  double psnrWeighted = 0.0;
};

extern const char* const kRateCsvHeader;

void writeRateCsv(std::ostream& os, std::span<const RateRow> rows);

// Throws ValidationError on a header or field mismatch.
std::vector<RateRow> readRateCsv(std::istream& is);

// Formats a double for CSV output: shortest round-trip form, "inf" for
// infinity.
std::string csvNumber(double v);

}  // namespace pcwf
