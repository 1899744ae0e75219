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
#include <span>
#include <vector>

namespace pcwf {

//============================================================================
// Scalar-quantisation stand-in for a real attribute codec.  Reconstructions
// are 8-bit; bit counts are order-0 empirical entropies of the coded
// symbols.

struct QuantizerConfig {
  explicit QuantizerConfig(int qp);

  int qp;
  double qstep;  // 2^((qp - 4) / 6)
};

struct CodedFrame {
  PointCloud reconstructed;
  // Quantisation indices per component, in reconstructed point order.
  std::array<std::vector<int>, kNumComponents> symbols;
  double bits = 0.0;
};

//----------------------------------------------------------------------------

// Real-valued dequantised level round(a / qstep) * qstep before the final
// rounding to 8 bits.
double quantizeLevel(double value, double qstep);

CodedFrame intraCode(const PointCloud& original, const QuantizerConfig& cfg);

// Residual coding against a reference reconstruction.  The reference is
// mapped onto the current geometry: identity when the geometry matches,
// otherwise each point takes its nearest occupied reference voxel.
CodedFrame interCode(
  const PointCloud& originalCur,
  const PointCloud& reconstructedRef,
  const QuantizerConfig& cfg);

// For every point of cur, the index of the nearest point in ref (squared
// Euclidean distance, ties to the smaller Morton code).  Both clouds must be
// Morton sorted.
std::vector<uint32_t> mapToReference(const PointCloud& cur, const PointCloud& ref);

// Sum over components of n * H0(symbols), in bits.
double entropyBits(std::span<const int> symbols);

//----------------------------------------------------------------------------
// Residual of the inter-frame distortion identity.  With
// D_ref = A_ref - Arec_ref and Arec_cur = Arec_ref + dA, returns
// max |(A_cur - Arec_cur) - (A_cur - A_ref - dA + D_ref)|.

double propagationIdentityCheck(
  std::span<const double> aCur,
  std::span<const double> aRef,
  std::span<const double> aRecRef,
  std::span<const double> deltaA);

}  // namespace pcwf
