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

#include "pcwf/classify.h"

namespace pcwf {

double
pointVariance(std::span<const double> row)
{
  double mean = 0.0;
  for (double v : row)
    mean += v;
  mean /= double(row.size());

  double var = 0.0;
  for (double v : row)
    var += (v - mean) * (v - mean);
  return var / double(row.size());
}

//----------------------------------------------------------------------------

int
categorize(double variance)
{
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw ValidationError("variance must be finite and non-negative");

  int cls = 1;
  for (double t : kVarianceThresholds)
    if (variance >= t)
      cls++;
  return cls;
}

//----------------------------------------------------------------------------

std::vector<int>
classifyLuma(const NeighborMatrix& m)
{
  std::vector<int> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); i++)
    out[i] = categorize(pointVariance(m.row(0, i)));
  return out;
}

//----------------------------------------------------------------------------

std::array<std::vector<uint32_t>, kNumLumaClasses>
groupByClass(std::span<const int> classes)
{
  std::array<std::vector<uint32_t>, kNumLumaClasses> groups;
  for (std::size_t i = 0; i < classes.size(); i++)
    groups[classes[i] - 1].push_back(uint32_t(i));
  return groups;
}

}  // namespace pcwf
