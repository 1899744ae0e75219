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

#include "pcwf/wiener.h"

#include "pcwf/parallel.h"

#include <cmath>

namespace pcwf {

//============================================================================

FilterCoefficients
FilterCoefficients::identity(int k)
{
  FilterCoefficients f;
  f.h.assign(k, 0.0);
  f.h[0] = 1.0;
  return f;
}

//============================================================================

namespace {

  void accumulateRow(
    NormalEquation& eq, std::span<const double> row, double target)
  {
    const int k = eq.k;
    for (int r = 0; r < k; r++) {
      const double pr = row[r];
      double* Ar = &eq.A[std::size_t(r) * k];
      for (int c = r; c < k; c++)
        Ar[c] += pr * row[c];
      eq.c[r] += pr * target;
    }
    eq.samples++;
  }

  void mirrorUpper(NormalEquation& eq)
  {
    const int k = eq.k;
    for (int r = 0; r < k; r++)
      for (int c = 0; c < r; c++)
        eq.A[std::size_t(r) * k + c] = eq.A[std::size_t(c) * k + r];
  }

}  // namespace

//----------------------------------------------------------------------------

NormalEquation
accumulate(const RowMatrixView& P, std::span<const double> original)
{
  if (P.rows() != original.size())
    throw ValidationError("neighbour rows and original length differ");

  NormalEquation eq(P.k);
  for (std::size_t i = 0; i < original.size(); i++)
    accumulateRow(eq, P.row(i), original[i]);
  mirrorUpper(eq);
  return eq;
}

//----------------------------------------------------------------------------

NormalEquation
accumulate(
  const RowMatrixView& P,
  std::span<const double> original,
  std::span<const uint32_t> rows)
{
  if (P.rows() != original.size())
    throw ValidationError("neighbour rows and original length differ");

  NormalEquation eq(P.k);
  for (auto i : rows) {
    if (i >= original.size())
      throw ValidationError("row index out of range");
    accumulateRow(eq, P.row(i), original[i]);
  }
  mirrorUpper(eq);
  return eq;
}

//============================================================================

namespace {

  // In-place lower Cholesky factor of a k x k row-major SPD matrix.
  bool cholesky(std::vector<double>& L, int k)
  {
    for (int j = 0; j < k; j++) {
      double d = L[std::size_t(j) * k + j];
      for (int p = 0; p < j; p++)
        d -= L[std::size_t(j) * k + p] * L[std::size_t(j) * k + p];
      if (!(d > 0.0) || !std::isfinite(d))
        return false;
      d = std::sqrt(d);
      L[std::size_t(j) * k + j] = d;
      for (int i = j + 1; i < k; i++) {
        double s = L[std::size_t(i) * k + j];
        for (int p = 0; p < j; p++)
          s -= L[std::size_t(i) * k + p] * L[std::size_t(j) * k + p];
        L[std::size_t(i) * k + j] = s / d;
      }
    }
    return true;
  }

  std::vector<double>
  choleskySolve(const std::vector<double>& L, int k, std::vector<double> b)
  {
    for (int i = 0; i < k; i++) {
      for (int p = 0; p < i; p++)
        b[i] -= L[std::size_t(i) * k + p] * b[p];
      b[i] /= L[std::size_t(i) * k + i];
    }
    for (int i = k - 1; i >= 0; i--) {
      for (int p = i + 1; p < k; p++)
        b[i] -= L[std::size_t(p) * k + i] * b[p];
      b[i] /= L[std::size_t(i) * k + i];
    }
    return b;
  }

}  // namespace

//----------------------------------------------------------------------------

SolveResult
solve(const NormalEquation& eq)
{
  const int k = eq.k;
  SolveResult result;
  result.coeffs = FilterCoefficients::identity(k);

  double trace = 0.0;
  for (int i = 0; i < k; i++)
    trace += eq.at(i, i);
  const double eps = 1e-6 * trace / k;
  result.ridge = eps;

  if (eq.samples == 0 || !(trace > 0.0)) {
    result.degraded = true;
    return result;
  }

  std::vector<double> M = eq.A;
  for (int i = 0; i < k; i++)
    M[std::size_t(i) * k + i] += eps;

  std::vector<double> L = M;
  if (!cholesky(L, k)) {
    result.degraded = true;
    return result;
  }

  auto h = choleskySolve(L, k, eq.c);

  // One step of iterative refinement against the regularised system.
  std::vector<double> r(eq.c);
  for (int i = 0; i < k; i++)
    for (int j = 0; j < k; j++)
      r[i] -= M[std::size_t(i) * k + j] * h[j];
  auto delta = choleskySolve(L, k, std::move(r));
  for (int i = 0; i < k; i++)
    h[i] += delta[i];

  for (double v : h) {
    if (!std::isfinite(v)) {
      result.degraded = true;
      return result;
    }
  }

  result.coeffs.h = std::move(h);
  return result;
}

//============================================================================

double
applyRow(std::span<const double> row, const FilterCoefficients& h)
{
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); j++)
    acc += row[j] * h.h[j];
  return acc;
}

//----------------------------------------------------------------------------

std::vector<double>
applyReal(const RowMatrixView& P, const FilterCoefficients& h)
{
  if (h.order() != P.k)
    throw ValidationError("filter order does not match neighbour rows");

  std::vector<double> out(P.rows());
  parallelFor(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++)
      out[i] = applyRow(P.row(i), h);
  });
  return out;
}

//----------------------------------------------------------------------------

std::vector<int>
apply(const RowMatrixView& P, const FilterCoefficients& h)
{
  auto real = applyReal(P, h);
  std::vector<int> out(real.size());
  for (std::size_t i = 0; i < real.size(); i++)
    out[i] = clampAttr(real[i]);
  return out;
}

//============================================================================

double
sse(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
    throw ValidationError("vector lengths differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); i++) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

double
mse(std::span<const double> x, std::span<const double> y)
{
  const double s = sse(x, y);
  return x.empty() ? 0.0 : s / double(x.size());
}

}  // namespace pcwf
