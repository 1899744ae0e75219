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

#include "pcwf/neighbor_search.h"

#include <span>
#include <vector>

namespace pcwf {

//============================================================================
// Normal equations of the least-squares filter: A = P^T P (autocorrelation)
// and c = P^T a (cross-correlation) for a row-major n x k matrix P.

struct NormalEquation {
  explicit NormalEquation(int k = kFilterOrder)
    : k(k), A(std::size_t(k) * k, 0.0), c(k, 0.0)
  {}

  double at(int r, int col) const { return A[std::size_t(r) * k + col]; }

  int k;
  std::vector<double> A;
  std::vector<double> c;
  std::size_t samples = 0;
};

//----------------------------------------------------------------------------

struct FilterCoefficients {
  std::vector<double> h;

  static FilterCoefficients identity(int k = kFilterOrder);

  int order() const { return int(h.size()); }
  friend bool operator==(const FilterCoefficients&, const FilterCoefficients&) = default;
};

struct SolveResult {
  FilterCoefficients coeffs;
  bool degraded = false;
  double ridge = 0.0;
};

//============================================================================
// Row-major n x k view of one component of a NeighborMatrix (or any other
// matrix with the same layout).

struct RowMatrixView {
  RowMatrixView(std::span<const double> values, int k)
    : values(values), k(k)
  {}
  RowMatrixView(const NeighborMatrix& m, int c)
    : values(m.component(c)), k(NeighborMatrix::k)
  {}

  std::size_t rows() const { return values.size() / std::size_t(k); }
  std::span<const double> row(std::size_t i) const
  {
    return values.subspan(i * k, k);
  }

  std::span<const double> values;
  int k;
};

//----------------------------------------------------------------------------

// Accumulates over all rows in ascending order.
NormalEquation accumulate(const RowMatrixView& P, std::span<const double> original);

// Accumulates over the listed rows only; rows must be ascending.
NormalEquation accumulate(
  const RowMatrixView& P,
  std::span<const double> original,
  std::span<const uint32_t> rows);

// Solves (A + eps I) h = c with eps = 1e-6 * trace(A) / k by Cholesky
// factorisation followed by one refinement step.  An empty or all-zero
// system, a failed factorisation or a non-finite solution yield the
// identity filter with degraded set.
SolveResult solve(const NormalEquation& eq);

// Real-valued P * h.
std::vector<double> applyReal(const RowMatrixView& P, const FilterCoefficients& h);
double applyRow(std::span<const double> row, const FilterCoefficients& h);

// P * h rounded half away from zero and clamped to [0, 255].
std::vector<int> apply(const RowMatrixView& P, const FilterCoefficients& h);

double mse(std::span<const double> x, std::span<const double> y);
double sse(std::span<const double> x, std::span<const double> y);

}  // namespace pcwf
