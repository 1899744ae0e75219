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

#include "pcwf/metrics.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace pcwf {

//============================================================================

double
psnrFromSse(double sse, std::size_t count, double peak)
{
  if (sse <= 0.0)
    return kInfinitePsnr;
  return 10.0 * std::log10(peak * peak * double(count) / sse);
}

double
psnr(std::span<const double> original, std::span<const double> candidate, double peak)
{
  if (original.size() != candidate.size())
    throw ValidationError("psnr: vector lengths differ");
  double sse = 0.0;
  for (std::size_t i = 0; i < original.size(); i++)
    sse += (original[i] - candidate[i]) * (original[i] - candidate[i]);
  return psnrFromSse(sse, original.size(), peak);
}

double
weightedPsnr(double luma, double cb, double cr)
{
  if (std::isinf(luma) || std::isinf(cb) || std::isinf(cr))
    return (7.0 * luma + cb + cr) / 9.0;
  // Same value as (7 Y + Cb + Cr) / 9, exact when all three agree.
  return luma + ((cb - luma) + (cr - luma)) / 9.0;
}

double
complexityRatio(double secondsProposed, double secondsAnchor)
{
  if (!(secondsAnchor > 0.0))
    throw ValidationError("anchor time must be positive");
  return 100.0 * secondsProposed / secondsAnchor;
}

//============================================================================

std::vector<double>
polyFit(std::span<const double> x, std::span<const double> y, int degree)
{
  const int m = degree + 1;
  const std::size_t n = x.size();
  if (y.size() != n || n < std::size_t(m))
    throw ValidationError("polyFit: not enough points");

  // Householder QR of the Vandermonde matrix, column-major.
  std::vector<double> V(n * m);
  for (std::size_t i = 0; i < n; i++) {
    double p = 1.0;
    for (int j = 0; j < m; j++, p *= x[i])
      V[j * n + i] = p;
  }
  std::vector<double> b(y.begin(), y.end());

  for (int j = 0; j < m; j++) {
    double norm = 0.0;
    for (std::size_t i = j; i < n; i++)
      norm += V[j * n + i] * V[j * n + i];
    norm = std::sqrt(norm);
    if (norm == 0.0)
      throw ValidationError("polyFit: degenerate abscissae");
    const double alpha = V[j * n + j] > 0 ? -norm : norm;
    std::vector<double> v(n, 0.0);
    for (std::size_t i = j; i < n; i++)
      v[i] = V[j * n + i];
    v[j] -= alpha;
    double vv = 0.0;
    for (std::size_t i = j; i < n; i++)
      vv += v[i] * v[i];
    if (vv == 0.0)
      continue;
    for (int c = j; c < m; c++) {
      double s = 0.0;
      for (std::size_t i = j; i < n; i++)
        s += v[i] * V[c * n + i];
      s = 2.0 * s / vv;
      for (std::size_t i = j; i < n; i++)
        V[c * n + i] -= s * v[i];
    }
    double s = 0.0;
    for (std::size_t i = j; i < n; i++)
      s += v[i] * b[i];
    s = 2.0 * s / vv;
    for (std::size_t i = j; i < n; i++)
      b[i] -= s * v[i];
  }

  std::vector<double> coeffs(m);
  for (int j = m - 1; j >= 0; j--) {
    double s = b[j];
    for (int c = j + 1; c < m; c++)
      s -= V[c * n + j] * coeffs[c];
    if (V[j * n + j] == 0.0)
      throw ValidationError("polyFit: rank deficient");
    coeffs[j] = s / V[j * n + j];
  }
  return coeffs;
}

//----------------------------------------------------------------------------

namespace {

  // Integral of a polynomial (ascending coefficients) over [lo, hi].
  double polyIntegral(const std::vector<double>& p, double lo, double hi)
  {
    double acc = 0.0;
    for (std::size_t j = 0; j < p.size(); j++) {
      const double e = double(j + 1);
      acc += p[j] / e * (std::pow(hi, e) - std::pow(lo, e));
    }
    return acc;
  }

  void checkCurve(std::span<const RatePoint> curve, const char* name)
  {
    if (curve.size() < 4)
      throw ValidationError(std::string("bdRate: ") + name + " needs at least 4 points");
    std::vector<RatePoint> pts(curve.begin(), curve.end());
    std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.bpop < b.bpop; });
    for (std::size_t i = 0; i < pts.size(); i++) {
      if (!(pts[i].bpop > 0.0) || !std::isfinite(pts[i].psnr))
        throw ValidationError(std::string("bdRate: ") + name + " has an invalid point");
      if (i && !(pts[i].bpop > pts[i - 1].bpop && pts[i].psnr > pts[i - 1].psnr))
        throw ValidationError(std::string("bdRate: ") + name + " is not strictly monotone");
    }
  }

}  // namespace

//----------------------------------------------------------------------------

double
bdRate(std::span<const RatePoint> anchor, std::span<const RatePoint> test)
{
  checkCurve(anchor, "anchor");
  checkCurve(test, "test");

  auto range = [](std::span<const RatePoint> curve) {
    auto [mn, mx] = std::minmax_element(
      curve.begin(), curve.end(),
      [](auto& a, auto& b) { return a.psnr < b.psnr; });
    return std::pair{mn->psnr, mx->psnr};
  };
  const auto [loA, hiA] = range(anchor);
  const auto [loT, hiT] = range(test);
  const double lo = std::max(loA, loT);
  const double hi = std::min(hiA, hiT);
  if (!(hi > lo))
    throw ValidationError("bdRate: psnr ranges do not overlap");

  // Fit about the centre of the common interval for conditioning.
  const double centre = 0.5 * (lo + hi);
  auto fit = [centre](std::span<const RatePoint> curve) {
    std::vector<double> q, r;
    for (const auto& p : curve) {
      q.push_back(p.psnr - centre);
      r.push_back(std::log10(p.bpop));
    }
    return polyFit(q, r, 3);
  };
  const auto pA = fit(anchor);
  const auto pT = fit(test);

  const double a = lo - centre, b = hi - centre;
  const double avgDiff =
    (polyIntegral(pT, a, b) - polyIntegral(pA, a, b)) / (hi - lo);
  return (std::pow(10.0, avgDiff) - 1.0) * 100.0;
}

//============================================================================

const char* const kRateCsvHeader =
  "qp,frames,points,bits,bpop,psnr_y,psnr_cb,psnr_cr,psnr_w";

std::string
csvNumber(double v)
{
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void
writeRateCsv(std::ostream& os, std::span<const RateRow> rows)
{
  os << kRateCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.qp << ',' << r.frames << ',' << r.points << ','
       << csvNumber(r.bits) << ',' << csvNumber(r.bpop) << ','
       << csvNumber(r.psnr[0]) << ',' << csvNumber(r.psnr[1]) << ','
       << csvNumber(r.psnr[2]) << ',' << csvNumber(r.psnrWeighted) << '\n';
  }
}

//----------------------------------------------------------------------------

namespace {

  double parseNumber(const std::string& s, int line)
  {
    if (s == "inf")
      return kInfinitePsnr;
    if (s == "-inf")
      return -kInfinitePsnr;
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ValidationError(
        "rate csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
  }

}  // namespace

std::vector<RateRow>
readRateCsv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line))
    throw ValidationError("rate csv: empty input");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != kRateCsvHeader)
    throw ValidationError("rate csv: unexpected header '" + line + "'");

  std::vector<RateRow> rows;
  for (int ln = 2; std::getline(is, line); ln++) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');)
      f.push_back(cell);
    if (f.size() != 9)
      throw ValidationError(
        "rate csv line " + std::to_string(ln) + ": expected 9 fields");

    RateRow r;
    r.qp = int(parseNumber(f[0], ln));
    r.frames = std::size_t(parseNumber(f[1], ln));
    r.points = std::size_t(parseNumber(f[2], ln));
    r.bits = parseNumber(f[3], ln);
    r.bpop = parseNumber(f[4], ln);
    for (int c = 0; c < kNumComponents; c++)
      r.psnr[c] = parseNumber(f[5 + c], ln);
    r.psnrWeighted = parseNumber(f[8], ln);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pcwf
