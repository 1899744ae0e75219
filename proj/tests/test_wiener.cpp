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

#include "pcwf/wiener.h"
#include "test_util.h"

#include <Eigen/Dense>

#include <cmath>

using namespace pcwf;

namespace {

struct Pair {
  PointCloud original;
  PointCloud reconstructed;
};

// Reconstruction = original + uniform noise in [-amp, amp], clamped.
Pair
noisyPair(std::mt19937_64& rng, std::size_t n, double occupancy, int amp)
{
  auto orig = sortByMorton(test::randomCloud(rng, n, test::sideFor(n, occupancy)));
  std::vector<ColorTriple> cols(orig.size());
  for (std::size_t i = 0; i < orig.size(); i++)
    for (int c = 0; c < 3; c++) {
      const int v = orig.color(i)[c] + int(rng() % (2 * amp + 1)) - amp;
      cols[i].c[c] = uint8_t(std::clamp(v, 0, 255));
    }
  auto rec = orig.withColors(cols);
  return {std::move(orig), std::move(rec)};
}

// Solves min |P h - a|^2 + eps |h|^2 through Householder QR of the stacked
// system [P; sqrt(eps) I] h = [a; 0].
Eigen::VectorXd
ridgeOracle(const RowMatrixView& P, std::span<const double> a, double eps)
{
  const Eigen::Index n = Eigen::Index(P.rows()), k = P.k;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n + k, k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + k);
  for (Eigen::Index i = 0; i < n; i++) {
    for (Eigen::Index j = 0; j < k; j++)
      S(i, j) = P.row(i)[j];
    b(i) = a[i];
  }
  for (Eigen::Index j = 0; j < k; j++)
    S(n + j, j) = std::sqrt(eps);
  return S.householderQr().solve(b);
}

double
traceOf(const RowMatrixView& P)
{
  double t = 0;
  for (std::size_t i = 0; i < P.rows(); i++)
    for (double v : P.row(i))
      t += v * v;
  return t;
}

}  // namespace

TEST_CASE("accumulate hand examples")
{
  std::vector<double> row(7, 5.0), orig{5.0};
  auto eq = accumulate(RowMatrixView(row, 7), orig);
  for (int r = 0; r < 7; r++) {
    CHECK(eq.c[r] == 25.0);
    for (int c = 0; c < 7; c++)
      CHECK(eq.at(r, c) == 25.0);
  }
  CHECK(eq.samples == 1);

  std::vector<double> zeros(21, 0.0), zo(3, 0.0);
  auto z = accumulate(RowMatrixView(zeros, 7), zo);
  for (double v : z.A)
    CHECK(v == 0.0);
  for (double v : z.c)
    CHECK(v == 0.0);

  CHECK_THROWS_AS(accumulate(RowMatrixView(zeros, 7), orig), ValidationError);
}

TEST_CASE("accumulate matches an outer-product oracle")
{
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 255);
  std::vector<double> P(64 * 7), a(64);
  for (auto& v : P)
    v = u(rng);
  for (auto& v : a)
    v = u(rng);
  const RowMatrixView view(P, 7);
  const auto eq = accumulate(view, a);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(7, 7);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(7);
  for (int i = 0; i < 64; i++) {
    Eigen::Map<const Eigen::VectorXd> r(&P[i * 7], 7);
    A += r * r.transpose();
    c += r * a[i];
  }
  for (int r = 0; r < 7; r++) {
    CHECK(std::abs(eq.c[r] - c(r)) <= 1e-12 * std::abs(c(r)));
    for (int col = 0; col < 7; col++) {
      CHECK(std::abs(eq.at(r, col) - A(r, col)) <= 1e-12 * std::abs(A(r, col)));
      CHECK(eq.at(r, col) == eq.at(col, r));
    }
  }

  // Subset accumulation equals accumulation over the extracted rows.
  std::vector<uint32_t> rows{1, 5, 9, 33, 63};
  std::vector<double> subP, subA;
  for (auto r : rows) {
    subP.insert(subP.end(), &P[r * 7], &P[r * 7 + 7]);
    subA.push_back(a[r]);
  }
  const auto s1 = accumulate(view, a, rows);
  const auto s2 = accumulate(RowMatrixView(subP, 7), subA);
  CHECK(s1.A == s2.A);
  CHECK(s1.c == s2.c);
  CHECK(s1.samples == 5);
}

TEST_CASE("scalar normal equation")
{
  std::vector<double> rec{10, 20, 30, 40}, orig{11, 19, 33, 38};
  const RowMatrixView P(rec, 1);
  const auto res = solve(accumulate(P, orig));
  double num = 0, den = 0;
  for (int i = 0; i < 4; i++) {
    num += orig[i] * rec[i];
    den += rec[i] * rec[i];
  }
  const double eps = 1e-6 * den;
  CHECK(res.ridge == doctest::Approx(eps).epsilon(1e-12));
  CHECK(res.coeffs.h[0] == doctest::Approx(num / (den + eps)).epsilon(1e-14));
  CHECK_FALSE(res.degraded);
}

TEST_CASE("solver against a generic least-squares oracle")
{
  std::mt19937_64 rng(31);

  SUBCASE("fixed 5-point instance")
  {
    // A plus-shaped cluster so every point has at least one neighbour.
    std::vector<Point> pts{
      {{5, 5, 5}, ColorTriple{{120, 90, 140}}}, {{6, 5, 5}, ColorTriple{{131, 95, 133}}},
      {{4, 5, 5}, ColorTriple{{112, 88, 150}}}, {{5, 6, 5}, ColorTriple{{126, 93, 138}}},
      {{5, 5, 6}, ColorTriple{{117, 97, 145}}}};
    auto orig = sortByMorton(PointCloud(pts));
    std::vector<ColorTriple> noisy(orig.size());
    const int noise[5][3] = {{3, -2, 1}, {-4, 1, 0}, {2, 2, -3}, {0, -1, 4}, {-1, 3, -2}};
    for (std::size_t i = 0; i < orig.size(); i++)
      for (int c = 0; c < 3; c++)
        noisy[i].c[c] = uint8_t(orig.color(i)[c] + noise[i][c]);
    auto rec = orig.withColors(noisy);
    const auto M = gatherNeighbors(rec);
    for (int c = 0; c < 3; c++) {
      const RowMatrixView P(M, c);
      const auto a = orig.component(c);
      const auto res = solve(accumulate(P, a));
      const auto ref = ridgeOracle(P, a, 1e-6 * traceOf(P) / 7);
      for (int j = 0; j < 7; j++)
        CHECK(std::abs(res.coeffs.h[j] - ref(j)) <= 1e-8);
    }
  }

  SUBCASE("random dense instances")
  {
    for (int trial = 0; trial < 10; trial++) {
      auto pr = noisyPair(rng, 500, 0.6, 6);
      const auto M = gatherNeighbors(pr.reconstructed);
      for (int c = 0; c < 3; c++) {
        const RowMatrixView P(M, c);
        const auto a = pr.original.component(c);
        const auto res = solve(accumulate(P, a));
        const auto ref = ridgeOracle(P, a, 1e-6 * traceOf(P) / 7);
        for (int j = 0; j < 7; j++)
          CHECK(std::abs(res.coeffs.h[j] - ref(j)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("degraded solves fall back to the identity filter")
{
  NormalEquation empty;
  auto r = solve(empty);
  CHECK(r.degraded);
  CHECK(r.coeffs == FilterCoefficients::identity());

  std::vector<double> zeros(14, 0.0), zo(2, 0.0);
  auto z = solve(accumulate(RowMatrixView(zeros, 7), zo));
  CHECK(z.degraded);
  CHECK(z.coeffs == FilterCoefficients::identity());

  NormalEquation bad;
  bad.samples = 3;
  bad.A[0] = std::nan("");
  bad.A[8] = 1.0;
  CHECK(solve(bad).degraded);
}

TEST_CASE("in-sample optimality and residual orthogonality")
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; trial++) {
    const std::size_t n = 20 + rng() % 2000;
    auto pr = noisyPair(rng, n, 0.1 + 0.8 * double(rng() % 100) / 100, 1 + int(rng() % 10));
    const auto M = gatherNeighbors(pr.reconstructed);
    for (int c = 0; c < 3; c++) {
      const RowMatrixView P(M, c);
      const auto a = pr.original.component(c);
      const auto rec = pr.reconstructed.component(c);
      const auto eq = accumulate(P, a);
      const auto res = solve(eq);
      const auto filtered = applyReal(P, res.coeffs);
      const double before = mse(a, rec);
      const double after = mse(a, filtered);
      REQUIRE(after <= before * (1 + 1e-9) + 1e-12);

      double hmax = 0, rmax = 0;
      for (double v : res.coeffs.h)
        hmax = std::max(hmax, std::abs(v));
      for (int r = 0; r < 7; r++) {
        double s = 0;
        for (std::size_t i = 0; i < P.rows(); i++)
          s += P.row(i)[r] * (a[i] - filtered[i]);
        rmax = std::max(rmax, std::abs(s));
      }
      CHECK(rmax <= res.ridge * hmax + 1e-6);
    }
  }
}

TEST_CASE("apply")
{
  std::mt19937_64 rng(6);
  auto pr = noisyPair(rng, 300, 0.5, 5);
  const auto M = gatherNeighbors(pr.reconstructed);

  SUBCASE("identity filter reproduces the input")
  {
    for (int c = 0; c < 3; c++) {
      const auto out = apply(RowMatrixView(M, c), FilterCoefficients::identity());
      for (std::size_t i = 0; i < out.size(); i++)
        CHECK(out[i] == pr.reconstructed.color(i)[c]);
    }
  }

  SUBCASE("unit-gain filter on a constant cloud")
  {
    std::vector<ColorTriple> cols(pr.reconstructed.size(), ColorTriple{{77, 77, 77}});
    const auto cm = gatherNeighbors(pr.reconstructed.withColors(cols));
    FilterCoefficients h{{0.4, 0.3, -0.1, 0.2, 0.1, 0.05, 0.05}};
    for (int v : apply(RowMatrixView(cm, 0), h))
      CHECK(v == 77);
  }

  SUBCASE("dot-product oracle")
  {
    FilterCoefficients h{{0.7, 0.05, 0.05, 0.06, 0.04, 0.07, 0.03}};
    const RowMatrixView P(M, 1);
    const auto real = applyReal(P, h);
    const auto ints = apply(P, h);
    for (std::size_t i = 0; i < P.rows(); i++) {
      double s = 0;
      for (int j = 0; j < 7; j++)
        s += P.row(i)[j] * h.h[j];
      CHECK(std::abs(real[i] - s) <= 1e-12 * std::abs(s));
      CHECK(ints[i] == clampAttr(roundHalfAway(real[i])));
    }
  }
}

TEST_CASE("mse")
{
  std::vector<double> x{0, 0}, y{3, 4};
  CHECK(mse(x, x) == 0.0);
  CHECK(mse(x, y) == 12.5);
  CHECK(sse(x, y) == 25.0);
  std::vector<double> shorter{1};
  CHECK_THROWS_AS(mse(x, shorter), ValidationError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100, 100);
  std::vector<double> p(1000), q(1000);
  for (int i = 0; i < 1000; i++) {
    p[i] = u(rng);
    q[i] = u(rng);
  }
  double s = 0;
  for (int i = 0; i < 1000; i++)
    s += (p[i] - q[i]) * (p[i] - q[i]);
  CHECK(std::abs(mse(p, q) - s / 1000) <= 1e-12 * s / 1000);
}
