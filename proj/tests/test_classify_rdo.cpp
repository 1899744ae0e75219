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

#include "pcwf/classify.h"
#include "pcwf/rdo.h"
#include "test_util.h"

#include <cmath>

using namespace pcwf;

TEST_CASE("point variance")
{
  std::vector<double> flat(7, 42.0);
  CHECK(pointVariance(flat) == 0.0);
  std::vector<double> spike{10, 10, 10, 10, 10, 10, 80};
  CHECK(pointVariance(spike) == 600.0);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 1000; t++) {
    std::vector<double> row(7);
    for (auto& v : row)
      v = double(rng() % 256);
    double mean = 0;
    for (double v : row)
      mean += v;
    mean /= 7;
    double var = 0;
    for (double v : row)
      var += (v - mean) * (v - mean);
    var /= 7;
    CHECK(std::abs(pointVariance(row) - var) <= 1e-12 * std::max(var, 1.0));

    // Shift invariance.
    std::vector<double> shifted(row);
    for (auto& v : shifted)
      v += 17;
    CHECK(categorize(pointVariance(shifted)) == categorize(pointVariance(row)));
  }
}

TEST_CASE("categorize")
{
  CHECK(categorize(0) == 1);
  CHECK(categorize(9.999) == 1);
  CHECK(categorize(10) == 2);
  CHECK(categorize(15) == 2);
  CHECK(categorize(20) == 3);
  CHECK(categorize(39.9) == 3);
  CHECK(categorize(40) == 4);
  CHECK(categorize(60) == 5);
  CHECK(categorize(600) == 5);
  CHECK_THROWS_AS(categorize(-1), ValidationError);
  CHECK_THROWS_AS(categorize(std::nan("")), ValidationError);

  int last = 1;
  for (double v = 0; v < 100; v += 0.25) {
    const int c = categorize(v);
    CHECK(c >= last);
    CHECK(c >= 1);
    CHECK(c <= 5);
    last = c;
  }
}

TEST_CASE("classify and group")
{
  std::mt19937_64 rng(44);
  auto cloud = sortByMorton(test::randomCloud(rng, 800, 12));
  const auto M = gatherNeighbors(cloud);
  const auto classes = classifyLuma(M);
  REQUIRE(classes.size() == cloud.size());
  for (std::size_t i = 0; i < classes.size(); i++)
    CHECK(classes[i] == categorize(pointVariance(M.row(0, i))));

  const auto groups = groupByClass(classes);
  std::size_t total = 0;
  for (int k = 0; k < kNumLumaClasses; k++) {
    total += groups[k].size();
    for (std::size_t j = 0; j < groups[k].size(); j++) {
      CHECK(classes[groups[k][j]] == k + 1);
      if (j)
        CHECK(groups[k][j - 1] < groups[k][j]);
    }
  }
  CHECK(total == cloud.size());
}

//----------------------------------------------------------------------------

TEST_CASE("lambda")
{
  CHECK(rdLambda(12) == 0.85);
  CHECK(rdLambda(18) == 3.4);
  CHECK(rdLambda(46) == doctest::Approx(2193.2706).epsilon(1e-7));
  CHECK(rdLambda(24) == doctest::Approx(13.6).epsilon(1e-14));
  for (int qp = 0; qp < 60; qp++) {
    CHECK(rdLambda(qp + 1) > rdLambda(qp));
    CHECK(rdLambda(qp + 3) == doctest::Approx(2 * rdLambda(qp)).epsilon(1e-14));
  }
}

TEST_CASE("rd cost")
{
  CHECK(rdCost(0, 0, 0.85) == 0.0);
  CHECK(rdCost(1000, 100, rdLambda(24)) == doctest::Approx(2360).epsilon(1e-12));
  CHECK(rdCost(100, 10, rdLambda(12)) == doctest::Approx(108.5).epsilon(1e-14));
}

TEST_CASE("rd decision")
{
  const double lam = rdLambda(12);
  auto tie = rdDecide(500, 500, 113, lam);
  CHECK_FALSE(tie.flag);

  auto win = rdDecide(10000, 100, 113, lam);
  CHECK(win.flag);
  CHECK(win.costFiltered == doctest::Approx(196.05).epsilon(1e-12));
  CHECK(win.costUnfiltered == doctest::Approx(10000 + lam).epsilon(1e-12));
  CHECK(win.coeffBits == 113);

  auto inherited = rdDecide(100.0, 99.5, 0, lam);
  CHECK(inherited.flag);

  // Equal cost on both branches keeps the filter off.
  auto equalCost = rdDecide(100.0, 44.0, 113, 0.5);
  CHECK_FALSE(equalCost.flag);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; t++) {
    const double du = double(rng() % 100000), df = double(rng() % 100000);
    const int bits = int(rng() % 200);
    const auto d = rdDecide(du, df, bits, rdLambda(int(rng() % 52)));
    const double chosen = d.flag ? d.costFiltered : d.costUnfiltered;
    CHECK(chosen <= d.costUnfiltered);
    CHECK(d.flag == (d.costFiltered < d.costUnfiltered));
  }
}
