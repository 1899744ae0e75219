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

#include "pcwf/parallel.h"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace pcwf {

namespace {
  std::atomic<int> g_maxThreads{0};
}

void
setMaxThreads(int threads)
{
  g_maxThreads = std::max(0, threads);
}

int
maxThreads()
{
  int t = g_maxThreads;
  if (t == 0)
    t = int(std::max(1u, std::thread::hardware_concurrency()));
  return t;
}

//----------------------------------------------------------------------------

void
parallelFor(
  std::size_t n, const std::function<void(std::size_t, std::size_t)>& body)
{
  constexpr std::size_t kMinChunk = 4096;
  std::size_t workers = std::min<std::size_t>(maxThreads(), n / kMinChunk);
  if (workers <= 1) {
    if (n)
      body(0, n);
    return;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; w++) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end)
      break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool)
    t.join();
}

}  // namespace pcwf
