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
#include <string>

namespace pcwf {

//============================================================================
// PLY vertex I/O: x/y/z (any scalar type) and red/green/blue (uchar).
// Other vertex properties are skipped.  Positions are mapped through
// value * scale + offset and must land on non-negative integers.

struct PlyReadOptions {
  // Treat red/green/blue as RGB and convert to YCbCr.  Off: the three
  // colour properties are taken verbatim as Y, Cb, Cr.
  bool convertRgb = false;
  double scale = 1.0;
  std::array<double, 3> offset{};
};

struct PlyWriteOptions {
  bool ascii = false;
  // Convert YCbCr back to RGB on output.
  bool convertRgb = false;
};

PointCloud readPly(std::istream& is, const PlyReadOptions& opt = {});
PointCloud readPly(const std::string& path, const PlyReadOptions& opt = {});

void writePly(std::ostream& os, const PointCloud& cloud, const PlyWriteOptions& opt = {});
void writePly(const std::string& path, const PointCloud& cloud, const PlyWriteOptions& opt = {});

}  // namespace pcwf
