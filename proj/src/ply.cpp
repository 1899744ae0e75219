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

#include "pcwf/ply.h"

#include "pcwf/colour.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace pcwf {

namespace {

  enum class ScalarType { kI8, kU8, kI16, kU16, kI32, kU32, kF32, kF64 };

  ScalarType parseType(const std::string& t)
  {
    if (t == "char" || t == "int8") return ScalarType::kI8;
    if (t == "uchar" || t == "uint8") return ScalarType::kU8;
    if (t == "short" || t == "int16") return ScalarType::kI16;
    if (t == "ushort" || t == "uint16") return ScalarType::kU16;
    if (t == "int" || t == "int32") return ScalarType::kI32;
    if (t == "uint" || t == "uint32") return ScalarType::kU32;
    if (t == "float" || t == "float32") return ScalarType::kF32;
    if (t == "double" || t == "float64") return ScalarType::kF64;
    throw ValidationError("ply: unknown property type '" + t + "'");
  }

  std::size_t typeSize(ScalarType t)
  {
    switch (t) {
    case ScalarType::kI8:
    case ScalarType::kU8: return 1;
    case ScalarType::kI16:
    case ScalarType::kU16: return 2;
    case ScalarType::kI32:
    case ScalarType::kU32:
    case ScalarType::kF32: return 4;
    case ScalarType::kF64: return 8;
    }
    return 0;
  }

  template<typename T>
  T loadLe(const char* p)
  {
    static_assert(std::endian::native == std::endian::little);
    T v;
    std::memcpy(&v, p, sizeof v);
    return v;
  }

  double loadScalar(ScalarType t, const char* p)
  {
    switch (t) {
    case ScalarType::kI8: return loadLe<int8_t>(p);
    case ScalarType::kU8: return loadLe<uint8_t>(p);
    case ScalarType::kI16: return loadLe<int16_t>(p);
    case ScalarType::kU16: return loadLe<uint16_t>(p);
    case ScalarType::kI32: return loadLe<int32_t>(p);
    case ScalarType::kU32: return loadLe<uint32_t>(p);
    case ScalarType::kF32: return loadLe<float>(p);
    case ScalarType::kF64: return loadLe<double>(p);
    }
    return 0;
  }

  struct Property {
    std::string name;
    ScalarType type;
    bool isList = false;
  };

  struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<Property> props;
  };

  //--------------------------------------------------------------------------

  uint32_t toCoordinate(double v, const PlyReadOptions& opt, int axis)
  {
    const double mapped = v * opt.scale + opt.offset[axis];
    const double r = std::round(mapped);
    if (std::abs(mapped - r) > 1e-6)
      throw ValidationError(
        "ply: non-integral position " + std::to_string(mapped)
        + " after scale/offset");
    if (r < 0 || r > kMaxCoordinate)
      throw ValidationError(
        "ply: position " + std::to_string(mapped) + " out of range");
    return uint32_t(r);
  }

  int toColour(double v)
  {
    if (v < 0 || v > 255 || v != std::floor(v))
      throw ValidationError("ply: colour value out of range");
    return int(v);
  }

}  // namespace

//============================================================================

PointCloud
readPly(std::istream& is, const PlyReadOptions& opt)
{
  std::string line;
  if (!std::getline(is, line) || line.substr(0, 3) != "ply")
    throw ValidationError("ply: missing magic");

  bool ascii = false;
  bool formatSeen = false;
  std::vector<Element> elements;
  while (true) {
    if (!std::getline(is, line))
      throw ValidationError("ply: unterminated header");
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "end_header")
      break;
    if (kw == "comment" || kw == "obj_info" || kw.empty())
      continue;
    if (kw == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii")
        ascii = true;
      else if (fmt != "binary_little_endian")
        throw ValidationError("ply: unsupported format '" + fmt + "'");
      formatSeen = true;
    } else if (kw == "element") {
      Element e;
      ls >> e.name >> e.count;
      if (!ls)
        throw ValidationError("ply: bad element line");
      elements.push_back(e);
    } else if (kw == "property") {
      if (elements.empty())
        throw ValidationError("ply: property before element");
      Property p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string countType, itemType;
        ls >> countType >> itemType >> p.name;
        p.isList = true;
        p.type = parseType(itemType);
      } else {
        ls >> p.name;
        p.type = parseType(type);
      }
      elements.back().props.push_back(p);
    } else {
      throw ValidationError("ply: unexpected header keyword '" + kw + "'");
    }
  }
  if (!formatSeen)
    throw ValidationError("ply: missing format line");

  // Elements before the vertex element must be skippable.
  std::size_t vertexIdx = elements.size();
  for (std::size_t e = 0; e < elements.size(); e++) {
    if (elements[e].name == "vertex") {
      vertexIdx = e;
      break;
    }
    for (const auto& p : elements[e].props)
      if (p.isList && !ascii)
        throw ValidationError("ply: list property before vertex element");
  }
  if (vertexIdx == elements.size())
    throw ValidationError("ply: no vertex element");
  const Element& vtx = elements[vertexIdx];

  std::array<int, 6> slot;
  slot.fill(-1);
  const char* names[6] = {"x", "y", "z", "red", "green", "blue"};
  std::size_t stride = 0;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < vtx.props.size(); i++) {
    const auto& p = vtx.props[i];
    if (p.isList)
      throw ValidationError("ply: list property in vertex element");
    offsets.push_back(stride);
    stride += typeSize(p.type);
    for (int s = 0; s < 6; s++)
      if (p.name == names[s])
        slot[s] = int(i);
  }
  for (int s = 0; s < 6; s++)
    if (slot[s] < 0)
      throw ValidationError(std::string("ply: missing property ") + names[s]);
  for (int s = 3; s < 6; s++)
    if (vtx.props[slot[s]].type != ScalarType::kU8)
      throw ValidationError("ply: colour properties must be uchar");

  std::vector<double> values(vtx.props.size());
  std::vector<Point> points;
  points.reserve(vtx.count);

  auto makePoint = [&]() {
    Point pt;
    pt.pos.x = toCoordinate(values[slot[0]], opt, 0);
    pt.pos.y = toCoordinate(values[slot[1]], opt, 1);
    pt.pos.z = toCoordinate(values[slot[2]], opt, 2);
    const int r = toColour(values[slot[3]]);
    const int g = toColour(values[slot[4]]);
    const int b = toColour(values[slot[5]]);
    if (opt.convertRgb)
      pt.color = rgbToYCbCr(r, g, b);
    else
      pt.color.c = {uint8_t(r), uint8_t(g), uint8_t(b)};
    points.push_back(pt);
  };

  if (ascii) {
    for (std::size_t e = 0; e < vertexIdx; e++)
      for (std::size_t i = 0; i < elements[e].count; i++)
        std::getline(is, line);
    for (std::size_t i = 0; i < vtx.count; i++) {
      if (!std::getline(is, line))
        throw ValidationError("ply: truncated vertex data");
      std::istringstream ls(line);
      for (auto& v : values)
        if (!(ls >> v))
          throw ValidationError("ply: bad vertex line " + std::to_string(i));
      makePoint();
    }
  } else {
    for (std::size_t e = 0; e < vertexIdx; e++) {
      std::size_t sz = 0;
      for (const auto& p : elements[e].props)
        sz += typeSize(p.type);
      is.ignore(std::streamsize(sz * elements[e].count));
    }
    std::vector<char> buf(stride);
    for (std::size_t i = 0; i < vtx.count; i++) {
      if (!is.read(buf.data(), std::streamsize(stride)))
        throw ValidationError("ply: truncated vertex data");
      for (std::size_t p = 0; p < values.size(); p++)
        values[p] = loadScalar(vtx.props[p].type, buf.data() + offsets[p]);
      makePoint();
    }
  }

  return PointCloud(std::move(points));
}

//----------------------------------------------------------------------------

PointCloud
readPly(const std::string& path, const PlyReadOptions& opt)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open " + path);
  try {
    return readPly(is, opt);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

//============================================================================

void
writePly(std::ostream& os, const PointCloud& cloud, const PlyWriteOptions& opt)
{
  os << "ply\n"
     << "format " << (opt.ascii ? "ascii" : "binary_little_endian") << " 1.0\n"
     << "element vertex " << cloud.size() << '\n'
     << "property int x\nproperty int y\nproperty int z\n"
     << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
     << "end_header\n";

  for (std::size_t i = 0; i < cloud.size(); i++) {
    const auto& p = cloud.position(i);
    std::array<uint8_t, 3> col = cloud.color(i).c;
    if (opt.convertRgb)
      col = yCbCrToRgb(cloud.color(i));

    if (opt.ascii) {
      os << p.x << ' ' << p.y << ' ' << p.z << ' ' << int(col[0]) << ' '
         << int(col[1]) << ' ' << int(col[2]) << '\n';
    } else {
      char rec[15];
      const int32_t xyz[3] = {int32_t(p.x), int32_t(p.y), int32_t(p.z)};
      std::memcpy(rec, xyz, 12);
      std::memcpy(rec + 12, col.data(), 3);
      os.write(rec, sizeof rec);
    }
  }
}

//----------------------------------------------------------------------------

void
writePly(const std::string& path, const PointCloud& cloud, const PlyWriteOptions& opt)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot create " + path);
  writePly(os, cloud, opt);
  if (!os)
    throw std::runtime_error("failed writing " + path);
}

}  // namespace pcwf
