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

#include "pcwf/bitstream.h"

#include <cstring>

namespace pcwf {

//============================================================================

const char*
modeName(EnhancementMode mode)
{
  switch (mode) {
  case EnhancementMode::kBwf: return "bwf";
  case EnhancementMode::kCiwf: return "ciwf";
  case EnhancementMode::kVcwf: return "vcwf";
  }
  return "?";
}

EnhancementMode
parseModeName(const std::string& name)
{
  if (name == "bwf")
    return EnhancementMode::kBwf;
  if (name == "ciwf")
    return EnhancementMode::kCiwf;
  if (name == "vcwf")
    return EnhancementMode::kVcwf;
  throw ValidationError("unknown mode: " + name);
}

//============================================================================

QuantizeResult
quantizeFilter(const FilterCoefficients& h)
{
  if (h.order() != kFilterOrder)
    throw ValidationError("only order-7 filters can be serialised");

  QuantizeResult r;
  for (int i = 0; i < kFilterOrder; i++) {
    double v = roundHalfAway(h.h[i] * (1 << kCoeffFracBits));
    if (v > INT16_MAX) {
      v = INT16_MAX;
      r.clamped = true;
    } else if (v < INT16_MIN) {
      v = INT16_MIN;
      r.clamped = true;
    }
    r.q.raw[i] = int16_t(v);
  }
  return r;
}

FilterCoefficients
dequantizeFilter(const QuantizedFilter& q)
{
  FilterCoefficients h;
  h.h.resize(kFilterOrder);
  for (int i = 0; i < kFilterOrder; i++)
    h.h[i] = double(q.raw[i]) / (1 << kCoeffFracBits);
  return h;
}

//============================================================================

int
FramePayload::coefficientSetCount() const
{
  int n = 0;
  for (const auto& c : componentCoeffs)
    n += c.has_value();
  for (const auto& c : classCoeffs)
    n += c.has_value();
  return n;
}

//----------------------------------------------------------------------------

bool
carriesCoefficients(const StreamHeader& header, std::size_t frame)
{
  if (header.mode == EnhancementMode::kBwf)
    return true;
  return frame % std::max<std::size_t>(1, header.gofSize) == 0;
}

//----------------------------------------------------------------------------

int
framePayloadBits(const StreamHeader& header, const FramePayload& p)
{
  int bits = kNumComponents;
  if (header.mode == EnhancementMode::kVcwf && p.componentFlags[0])
    bits += kNumLumaClasses;
  return bits + kCoeffSetBits * p.coefficientSetCount();
}

//============================================================================

namespace {

  class BitWriter {
  public:
    explicit BitWriter(std::vector<uint8_t>& out) : _out(out) {}

    void put(uint32_t value, int bits)
    {
      for (int b = bits - 1; b >= 0; b--) {
        if (_fill == 0)
          _out.push_back(0);
        if ((value >> b) & 1)
          _out.back() |= uint8_t(0x80 >> _fill);
        _fill = (_fill + 1) & 7;
      }
    }

    void align() { _fill = 0; }

  private:
    std::vector<uint8_t>& _out;
    int _fill = 0;
  };

  //--------------------------------------------------------------------------

  class BitReader {
  public:
    BitReader(std::span<const uint8_t> data, std::size_t pos)
      : _data(data), _pos(pos)
    {}

    bool atEnd() const { return _pos >= _data.size() && _fill == 0; }
    std::size_t bytePos() const { return _pos; }

    uint32_t get(int bits, int frame)
    {
      uint32_t v = 0;
      for (int b = 0; b < bits; b++) {
        if (_pos >= _data.size())
          throw ParseError("unexpected end of payload", _pos, frame);
        v = (v << 1) | ((_data[_pos] >> (7 - _fill)) & 1);
        if (++_fill == 8) {
          _fill = 0;
          _pos++;
        }
      }
      return v;
    }

    // Skips padding; padding bits must be zero.
    void align(int frame)
    {
      if (_fill == 0)
        return;
      const uint8_t pad = uint8_t(0xff >> _fill);
      if (_data[_pos] & pad)
        throw ParseError("non-zero padding bits", _pos, frame);
      _fill = 0;
      _pos++;
    }

  private:
    std::span<const uint8_t> _data;
    std::size_t _pos;
    int _fill = 0;
  };

  //--------------------------------------------------------------------------

  void checkFrame(const StreamHeader& hdr, const FramePayload& p, std::size_t f)
  {
    const bool first = carriesCoefficients(hdr, f);
    const bool vcwf = hdr.mode == EnhancementMode::kVcwf;
    const std::string where = " in frame " + std::to_string(f);

    for (int c = 0; c < kNumComponents; c++) {
      bool expect = first && p.componentFlags[c] && !(vcwf && c == 0);
      if (p.componentCoeffs[c].has_value() != expect)
        throw ValidationError("component coefficient presence mismatch" + where);
    }

    bool anyClass = false;
    for (int j = 0; j < kNumLumaClasses; j++) {
      anyClass |= p.classFlags[j];
      bool expect = vcwf && first && p.classFlags[j];
      if (p.classCoeffs[j].has_value() != expect)
        throw ValidationError("class coefficient presence mismatch" + where);
    }
    if (!vcwf && anyClass)
      throw ValidationError("class flags outside VCWF" + where);
    if (vcwf && anyClass != p.componentFlags[0])
      throw ValidationError("flag_Luma differs from OR of class flags" + where);
  }

  // Taps are little-endian: low byte first, each byte MSB first.
  void putFilter(BitWriter& w, const QuantizedFilter& q)
  {
    for (auto v : q.raw) {
      w.put(uint16_t(v) & 0xff, 8);
      w.put(uint16_t(v) >> 8, 8);
    }
  }

  QuantizedFilter getFilter(BitReader& r, int frame)
  {
    QuantizedFilter q;
    for (auto& v : q.raw) {
      const uint32_t lo = r.get(8, frame);
      v = int16_t(uint16_t(lo | (r.get(8, frame) << 8)));
    }
    return q;
  }

}  // namespace

//----------------------------------------------------------------------------

std::vector<uint8_t>
serialize(const PayloadStream& stream)
{
  const auto& hdr = stream.header;
  if (hdr.version != StreamHeader::kVersion || hdr.k != kFilterOrder)
    throw ValidationError("unsupported header");
  if (hdr.gofSize == 0)
    throw ValidationError("GOF size must be positive");

  std::vector<uint8_t> out{'P', 'C', 'W', 'F', hdr.version, hdr.qp,
                           hdr.gofSize, hdr.k, uint8_t(hdr.mode)};

  BitWriter w(out);
  const bool vcwf = hdr.mode == EnhancementMode::kVcwf;
  for (std::size_t f = 0; f < stream.frames.size(); f++) {
    const auto& p = stream.frames[f];
    checkFrame(hdr, p, f);

    w.put(p.componentFlags[0], 1);
    if (vcwf && p.componentFlags[0])
      for (bool b : p.classFlags)
        w.put(b, 1);
    w.put(p.componentFlags[1], 1);
    w.put(p.componentFlags[2], 1);

    for (const auto& q : p.classCoeffs)
      if (q)
        putFilter(w, *q);
    for (const auto& q : p.componentCoeffs)
      if (q)
        putFilter(w, *q);
    w.align();
  }
  return out;
}

//----------------------------------------------------------------------------

PayloadStream
parse(std::span<const uint8_t> bytes)
{
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "PCWF", 4) != 0)
    throw ParseError("bad magic", 0);
  if (bytes.size() < StreamHeader::kSize)
    throw ParseError("truncated header", bytes.size());

  PayloadStream s;
  auto& hdr = s.header;
  hdr.version = bytes[4];
  if (hdr.version != StreamHeader::kVersion)
    throw ParseError("unsupported version", 4);
  hdr.qp = bytes[5];
  hdr.gofSize = bytes[6];
  if (hdr.gofSize == 0)
    throw ParseError("GOF size must be positive", 6);
  hdr.k = bytes[7];
  if (hdr.k != kFilterOrder)
    throw ParseError("unsupported filter order", 7);
  if (bytes[8] > uint8_t(EnhancementMode::kVcwf))
    throw ParseError("reserved mode", 8);
  hdr.mode = EnhancementMode(bytes[8]);

  const bool vcwf = hdr.mode == EnhancementMode::kVcwf;
  BitReader r(bytes, StreamHeader::kSize);
  for (int f = 0; !r.atEnd(); f++) {
    FramePayload p;
    const bool first = carriesCoefficients(hdr, f);

    p.componentFlags[0] = r.get(1, f);
    if (vcwf && p.componentFlags[0]) {
      bool any = false;
      for (auto& b : p.classFlags)
        any |= (b = r.get(1, f));
      if (!any)
        throw ParseError("flag_Luma set with no class flag", r.bytePos(), f);
    }
    p.componentFlags[1] = r.get(1, f);
    p.componentFlags[2] = r.get(1, f);

    if (first) {
      for (int j = 0; j < kNumLumaClasses; j++)
        if (p.classFlags[j])
          p.classCoeffs[j] = getFilter(r, f);
      for (int c = 0; c < kNumComponents; c++)
        if (p.componentFlags[c] && !(vcwf && c == 0))
          p.componentCoeffs[c] = getFilter(r, f);
    }
    r.align(f);
    s.frames.push_back(std::move(p));
  }
  return s;
}

}  // namespace pcwf
