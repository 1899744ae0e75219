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

// pcwf: command-line front end.
//
//   simulate  surrogate-code a sequence, optionally with in-loop filtering
//   enhance   filter reconstructed frames against their originals
//   decode    replay a payload over reconstructed frames
//   bdrate    BD-rate between two rate tables
//   analyze   local stationarity report of one cloud
//   demo      simulate -> enhance -> decode -> bdrate with self-checks

#include "pcwf/enhancer.h"
#include "pcwf/metrics.h"
#include "pcwf/parallel.h"
#include "pcwf/ply.h"
#include "pcwf/sequence_codec.h"
#include "pcwf/stationarity.h"
#include "pcwf/surrogate.h"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace pcwf;

namespace {

//============================================================================
// Options shared by the subcommands.

struct Options {
  std::string mode = "vcwf";
  std::vector<int> qps{51, 46, 40, 34, 28, 22};
  int gof = 8;
  uint64_t seed = 1;
  std::vector<std::string> in;
  std::vector<std::string> recon;
  std::string out;
  std::string payload;
  std::string bits;
  std::string anchor;
  std::string test;
  int depth = 6;
  int subblocks = 100;
  int threads = 0;
  bool timing = false;
  bool synthetic = false;
  int frames = 8;
  int width = 64;
  bool rgb = false;
  bool ascii = false;
  double scale = 1.0;
  std::vector<double> offset{0, 0, 0};
  std::string enhance;  // simulate: in-loop mode, empty for none
};

//----------------------------------------------------------------------------

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PlyReadOptions
readOptions(const Options& o)
{
  PlyReadOptions r;
  r.convertRgb = o.rgb;
  r.scale = o.scale;
  if (o.offset.size() != 3)
    throw CliError("--offset takes three values");
  r.offset = {o.offset[0], o.offset[1], o.offset[2]};
  return r;
}

PlyWriteOptions
writeOptions(const Options& o)
{
  return {o.ascii, o.rgb};
}

// A single directory argument expands to the .ply files it holds.
std::vector<std::string>
expandInputs(const std::vector<std::string>& args)
{
  if (args.size() == 1 && fs::is_directory(args[0])) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(args[0]))
      if (e.path().extension() == ".ply")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw CliError("no .ply files in " + args[0]);
    return files;
  }
  return args;
}

std::vector<PointCloud>
loadFrames(const std::vector<std::string>& args, const Options& o)
{
  std::vector<PointCloud> frames;
  for (const auto& path : expandInputs(args)) {
    try {
      frames.push_back(readPly(path, readOptions(o)));
    } catch (const ValidationError& e) {
      throw CliError(path + ": " + e.what());
    }
  }
  if (frames.empty())
    throw CliError("no input frames");
  return frames;
}

std::vector<PointCloud>
inputSequence(const Options& o)
{
  if (o.synthetic) {
    SyntheticParams spec;
    spec.frames = o.frames;
    spec.width = o.width;
    spec.seed = o.seed;
    return makeSyntheticSequence(spec);
  }
  if (o.in.empty())
    throw CliError("give --in frames or --synthetic");
  return loadFrames(o.in, o);
}

fs::path
outputDir(const Options& o)
{
  if (o.out.empty())
    throw CliError("--out is required");
  fs::create_directories(o.out);
  return o.out;
}

std::string
frameName(const char* stem, std::size_t f)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.ply", stem, f);
  return buf;
}

void
writeFrames(const fs::path& dir, const char* stem,
            std::span<const PointCloud> frames, const Options& o)
{
  for (std::size_t f = 0; f < frames.size(); f++)
    writePly((dir / frameName(stem, f)).string(), frames[f], writeOptions(o));
}

std::ofstream
openOut(const fs::path& path, bool binary = false)
{
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os)
    throw CliError("cannot write " + path.string());
  return os;
}

std::vector<uint8_t>
readBytes(const std::string& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw CliError("cannot open " + path);
  return {std::istreambuf_iterator<char>(is), {}};
}

void
writeBytes(const fs::path& path, std::span<const uint8_t> bytes)
{
  auto os = openOut(path, true);
  os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

//============================================================================

// One row per frame of a surrogate run.
void
writeBitsCsv(std::ostream& os, const CodecRun& run, bool header)
{
  if (header)
    os << "qp,frame,points,residual_bits,payload_bits,bpop,psnr_y,psnr_cb,psnr_cr,psnr_w\n";
  for (std::size_t f = 0; f < run.output.size(); f++) {
    const double payload = run.diagnostics.empty() ? 0 : run.diagnostics[f].payloadBits;
    const auto r = makeRateRow(
      run.qp, std::span(&run.originals[f], 1), std::span(&run.output[f], 1),
      run.residualBits[f] + payload);
    os << run.qp << ',' << f << ',' << r.points << ',' << csvNumber(run.residualBits[f])
       << ',' << csvNumber(payload) << ',' << csvNumber(r.bpop);
    for (double p : r.psnr)
      os << ',' << csvNumber(p);
    os << ',' << csvNumber(r.psnrWeighted) << '\n';
  }
}

void
printTiming(const char* what, double proposed, double anchor)
{
  std::printf("%s: %.3f s vs %.3f s, complexity ratio %.1f%%\n", what, proposed, anchor,
              complexityRatio(proposed, anchor));
}

//----------------------------------------------------------------------------

int
cmdSimulate(const Options& o)
{
  const auto frames = inputSequence(o);
  const auto dir = outputDir(o);
  std::optional<EnhancerConfig> enh;
  if (!o.enhance.empty())
    enh = EnhancerConfig{parseModeName(o.enhance), 0, o.gof};

  if (o.synthetic)
    writeFrames(dir, "original", frames, o);

  auto bits = openOut(dir / "bits.csv");
  std::vector<RateRow> rates;
  for (std::size_t k = 0; k < o.qps.size(); k++) {
    const int qp = o.qps[k];
    const auto run = runCodec(frames, qp, enh);
    const auto sub = dir / ("qp" + std::to_string(qp));
    fs::create_directories(sub);
    writeFrames(sub, "reconstructed", run.reconstructed, o);
    if (enh) {
      writeFrames(sub, "filtered", run.output, o);
      writeBytes(sub / "payload.pcwf", serialize(*run.stream));
    }
    writeBitsCsv(bits, run, k == 0);
    rates.push_back(run.rate());

    if (o.timing) {
      if (enh) {
        const double anchor = runCodec(frames, qp).codecSeconds;
        printTiming(("qp " + std::to_string(qp) + " encoder").c_str(),
                    run.codecSeconds + run.enhanceSeconds, anchor);
      } else {
        std::printf("qp %d codec: %.3f s\n", qp, run.codecSeconds);
      }
    }
  }
  auto rate = openOut(dir / "rate.csv");
  writeRateCsv(rate, rates);
  return 0;
}

//----------------------------------------------------------------------------

int
cmdEnhance(const Options& o)
{
  const auto originals = loadFrames(o.in, o);
  const auto recon = loadFrames(o.recon, o);
  if (o.qps.size() != 1)
    throw CliError("enhance takes a single --qp");
  const EnhancerConfig cfg{parseModeName(o.mode), o.qps[0], o.gof};

  std::vector<double> residual(recon.size(), 0.0);
  if (!o.bits.empty()) {
    // Residual bits from a simulate bits.csv, matched by qp and frame.
    std::ifstream is(o.bits);
    if (!is)
      throw CliError("cannot open " + o.bits);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
      std::stringstream ss(line);
      std::string qp, frame, points, rbits;
      std::getline(ss, qp, ',');
      std::getline(ss, frame, ',');
      std::getline(ss, points, ',');
      std::getline(ss, rbits, ',');
      try {
        const auto f = std::stoul(frame);
        if (std::stoi(qp) == cfg.qp && f < residual.size())
          residual[f] = std::stod(rbits);
      } catch (const std::exception&) {
        throw CliError("malformed bits table " + o.bits);
      }
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto seq = encodeSequence(originals, recon, cfg);
  const double secs =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto dir = outputDir(o);
  writeFrames(dir, "filtered", seq.filtered, o);
  const auto bytes = serialize(seq.stream);
  writeBytes(o.payload.empty() ? dir / "payload.pcwf" : fs::path(o.payload), bytes);

  auto csv = openOut(dir / "metrics.csv");
  csv << "frame,points,residual_bits,payload_bits,bpop,"
         "psnr_y,psnr_cb,psnr_cr,psnr_w,flag_y,flag_cb,flag_cr\n";
  for (std::size_t f = 0; f < seq.filtered.size(); f++) {
    const auto& d = seq.diagnostics[f];
    const auto orig = sortByMorton(originals[f]);
    const auto r = makeRateRow(cfg.qp, std::span(&orig, 1), std::span(&seq.filtered[f], 1),
                               residual[f] + d.payloadBits);
    csv << f << ',' << r.points << ',' << csvNumber(residual[f]) << ',' << d.payloadBits
        << ',' << csvNumber(r.bpop);
    for (double p : r.psnr)
      csv << ',' << csvNumber(p);
    csv << ',' << csvNumber(r.psnrWeighted);
    for (bool b : seq.stream.frames[f].componentFlags)
      csv << ',' << int(b);
    csv << '\n';
  }
  if (o.timing)
    std::printf("enhance: %.3f s for %zu frames, payload %zu bytes\n", secs,
                seq.filtered.size(), bytes.size());
  return 0;
}

//----------------------------------------------------------------------------

int
cmdDecode(const Options& o)
{
  if (o.payload.empty())
    throw CliError("--payload is required");
  const auto recon = loadFrames(o.recon, o);
  const auto bytes = readBytes(o.payload);
  const auto stream = parse(bytes);

  const auto t0 = std::chrono::steady_clock::now();
  const auto out = decodeReplay(recon, stream);
  const double secs =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  writeFrames(outputDir(o), "filtered", out, o);
  if (o.timing)
    std::printf("decode: %.3f s for %zu frames\n", secs, out.size());
  return 0;
}

//----------------------------------------------------------------------------

std::vector<RateRow>
loadRates(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw CliError("cannot open " + path);
  try {
    return readRateCsv(is);
  } catch (const ValidationError& e) {
    throw CliError(path + ": " + e.what());
  }
}

// Per-component BD-rate of test against anchor over their common QPs.
std::array<double, 4>
bdRateTable(std::span<const RateRow> anchor, std::span<const RateRow> test)
{
  std::map<int, const RateRow*> byQp;
  for (const auto& r : test)
    byQp[r.qp] = &r;
  std::array<std::vector<RatePoint>, 4> a, t;
  for (const auto& r : anchor) {
    auto it = byQp.find(r.qp);
    if (it == byQp.end())
      continue;
    for (int c = 0; c < 3; c++) {
      a[c].push_back({r.bpop, r.psnr[c]});
      t[c].push_back({it->second->bpop, it->second->psnr[c]});
    }
    a[3].push_back({r.bpop, r.psnrWeighted});
    t[3].push_back({it->second->bpop, it->second->psnrWeighted});
  }
  if (a[0].size() < 4)
    throw CliError("need at least four common rate points");
  std::array<double, 4> out;
  for (int c = 0; c < 4; c++)
    out[c] = bdRate(a[c], t[c]);
  return out;
}

void
printBdTable(std::ostream& os, const std::array<double, 4>& bd)
{
  os << "component,bd_rate_percent\n"
     << "y," << csvNumber(bd[0]) << "\ncb," << csvNumber(bd[1]) << "\ncr,"
     << csvNumber(bd[2]) << "\nweighted," << csvNumber(bd[3]) << '\n';
}

int
cmdBdrate(const Options& o)
{
  if (o.anchor.empty() || o.test.empty())
    throw CliError("--anchor and --test are required");
  const auto bd = bdRateTable(loadRates(o.anchor), loadRates(o.test));
  printBdTable(std::cout, bd);
  if (!o.out.empty()) {
    auto os = openOut(o.out);
    printBdTable(os, bd);
  }
  return 0;
}

//----------------------------------------------------------------------------

int
cmdAnalyze(const Options& o)
{
  if (o.in.size() != 1)
    throw CliError("analyze takes one --in cloud");
  const auto cloud = loadFrames(o.in, o)[0];
  if (o.out.empty()) {
    wssReport(std::cout, cloud, o.depth, o.subblocks);
  } else {
    auto os = openOut(o.out);
    wssReport(os, cloud, o.depth, o.subblocks);
  }
  return 0;
}

//============================================================================
// demo: anchor and enhanced sweeps on the synthetic sequence, file round
// trip of every enhanced run, never-worse audit and BD-rate.

int
cmdDemo(const Options& o)
{
  SyntheticParams spec;
  spec.frames = o.frames;
  spec.width = o.width;
  spec.seed = o.seed;
  const auto frames = makeSyntheticSequence(spec);
  const EnhancerConfig cfg{parseModeName(o.mode), 0, o.gof};
  const fs::path dir = o.out.empty() ? fs::temp_directory_path() / "pcwf-demo" : fs::path(o.out);
  fs::create_directories(dir);

  int violations = 0;
  auto violation = [&](const std::string& what) {
    std::fprintf(stderr, "violation: %s\n", what.c_str());
    violations++;
  };

  std::vector<RateRow> anchorRates, testRates;
  double anchorSecs = 0, testSecs = 0;
  for (int qp : o.qps) {
    const auto anchor = runCodec(frames, qp);
    const auto run = runCodec(frames, qp, cfg);
    anchorRates.push_back(anchor.rate());
    testRates.push_back(run.rate());
    anchorSecs += anchor.codecSeconds;
    testSecs += run.codecSeconds + run.enhanceSeconds;

    // Encoder files, then decode from the files alone.
    const auto sub = dir / ("qp" + std::to_string(qp));
    fs::create_directories(sub);
    writeFrames(sub, "reconstructed", run.reconstructed, o);
    writeFrames(sub, "filtered", run.output, o);
    writeBytes(sub / "payload.pcwf", serialize(*run.stream));

    Options dec = o;
    dec.recon = {};
    for (std::size_t f = 0; f < run.reconstructed.size(); f++)
      dec.recon.push_back((sub / frameName("reconstructed", f)).string());
    dec.payload = (sub / "payload.pcwf").string();
    dec.timing = false;
    dec.out = (sub / "decoded").string();
    cmdDecode(dec);
    for (std::size_t f = 0; f < run.output.size(); f++) {
      const auto a = readBytes((sub / frameName("filtered", f)).string());
      const auto b = readBytes((sub / "decoded" / frameName("filtered", f)).string());
      if (a != b)
        violation("decoded frame " + std::to_string(f) + " differs at qp " + std::to_string(qp));
    }

    // Never worse than the reconstruction, measured on the output itself.
    for (std::size_t f = 0; f < run.output.size(); f++) {
      const auto before = sequenceSse(std::span(&frames[f], 1), std::span(&run.reconstructed[f], 1));
      const auto after = sequenceSse(std::span(&frames[f], 1), std::span(&run.output[f], 1));
      for (int c = 0; c < kNumComponents; c++)
        if (after[c] > before[c])
          violation("frame " + std::to_string(f) + " component " + std::to_string(c) +
                    " got worse at qp " + std::to_string(qp));
    }
    std::printf("qp %2d  anchor %.4f bpop %.3f dB   %s %.4f bpop %.3f dB  payload %zu bits\n",
                qp, anchorRates.back().bpop, anchorRates.back().psnr[0], o.mode.c_str(),
                testRates.back().bpop, testRates.back().psnr[0], run.payloadBits());
  }

  {
    auto a = openOut(dir / "anchor_rate.csv");
    writeRateCsv(a, anchorRates);
    auto t = openOut(dir / "test_rate.csv");
    writeRateCsv(t, testRates);
  }
  if (o.qps.size() >= 4) {
    Options bd = o;
    bd.anchor = (dir / "anchor_rate.csv").string();
    bd.test = (dir / "test_rate.csv").string();
    bd.out = (dir / "bdrate.csv").string();
    cmdBdrate(bd);
  }
  if (o.timing)
    printTiming("encoder", testSecs, anchorSecs);

  std::printf("%s: %d violation(s), outputs in %s\n", violations ? "FAILED" : "ok",
              violations, dir.string().c_str());
  return violations ? 1 : 0;
}

//============================================================================
// --config FILE: plain key=value lines, '#' comments.  Keys are long option
// names; values given on the command line win.

std::vector<std::string>
configArgs(const std::string& path, const std::vector<std::string>& given)
{
  std::ifstream is(path);
  if (!is)
    throw CliError("cannot open config " + path);
  std::vector<std::string> extra;
  std::string line;
  for (int n = 1; std::getline(is, line); n++) {
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CliError(path + ":" + std::to_string(n) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = "--" + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const bool overridden = std::any_of(given.begin(), given.end(), [&](const auto& a) {
      return a == key || a.rfind(key + "=", 0) == 0;
    });
    if (overridden)
      continue;
    if (value == "true" || value == "false") {
      if (value == "true")
        extra.push_back(key);
    } else {
      extra.push_back(key + "=" + value);
    }
  }
  return extra;
}

//----------------------------------------------------------------------------

void
addCommon(CLI::App* cmd, Options& o)
{
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  cmd->add_flag("--timing", o.timing, "print timing and complexity ratios");
  cmd->add_flag("--rgb", o.rgb, "PLY colours are RGB (converted to YCbCr and back)");
  cmd->add_flag("--ascii", o.ascii, "write ASCII PLY");
  cmd->add_option("--scale", o.scale, "position scale applied on read");
  cmd->add_option("--offset", o.offset, "position offset x,y,z applied after scale")
    ->delimiter(',')
    ->expected(3);
}

void
addSynthetic(CLI::App* cmd, Options& o)
{
  cmd->add_flag("--synthetic", o.synthetic, "use the seeded synthetic sequence");
  cmd->add_option("--frames", o.frames, "synthetic frame count")->check(CLI::PositiveNumber);
  cmd->add_option("--width", o.width, "synthetic surface width")->check(CLI::Range(2, 4096));
  cmd->add_option("--seed", o.seed, "synthetic seed");
}

}  // namespace

//============================================================================

int
main(int argc, char** argv)
{
  Options o;
  CLI::App app{"Wiener-filter attribute enhancement for point cloud sequences"};
  app.require_subcommand(1);

  const auto modeCheck = CLI::IsMember({"bwf", "ciwf", "vcwf"});
  const auto qpCheck = CLI::Range(0, 63);

  auto* sim = app.add_subcommand("simulate", "surrogate-code a sequence");
  addSynthetic(sim, o);
  sim->add_option("--in", o.in, "input PLY frames or a directory");
  sim->add_option("--qp", o.qps, "QP list")->delimiter(',')->check(qpCheck);
  sim->add_option("--enhance", o.enhance, "in-loop filtering mode")->check(modeCheck);
  sim->add_option("--gof", o.gof, "GOF size")->check(CLI::Range(1, 255));
  sim->add_option("--out", o.out, "output directory")->required();
  addCommon(sim, o);

  auto* enh = app.add_subcommand("enhance", "filter reconstructed frames");
  enh->add_option("--in", o.in, "original PLY frames or a directory")->required();
  enh->add_option("--recon", o.recon, "reconstructed PLY frames or a directory")->required();
  enh->add_option("--mode", o.mode, "bwf, ciwf or vcwf")->check(modeCheck);
  enh->add_option("--qp", o.qps, "QP (sets lambda)")->delimiter(',')->check(qpCheck);
  enh->add_option("--gof", o.gof, "GOF size")->check(CLI::Range(1, 255));
  enh->add_option("--payload", o.payload, "payload file (default OUT/payload.pcwf)");
  enh->add_option("--bits", o.bits, "bits.csv from simulate, for BPOP");
  enh->add_option("--out", o.out, "output directory")->required();
  addCommon(enh, o);

  auto* dec = app.add_subcommand("decode", "replay a payload");
  dec->add_option("--recon", o.recon, "reconstructed PLY frames or a directory")->required();
  dec->add_option("--payload", o.payload, "payload file")->required();
  dec->add_option("--out", o.out, "output directory")->required();
  addCommon(dec, o);

  auto* bd = app.add_subcommand("bdrate", "BD-rate between two rate tables");
  bd->add_option("--anchor", o.anchor, "anchor rate.csv")->required();
  bd->add_option("--test", o.test, "test rate.csv")->required();
  bd->add_option("--out", o.out, "also write the table here");

  auto* an = app.add_subcommand("analyze", "local stationarity report");
  an->add_option("--in", o.in, "input PLY")->required();
  an->add_option("--depth", o.depth, "octree depth")->check(CLI::Range(1, 21));
  an->add_option("--subblocks", o.subblocks, "subblocks per block")->check(CLI::PositiveNumber);
  an->add_option("--out", o.out, "CSV output (default stdout)");
  addCommon(an, o);

  auto* demo = app.add_subcommand("demo", "end-to-end run with self-checks");
  addSynthetic(demo, o);
  demo->add_option("--mode", o.mode, "bwf, ciwf or vcwf")->check(modeCheck);
  demo->add_option("--qp", o.qps, "QP list")->delimiter(',')->check(qpCheck);
  demo->add_option("--gof", o.gof, "GOF size")->check(CLI::Range(1, 255));
  demo->add_option("--out", o.out, "output directory");
  addCommon(demo, o);

  std::string config;
  for (auto* cmd : {sim, enh, dec, bd, an, demo})
    cmd->add_option("--config", config, "key=value defaults file");

  try {
    // Config values are spliced in ahead of parsing, skipping keys that
    // already appear on the command line.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i + 1 < args.size(); i++)
      if (args[i] == "--config") {
        const auto extra = configArgs(args[i + 1], args);
        args.insert(args.end(), extra.begin(), extra.end());
        break;
      }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  setMaxThreads(o.threads);
  try {
    if (*sim)
      return cmdSimulate(o);
    if (*enh)
      return cmdEnhance(o);
    if (*dec)
      return cmdDecode(o);
    if (*bd)
      return cmdBdrate(o);
    if (*an)
      return cmdAnalyze(o);
    return cmdDemo(o);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "payload error: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return 1;
}
