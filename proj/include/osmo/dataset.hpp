#pragma once

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "osmo/chain.hpp"
#include "osmo/core.hpp"
#include "osmo/sensor_sim.hpp"

namespace osmo::dataset {

using retarget::JointVector;

// Fingertip tactile block: [axis][magnetometer][finger], uT.
using Tactile = std::array<std::array<std::array<double, 5>, 2>, 3>;
// Differential tactile: [axis][finger], mag0 - mag1.
using TactileDiff = std::array<std::array<double, 5>, 3>;

inline Tactile fingertip_slice(const sim::GloveFrame& frame) {
  Tactile g{};
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 2; ++m)
      for (int f = 0; f < 5; ++f) g[a][m][f] = frame.readings[f][m][a];
  return g;
}

inline TactileDiff preprocess_tactile(const Tactile& g) {
  TactileDiff d{};
  for (int a = 0; a < 3; ++a)
    for (int f = 0; f < 5; ++f) d[a][f] = g[a][0][f] - g[a][1][f];
  return d;
}

struct DemoFrame {
  std::uint64_t timestamp_us = 0;
  std::string rgb_ref;       // content-addressed image reference
  std::string ir_left_ref;
  std::string ir_right_ref;
  Tactile tactile{};
};

struct RobotFrame {
  std::uint64_t timestamp_us = 0;
  std::string rgb_ref;
  JointVector q = JointVector::Zero();
  Tactile tactile{};
};

template <class Frame>
struct Trajectory {
  std::string id;
  std::string source;  // source demo identifier
  double rate_hz = kStreamRateHz;
  std::vector<Frame> frames;
};

using DemoTrajectory = Trajectory<DemoFrame>;
using RobotTrajectory = Trajectory<RobotFrame>;

struct NormalizationStats {
  // channel order: q[0..12], then differential tactile axis-major
  // (x tips 0..4, y tips 0..4, z tips 0..4)
  std::vector<std::string> names;
  std::vector<double> lo;  // x^{0.02}
  std::vector<double> hi;  // x^{0.98}

  std::size_t size() const { return lo.size(); }
};

inline constexpr int kNormChannels = 13 + 15;

template <class Frame>
struct DatasetT {
  std::vector<Trajectory<Frame>> trajectories;
};

using DemoDataset = DatasetT<DemoFrame>;
using RobotDataset = DatasetT<RobotFrame>;

// Percentiles & Eq.-3-style normalization -------------------------------

// Empirical percentile by linear interpolation between order statistics.
inline double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw TooShortError("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * (static_cast<double>(values.size()) - 1.0);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

inline std::vector<std::string> channel_names() {
  std::vector<std::string> names;
  for (int i = 0; i < 13; ++i) names.push_back("q" + std::to_string(i));
  const char* axes = "xyz";
  for (int a = 0; a < 3; ++a)
    for (int f = 0; f < 5; ++f)
      names.push_back(std::string("tac_d") + axes[a] + std::to_string(f));
  return names;
}

inline NormalizationStats fit_normalization(const RobotDataset& ds,
                                            double degenerate_eps = 1e-9) {
  std::vector<std::vector<double>> channels(kNormChannels);
  for (const auto& traj : ds.trajectories) {
    for (const auto& f : traj.frames) {
      for (int i = 0; i < 13; ++i) channels[i].push_back(f.q[i]);
      const TactileDiff d = preprocess_tactile(f.tactile);
      for (int a = 0; a < 3; ++a)
        for (int t = 0; t < 5; ++t) channels[13 + a * 5 + t].push_back(d[a][t]);
    }
  }
  if (channels[0].size() < 50)
    throw TooShortError("normalization needs >= 50 samples per channel");

  NormalizationStats stats;
  stats.names = channel_names();
  for (int c = 0; c < kNormChannels; ++c) {
    const double lo = percentile(channels[c], 0.02);
    const double hi = percentile(channels[c], 0.98);
    if (hi - lo < degenerate_eps)
      throw DegenerateChannelError("degenerate channel " + stats.names[c]);
    stats.lo.push_back(lo);
    stats.hi.push_back(hi);
  }
  return stats;
}

// y = min(max(-1.5, 2 (x - lo) / (hi - lo)), 1.5). The centered variant
// subtracts 1 before clipping, mapping the percentile band to [-1, 1].
inline double normalize_value(double x, double lo, double hi,
                              bool centered = false) {
  double y = 2.0 * (x - lo) / (hi - lo);
  if (centered) y -= 1.0;
  return std::clamp(y, -1.5, 1.5);
}

inline std::vector<double> normalize(const std::vector<double>& xs,
                                     const NormalizationStats& stats,
                                     std::size_t channel,
                                     bool centered = false) {
  if (channel >= stats.size()) throw ShapeError("channel out of range");
  if (stats.hi[channel] - stats.lo[channel] < 1e-12)
    throw DegenerateChannelError("degenerate stats for channel " +
                                 std::to_string(channel));
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = normalize_value(xs[i], stats.lo[channel], stats.hi[channel], centered);
  return out;
}

// Action chunking --------------------------------------------------------

struct ActionChunks {
  int horizon = 16;
  int exec = 4;
  // samples[t] = actions for frames t .. t+horizon-1, padded by repeating
  // the final action
  std::vector<std::vector<JointVector>> samples;
  std::vector<int> schedule;  // deployment chunk start indices
};

inline ActionChunks chunk_actions(const std::vector<JointVector>& actions,
                                  int horizon = 16, int exec = 4) {
  if (actions.empty()) throw EmptyTrajectoryError("no actions to chunk");
  if (horizon < 1 || exec < 1 || exec > horizon)
    throw ConfigError("need 1 <= exec <= horizon");
  ActionChunks out;
  out.horizon = horizon;
  out.exec = exec;
  const int n = static_cast<int>(actions.size());
  out.samples.resize(n);
  for (int t = 0; t < n; ++t) {
    out.samples[t].reserve(horizon);
    for (int h = 0; h < horizon; ++h)
      out.samples[t].push_back(actions[std::min(t + h, n - 1)]);
  }
  for (int start = 0; start < n; start += exec) out.schedule.push_back(start);
  return out;
}

// D^H + retargeted joints -> D^R ----------------------------------------

inline RobotDataset build_robot_dataset(
    const DemoDataset& demos,
    const std::vector<std::vector<JointVector>>& joints) {
  if (demos.trajectories.size() != joints.size())
    throw LengthMismatchError("trajectory count mismatch");
  RobotDataset out;
  for (std::size_t i = 0; i < demos.trajectories.size(); ++i) {
    const auto& dt = demos.trajectories[i];
    if (dt.frames.size() != joints[i].size())
      throw LengthMismatchError("frame/joint count mismatch in trajectory " +
                                dt.id);
    RobotTrajectory rt;
    rt.id = dt.id;
    rt.source = dt.source.empty() ? dt.id : dt.source;
    rt.rate_hz = dt.rate_hz;
    rt.frames.reserve(dt.frames.size());
    for (std::size_t k = 0; k < dt.frames.size(); ++k) {
      RobotFrame f;
      f.timestamp_us = dt.frames[k].timestamp_us;
      f.rgb_ref = dt.frames[k].rgb_ref;  // IR refs consumed upstream
      f.q = joints[i][k];
      f.tactile = dt.frames[k].tactile;  // passed through untouched
      rt.frames.push_back(std::move(f));
    }
    out.trajectories.push_back(std::move(rt));
  }
  return out;
}

// Record files & manifest ------------------------------------------------
// A dataset is a directory: manifest.json + trajectories/<id>.rec.
// .rec = 8-byte magic, then length-prefixed (u32) binary records, one per
// frame, little-endian throughout. Layout documented in
// docs/dataset_format.md.

namespace detail {

inline void put_bytes(std::vector<std::uint8_t>& out, const void* p,
                      std::size_t n) {
  const auto* b = static_cast<const std::uint8_t*>(p);
  out.insert(out.end(), b, b + n);
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}
inline void put_u64v(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}
inline void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  put_u64v(out, u);
}
inline void put_str(std::vector<std::uint8_t>& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  put_bytes(out, s.data(), s.size());
}

struct Reader {
  const std::uint8_t* p;
  const std::uint8_t* end;
  void need(std::size_t n) const {
    if (static_cast<std::size_t>(end - p) < n)
      throw ConfigError("truncated record");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    p += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    p += 8;
    return v;
  }
  double f64() {
    const std::uint64_t u = u64();
    double v;
    std::memcpy(&v, &u, 8);
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(p), n);
    p += n;
    return s;
  }
};

inline void put_tactile(std::vector<std::uint8_t>& out, const Tactile& g) {
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 2; ++m)
      for (int f = 0; f < 5; ++f) put_f64(out, g[a][m][f]);
}

inline Tactile get_tactile(Reader& r) {
  Tactile g{};
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 2; ++m)
      for (int f = 0; f < 5; ++f) g[a][m][f] = r.f64();
  return g;
}

inline std::vector<std::uint8_t> encode_record(const DemoFrame& f) {
  std::vector<std::uint8_t> r;
  put_u64v(r, f.timestamp_us);
  put_str(r, f.rgb_ref);
  put_str(r, f.ir_left_ref);
  put_str(r, f.ir_right_ref);
  put_tactile(r, f.tactile);
  return r;
}

inline std::vector<std::uint8_t> encode_record(const RobotFrame& f) {
  std::vector<std::uint8_t> r;
  put_u64v(r, f.timestamp_us);
  put_str(r, f.rgb_ref);
  for (int i = 0; i < 13; ++i) put_f64(r, f.q[i]);
  put_tactile(r, f.tactile);
  return r;
}

inline void decode_record(Reader& r, DemoFrame& f) {
  f.timestamp_us = r.u64();
  f.rgb_ref = r.str();
  f.ir_left_ref = r.str();
  f.ir_right_ref = r.str();
  f.tactile = get_tactile(r);
}

inline void decode_record(Reader& r, RobotFrame& f) {
  f.timestamp_us = r.u64();
  f.rgb_ref = r.str();
  for (int i = 0; i < 13; ++i) f.q[i] = r.f64();
  f.tactile = get_tactile(r);
}

template <class Frame>
const char* rec_magic();
template <>
inline const char* rec_magic<DemoFrame>() { return "OSMODSH1"; }
template <>
inline const char* rec_magic<RobotFrame>() { return "OSMODSR1"; }

}  // namespace detail

template <class Frame>
std::vector<std::uint8_t> encode_trajectory(const Trajectory<Frame>& traj) {
  std::vector<std::uint8_t> out;
  detail::put_bytes(out, detail::rec_magic<Frame>(), 8);
  for (const auto& f : traj.frames) {
    const auto rec = detail::encode_record(f);
    detail::put_u32(out, static_cast<std::uint32_t>(rec.size()));
    detail::put_bytes(out, rec.data(), rec.size());
  }
  return out;
}

template <class Frame>
Trajectory<Frame> decode_trajectory(std::span<const std::uint8_t> bytes) {
  Trajectory<Frame> traj;
  if (bytes.size() < 8 ||
      std::memcmp(bytes.data(), detail::rec_magic<Frame>(), 8) != 0)
    throw ConfigError("bad trajectory record magic");
  detail::Reader r{bytes.data() + 8, bytes.data() + bytes.size()};
  std::uint64_t prev_ts = 0;
  while (r.p < r.end) {
    const std::uint32_t len = r.u32();
    r.need(len);
    detail::Reader rec{r.p, r.p + len};
    Frame f;
    detail::decode_record(rec, f);
    if (!traj.frames.empty() && f.timestamp_us <= prev_ts)
      throw ConfigError("timestamps not strictly increasing");
    prev_ts = f.timestamp_us;
    traj.frames.push_back(std::move(f));
    r.p += len;
  }
  return traj;
}

template <class Frame>
void write_dataset(const std::string& root, const DatasetT<Frame>& ds,
                   const NormalizationStats* stats = nullptr) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(root) / "trajectories");
  nlohmann::json manifest;
  manifest["format"] = detail::rec_magic<Frame>();
  manifest["trajectory_count"] = ds.trajectories.size();
  manifest["trajectories"] = nlohmann::json::array();
  for (const auto& traj : ds.trajectories) {
    const auto bytes = encode_trajectory(traj);
    const std::string file = "trajectories/" + traj.id + ".rec";
    std::ofstream out(fs::path(root) / file, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + file);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    manifest["trajectories"].push_back(
        {{"id", traj.id},
         {"source", traj.source},
         {"rate_hz", traj.rate_hz},
         {"file", file},
         {"frames", traj.frames.size()},
         {"checksum", hex64(fnv1a64(bytes.data(), bytes.size()))}});
  }
  if (stats) {
    nlohmann::json jn = nlohmann::json::array();
    for (std::size_t c = 0; c < stats->size(); ++c)
      jn.push_back({{"name", stats->names[c]},
                    {"p02", stats->lo[c]},
                    {"p98", stats->hi[c]}});
    manifest["normalization"] = jn;
  }
  std::ofstream mf(fs::path(root) / "manifest.json");
  mf << manifest.dump(2) << "\n";
}

template <class Frame>
DatasetT<Frame> read_dataset(const std::string& root,
                             NormalizationStats* stats = nullptr) {
  namespace fs = std::filesystem;
  std::ifstream mf(fs::path(root) / "manifest.json");
  if (!mf) throw ConfigError("cannot open manifest in " + root);
  nlohmann::json manifest;
  try {
    mf >> manifest;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("manifest parse error: ") + e.what());
  }
  if (manifest.at("format").get<std::string>() != detail::rec_magic<Frame>())
    throw ConfigError("dataset format mismatch");
  DatasetT<Frame> ds;
  for (const auto& jt : manifest.at("trajectories")) {
    const std::string file = jt.at("file").get<std::string>();
    std::ifstream in(fs::path(root) / file, std::ios::binary);
    if (!in) throw ConfigError("missing trajectory file " + file);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (hex64(fnv1a64(bytes.data(), bytes.size())) !=
        jt.at("checksum").get<std::string>())
      throw ConfigError("checksum mismatch for " + file);
    auto traj = decode_trajectory<Frame>(bytes);
    traj.id = jt.at("id").get<std::string>();
    traj.source = jt.value("source", traj.id);
    traj.rate_hz = jt.value("rate_hz", kStreamRateHz);
    if (traj.frames.size() != jt.at("frames").get<std::size_t>())
      throw ConfigError("frame count mismatch for " + file);
    ds.trajectories.push_back(std::move(traj));
  }
  if (manifest.at("trajectory_count").get<std::size_t>() !=
      ds.trajectories.size())
    throw ConfigError("manifest trajectory count mismatch");
  if (stats && manifest.contains("normalization")) {
    stats->names.clear();
    stats->lo.clear();
    stats->hi.clear();
    for (const auto& jc : manifest.at("normalization")) {
      stats->names.push_back(jc.at("name").get<std::string>());
      stats->lo.push_back(jc.at("p02").get<double>());
      stats->hi.push_back(jc.at("p98").get<double>());
    }
  }
  return ds;
}

// Flat CSV of (q, differential tactile) for external consumers.
inline void export_csv(const std::string& path, const RobotDataset& ds) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write csv: " + path);
  out << "trajectory,frame,timestamp_us";
  for (const auto& n : channel_names()) out << "," << n;
  out << "\n";
  out.precision(12);
  for (const auto& traj : ds.trajectories) {
    for (std::size_t k = 0; k < traj.frames.size(); ++k) {
      const auto& f = traj.frames[k];
      out << traj.id << "," << k << "," << f.timestamp_us;
      for (int i = 0; i < 13; ++i) out << "," << f.q[i];
      const TactileDiff d = preprocess_tactile(f.tactile);
      for (int a = 0; a < 3; ++a)
        for (int t = 0; t < 5; ++t) out << "," << d[a][t];
      out << "\n";
    }
  }
}

}  // namespace osmo::dataset
