#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <span>
#include <vector>

#include "osmo/core.hpp"
#include "osmo/sensor_sim.hpp"

namespace osmo::wire {

using sim::GloveFrame;

// Packet layout (little-endian, fixed length):
//   offset 0   sync      2 bytes  0xA5 0x5A
//   offset 2   version   u8
//   offset 3   seq       u16
//   offset 5   timestamp u64 (microseconds)
//   offset 13  payload   12 taxels x (2 mags x 3 axes i32 @ 0.01 uT,
//                                     6 IMU channels i16 @ 0.001 SI)
//   offset 445 crc       u16, CRC-16/CCITT-FALSE over bytes [2, 445)
inline constexpr std::uint8_t kSync0 = 0xA5;
inline constexpr std::uint8_t kSync1 = 0x5A;
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kTaxelBytes = 2 * 3 * 4 + 6 * 2;  // 36
inline constexpr std::size_t kPayloadBytes = kNumTaxels * kTaxelBytes;  // 432
inline constexpr std::size_t kPacketBytes = 2 + 1 + 2 + 8 + kPayloadBytes + 2;
inline constexpr double kMagScale = 0.01;   // uT per LSB
inline constexpr double kImuScale = 0.001;  // SI per LSB

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
// check("123456789") == 0x29B1.
inline std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data) {
  static const auto table = [] {
    std::array<std::uint16_t, 256> t{};
    for (int i = 0; i < 256; ++i) {
      std::uint16_t c = static_cast<std::uint16_t>(i << 8);
      for (int b = 0; b < 8; ++b)
        c = (c & 0x8000) ? static_cast<std::uint16_t>((c << 1) ^ 0x1021)
                         : static_cast<std::uint16_t>(c << 1);
      t[i] = c;
    }
    return t;
  }();
  std::uint16_t crc = 0xFFFF;
  for (std::uint8_t b : data)
    crc = static_cast<std::uint16_t>((crc << 8) ^ table[(crc >> 8) ^ b]);
  return crc;
}

namespace detail {

inline void put_u16(std::uint8_t* p, std::uint16_t v) {
  p[0] = v & 0xFF;
  p[1] = (v >> 8) & 0xFF;
}
inline void put_u64(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = (v >> (8 * i)) & 0xFF;
}
inline void put_i32(std::uint8_t* p, std::int32_t v) {
  std::uint32_t u = static_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) p[i] = (u >> (8 * i)) & 0xFF;
}
inline void put_i16(std::uint8_t* p, std::int16_t v) {
  put_u16(p, static_cast<std::uint16_t>(v));
}
inline std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}
inline std::int32_t get_i32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return static_cast<std::int32_t>(v);
}
inline std::int16_t get_i16(const std::uint8_t* p) {
  return static_cast<std::int16_t>(get_u16(p));
}

inline std::int32_t quant32(double v, double scale) {
  return static_cast<std::int32_t>(std::llround(v / scale));
}
inline std::int16_t quant16(double v, double scale) {
  long long q = std::llround(v / scale);
  if (q > 32767) q = 32767;
  if (q < -32768) q = -32768;
  return static_cast<std::int16_t>(q);
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_packet(const GloveFrame& frame,
                                               std::uint16_t seq) {
  std::vector<std::uint8_t> pkt(kPacketBytes);
  pkt[0] = kSync0;
  pkt[1] = kSync1;
  pkt[2] = kVersion;
  detail::put_u16(&pkt[3], seq);
  detail::put_u64(&pkt[5], frame.timestamp_us);
  std::size_t o = 13;
  for (int t = 0; t < kNumTaxels; ++t) {
    for (int m = 0; m < kMagsPerTaxel; ++m)
      for (int a = 0; a < 3; ++a, o += 4)
        detail::put_i32(&pkt[o],
                        detail::quant32(frame.readings[t][m][a], kMagScale));
    for (int c = 0; c < 6; ++c, o += 2)
      detail::put_i16(&pkt[o], detail::quant16(frame.imu[t][c], kImuScale));
  }
  const std::uint16_t crc =
      crc16_ccitt_false({pkt.data() + 2, kPacketBytes - 4});
  detail::put_u16(&pkt[kPacketBytes - 2], crc);
  return pkt;
}

struct DecodedPacket {
  GloveFrame frame;
  std::uint16_t seq = 0;
};

// Parses one packet starting at p (length >= kPacketBytes assumed checked).
// Returns nullopt on bad sync, version, or CRC.
inline std::optional<DecodedPacket> decode_packet(
    std::span<const std::uint8_t> p) {
  if (p.size() < kPacketBytes) return std::nullopt;
  if (p[0] != kSync0 || p[1] != kSync1) return std::nullopt;
  if (crc16_ccitt_false(p.subspan(2, kPacketBytes - 4)) !=
      detail::get_u16(&p[kPacketBytes - 2]))
    return std::nullopt;
  if (p[2] != kVersion) return std::nullopt;
  DecodedPacket d;
  d.seq = detail::get_u16(&p[3]);
  d.frame.timestamp_us = detail::get_u64(&p[5]);
  std::size_t o = 13;
  for (int t = 0; t < kNumTaxels; ++t) {
    for (int m = 0; m < kMagsPerTaxel; ++m)
      for (int a = 0; a < 3; ++a, o += 4)
        d.frame.readings[t][m][a] = detail::get_i32(&p[o]) * kMagScale;
    for (int c = 0; c < 6; ++c, o += 2)
      d.frame.imu[t][c] = detail::get_i16(&p[o]) * kImuScale;
  }
  return d;
}

struct StreamStats {
  std::uint64_t packets_ok = 0;
  std::uint64_t packets_dropped = 0;  // inferred from seq gaps
  std::uint64_t resyncs = 0;
  std::uint64_t crc_failures = 0;
};

// Robust stream scan: locks onto the sync pattern, validates CRC, skips
// corruption byte-by-byte until the next valid packet. Never throws on
// malformed input; corruption shows up in the stats only.
inline std::vector<GloveFrame> decode_stream(std::span<const std::uint8_t> bytes,
                                             StreamStats& stats) {
  std::vector<GloveFrame> frames;
  enum class State { Init, Synced, Lost };
  State state = State::Init;
  std::size_t pos = 0;
  bool have_seq = false;
  std::uint16_t prev_seq = 0;
  while (pos + kPacketBytes <= bytes.size()) {
    if (bytes[pos] != kSync0 || bytes[pos + 1] != kSync1) {
      if (state == State::Synced) state = State::Lost;
      ++pos;
      continue;
    }
    auto d = decode_packet(bytes.subspan(pos, kPacketBytes));
    if (!d) {
      if (state == State::Synced) {
        // aligned packet failed its CRC
        ++stats.crc_failures;
        state = State::Lost;
      }
      ++pos;
      continue;
    }
    if (state == State::Lost) ++stats.resyncs;
    state = State::Synced;
    if (have_seq) {
      const std::uint16_t gap =
          static_cast<std::uint16_t>(d->seq - prev_seq - 1);
      stats.packets_dropped += gap;
    }
    prev_seq = d->seq;
    have_seq = true;
    ++stats.packets_ok;
    frames.push_back(std::move(d->frame));
    pos += kPacketBytes;
  }
  return frames;
}

// .osmo stream files: raw concatenated packets.
inline void write_stream(const std::string& path,
                         std::span<const GloveFrame> frames,
                         std::uint16_t first_seq = 0) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write stream file: " + path);
  std::uint16_t seq = first_seq;
  for (const auto& f : frames) {
    const auto pkt = encode_packet(f, seq++);
    out.write(reinterpret_cast<const char*>(pkt.data()),
              static_cast<std::streamsize>(pkt.size()));
  }
}

inline std::vector<GloveFrame> read_stream(const std::string& path,
                                           StreamStats& stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open stream file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_stream(bytes, stats);
}

// Timestamp alignment ---------------------------------------------------

struct AlignedTable {
  std::vector<std::uint64_t> grid_us;  // common clock ticks
  // index into each source stream per tick, or -1 when no sample lies
  // within half a period of the tick
  std::vector<std::vector<std::int64_t>> matches;  // [stream][tick]
  std::size_t missing = 0;
};

inline AlignedTable timestamp_align(
    const std::vector<std::vector<std::uint64_t>>& stream_timestamps,
    double rate_hz) {
  if (rate_hz <= 0.0) throw ConfigError("rate must be positive");
  for (const auto& s : stream_timestamps)
    if (s.empty()) throw EmptyStreamError("stream with no samples");

  const auto period =
      static_cast<std::uint64_t>(std::llround(1e6 / rate_hz));
  const std::uint64_t half = period / 2;
  std::uint64_t t0 = 0, t1 = UINT64_MAX;
  for (const auto& s : stream_timestamps) {
    t0 = std::max(t0, s.front());
    t1 = std::min(t1, s.back());
  }
  AlignedTable table;
  table.matches.resize(stream_timestamps.size());
  if (t1 < t0) return table;

  for (std::uint64_t t = t0; t <= t1; t += period) table.grid_us.push_back(t);
  for (std::size_t s = 0; s < stream_timestamps.size(); ++s) {
    const auto& ts = stream_timestamps[s];
    std::size_t j = 0;
    auto dist_to = [&](std::size_t k, std::uint64_t t) {
      return std::llabs(static_cast<long long>(ts[k]) -
                        static_cast<long long>(t));
    };
    for (std::uint64_t t : table.grid_us) {
      while (j + 1 < ts.size() && dist_to(j + 1, t) <= dist_to(j, t)) ++j;
      const std::uint64_t dist =
          static_cast<std::uint64_t>(dist_to(j, t));
      if (dist <= half) {
        table.matches[s].push_back(static_cast<std::int64_t>(j));
      } else {
        table.matches[s].push_back(-1);
        ++table.missing;
      }
    }
  }
  return table;
}

}  // namespace osmo::wire
