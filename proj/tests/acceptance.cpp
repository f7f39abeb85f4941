// Acceptance suite: one pass/fail line per pinned criterion. argv[1] is
// the path to the command-line binary (used by the end-to-end criterion).
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "osmo/analysis.hpp"
#include "osmo/dataset.hpp"
#include "osmo/geometry.hpp"
#include "osmo/handpose.hpp"
#include "osmo/retarget.hpp"
#include "osmo/scenarios.hpp"
#include "osmo/wire.hpp"

using namespace osmo;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int n, const std::string& what, bool ok) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what
            << "\n";
  std::cout.flush();
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cmd(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Criteria 1, 2 and the criterion-9 trend share one 100-seed sweep.
struct SweepResult {
  int ordering_ok = 0;        // shielded+2 < unshielded+2 < unshielded+1
  int z_concentration_ok = 0; // shielded z > unshielded z, both taxels
  int middle_x_trend_ok = 0;  // dual-mag x RMS < single-mag x RMS
  double reduction_sum = 0.0; // shielded+2 vs unshielded+1, averaged
  double elapsed_s = 0.0;
};

SweepResult run_sweep(int seeds) {
  const auto geo = sim::default_geometry();
  const auto configs = analysis::table_configs();
  const int middle = geo.index_of("middle_distal");
  SweepResult out;
  const auto t0 = Clock::now();
  for (int s = 0; s < seeds; ++s) {
    analysis::CrosstalkScenarioSpec spec;
    spec.trials = 5;
    spec.wave.duration_s = 60.0;
    spec.seed = 1000 + s;
    const auto reports = analysis::compare_configurations(geo, spec, configs);
    // layout: config-major over the two monitored taxels
    const int k = 2;
    bool ordering = true, zconc = true;
    double reduction = 0.0;
    for (int t = 0; t < k; ++t) {
      const auto& single = reports[0 * k + t];
      const auto& dual = reports[1 * k + t];
      const auto& shielded = reports[2 * k + t];
      ordering = ordering && shielded.average < dual.average &&
                 dual.average < single.average;
      zconc = zconc && shielded.per_axis.z() > dual.per_axis.z();
      reduction += 0.5 * (1.0 - shielded.average / single.average);
      if (reports[t].taxel_id == middle &&
          dual.per_axis.x() < single.per_axis.x())
        ++out.middle_x_trend_ok;
    }
    out.ordering_ok += ordering ? 1 : 0;
    out.z_concentration_ok += zconc ? 1 : 0;
    out.reduction_sum += reduction;
  }
  out.elapsed_s = seconds_since(t0);
  return out;
}

sim::GloveFrame random_frame(std::mt19937_64& rng, std::uint64_t ts) {
  std::uniform_real_distribution<double> f(-2000.0, 2000.0);
  std::uniform_real_distribution<double> a(-20.0, 20.0);
  sim::GloveFrame fr;
  fr.timestamp_us = ts;
  for (int t = 0; t < kNumTaxels; ++t) {
    for (int m = 0; m < kMagsPerTaxel; ++m)
      fr.readings[t][m] = Vec3(f(rng), f(rng), f(rng));
    for (int i = 0; i < 6; ++i) fr.imu[t][i] = a(rng);
  }
  return fr;
}

retarget::JointVector demo_pose(const retarget::KinematicChain& chain,
                                double t, int demo) {
  retarget::JointVector q;
  for (int j = 0; j < retarget::kNumJoints; ++j)
    q[j] = 0.1 * std::sin(2.0 * M_PI * (0.15 + 0.01 * j) * t +
                          0.37 * j + 0.9 * demo);
  return chain.clamp(q);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string bin = argc > 1 ? argv[1] : "";

  // ---- criterion 1: crosstalk ordering ---------------------------------
  const SweepResult sweep = run_sweep(100);
  {
    const double mean_reduction = sweep.reduction_sum / 100.0;
    std::ostringstream what;
    what << "crosstalk ordering shielded+2 < unshielded+2 < unshielded+1 in "
         << sweep.ordering_ok << "/100 seeds (need >= 95), mean reduction "
         << static_cast<int>(100 * mean_reduction) << "% (need >= 40%), "
         << static_cast<int>(sweep.elapsed_s) << " s (need < 60)";
    report(1, what.str(),
           sweep.ordering_ok >= 95 && mean_reduction >= 0.40 &&
               sweep.elapsed_s < 60.0);
  }

  // ---- criterion 2: z-axis concentration under the shield --------------
  report(2,
         "shielded z-axis RMS exceeds unshielded in " +
             std::to_string(sweep.z_concentration_ok) +
             "/100 seeds (need >= 95)",
         sweep.z_concentration_ok >= 95);

  // ---- criterion 3: RMS metric -----------------------------------------
  {
    bool ok = true;
    const double amp = 3.7;
    const int n = 10000;  // 100 full periods
    std::vector<Vec3> sine(n), shifted(n);
    for (int i = 0; i < n; ++i) {
      const double v = amp * std::sin(2.0 * M_PI * 100.0 * i / n);
      sine[i] = Vec3(v, 0.5 * v, -v);
      shifted[i] = sine[i] + Vec3(11.0, -7.0, 3.0);
    }
    const auto r = analysis::rms_noise(sine);
    ok = ok && std::abs(r.per_axis.x() - amp / std::sqrt(2.0)) <
                   1e-3 * amp / std::sqrt(2.0);
    const auto rs = analysis::rms_noise(shifted);
    ok = ok && (r.per_axis - rs.per_axis).cwiseAbs().maxCoeff() < 1e-9;
    std::vector<Vec3> constant(64, Vec3(1.0, -2.0, 3.0));
    ok = ok && analysis::rms_noise(constant).per_axis.norm() == 0.0;
    report(3, "RMS: sinusoid A/sqrt(2) within 0.1%, constant exactly 0, "
              "translation invariant to 1e-9", ok);
  }

  // ---- criterion 4: wire protocol --------------------------------------
  {
    bool ok = true;
    std::mt19937_64 rng(404);
    const auto t0 = Clock::now();
    for (int i = 0; i < 100000; ++i) {
      const auto frame = random_frame(rng, 40000ull * i);
      const auto pkt = wire::encode_packet(frame, static_cast<std::uint16_t>(i));
      const auto dec = wire::decode_packet(pkt);
      if (!dec) { ok = false; break; }
      for (int t = 0; t < kNumTaxels && ok; ++t) {
        for (int m = 0; m < kMagsPerTaxel; ++m)
          if ((dec->frame.readings[t][m] - frame.readings[t][m])
                  .cwiseAbs()
                  .maxCoeff() > 0.005)
            ok = false;
        for (int c = 0; c < 6; ++c)
          if (std::abs(dec->frame.imu[t][c] - frame.imu[t][c]) > 0.0005)
            ok = false;
      }
      if (!ok) break;
    }
    const bool quant_ok = ok;

    // 10^6-byte fuzz decode must terminate cleanly
    std::vector<std::uint8_t> fuzz(1000000);
    for (auto& b : fuzz) b = static_cast<std::uint8_t>(rng());
    bool fuzz_ok = true;
    try {
      wire::StreamStats stats;
      (void)wire::decode_stream(fuzz, stats);
    } catch (const std::exception&) {
      fuzz_ok = false;
    }

    // single corruption region loses at most overlapped packets + 1
    bool resync_ok = true;
    for (int trial = 0; trial < 50 && resync_ok; ++trial) {
      std::vector<std::uint8_t> stream;
      const int npkt = 120;
      for (int i = 0; i < npkt; ++i) {
        const auto pkt = wire::encode_packet(random_frame(rng, 40000ull * i),
                                             static_cast<std::uint16_t>(i));
        stream.insert(stream.end(), pkt.begin(), pkt.end());
      }
      std::uniform_int_distribution<std::size_t> off(
          0, stream.size() - 4000);
      std::uniform_int_distribution<std::size_t> len(1, 3000);
      const std::size_t o = off(rng), l = len(rng);
      for (std::size_t i = 0; i < l; ++i) stream[o + i] ^= 0xA7;
      const std::size_t first = o / wire::kPacketBytes;
      const std::size_t last = (o + l - 1) / wire::kPacketBytes;
      const std::size_t overlapped = last - first + 1;
      wire::StreamStats stats;
      const auto frames = wire::decode_stream(stream, stats);
      if (npkt - frames.size() > overlapped + 1) resync_ok = false;
    }

    std::ostringstream what;
    what << "wire: 1e5 frames round-trip in quantization ("
         << (quant_ok ? "ok" : "FAIL") << "), 1e6-byte fuzz terminates ("
         << (fuzz_ok ? "ok" : "FAIL") << "), corruption loss bounded ("
         << (resync_ok ? "ok" : "FAIL") << "), "
         << static_cast<int>(seconds_since(t0)) << " s";
    report(4, what.str(), quant_ok && fuzz_ok && resync_ok);
  }

  // ---- criterion 5: Savitzky-Golay -------------------------------------
  {
    bool poly_ok = true;
    for (int window : {5, 7, 9}) {
      for (int order = 1; order < window && order <= 4; ++order) {
        handpose::SavitzkyGolay sg(window, order);
        for (int deg = 0; deg <= order; ++deg) {
          std::vector<double> series;
          for (int i = 0; i < 40; ++i)
            series.push_back(std::pow(0.2 * i - 3.0, deg));
          const auto sm = sg.apply(series);
          for (std::size_t i = 0; i < series.size(); ++i)
            if (std::abs(sm[i] - series[i]) > 1e-9) poly_ok = false;
        }
      }
    }
    handpose::SavitzkyGolay sg52(5, 2);
    const Eigen::VectorXd w = sg52.weights(2);
    const double ref[5] = {-3.0 / 35, 12.0 / 35, 17.0 / 35, 12.0 / 35,
                           -3.0 / 35};
    bool w_ok = true;
    for (int i = 0; i < 5; ++i)
      if (std::abs(w[i] - ref[i]) > 1e-9) w_ok = false;
    report(5, "SG reproduces polynomials (windows 5/7/9) and the "
              "(-3,12,17,12,-3)/35 interior weights", poly_ok && w_ok);
  }

  // ---- criterion 6: IK on FK-generated targets -------------------------
  {
    const auto chain = retarget::default_chain();
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> frac(-0.4, 0.4);
    std::uniform_real_distribution<double> pert(-0.1, 0.1);
    int solved = 0;
    const auto t0 = Clock::now();
    for (int trial = 0; trial < 100; ++trial) {
      retarget::JointVector q_true;
      for (int j = 0; j < retarget::kNumJoints; ++j) {
        const double mid = 0.5 * (chain.joints[j].lo + chain.joints[j].hi);
        const double half = 0.5 * (chain.joints[j].hi - chain.joints[j].lo);
        q_true[j] = mid + frac(rng) * half;
      }
      const auto poses = chain.forward_kinematics(q_true);
      retarget::IkTargets targets;
      targets.wrist = poses[0];
      for (int f = 0; f < 5; ++f)
        targets.fingertips[f] = poses[f + 1].translation();
      retarget::JointVector q_init = q_true;
      for (int j = 0; j < retarget::kNumJoints; ++j) q_init[j] += pert(rng);
      const auto r = retarget::solve_ik(chain, targets, chain.clamp(q_init));
      if (r.residual < 1e-3) ++solved;
    }
    const double el = seconds_since(t0);
    std::ostringstream what;
    what << "IK residual < 1e-3 on " << solved
         << "/100 reachable target sets (need >= 99), " << el
         << " s (need < 30)";
    report(6, what.str(), solved >= 99 && el < 30.0);
  }

  // ---- criterion 7: safety filter speed spike --------------------------
  {
    const auto chain = retarget::default_chain();
    const auto env = retarget::default_environment();
    const auto cfg = retarget::default_safety_config();  // 1.0 m/s limit
    const double dt = 1.0 / kStreamRateHz;               // 25 Hz

    // candidate joint path: slow drift with a single 2.5 m/s wrist spike
    std::vector<retarget::JointVector> cand;
    retarget::JointVector q = retarget::JointVector::Zero();
    for (int i = 0; i < 20; ++i) {
      q[0] = 0.002 * i;
      cand.push_back(q);
    }
    retarget::JointVector spike = cand[10];
    // find a joint step giving ~0.1 m wrist motion in one 40 ms tick
    const Vec3 w0 = retarget::wrist_position(chain, cand[10]);
    double delta = 0.05;
    while ((retarget::wrist_position(
                chain, [&] { auto s = spike; s[1] += delta; return s; }()) - w0)
                   .norm() < 2.5 * dt)
      delta += 0.01;
    spike[1] += delta;
    cand[10] = spike;

    std::vector<retarget::JointVector> out;
    out.push_back(cand[0]);
    for (std::size_t i = 1; i < cand.size(); ++i)
      out.push_back(
          retarget::safety_filter(out.back(), cand[i], chain, env, cfg, dt));

    bool ok = out.size() == cand.size();
    ok = ok && (out[10] - out[9]).norm() == 0.0;  // spike replaced
    for (std::size_t i = 1; i < out.size(); ++i) {
      const double speed = (retarget::wrist_position(chain, out[i]) -
                            retarget::wrist_position(chain, out[i - 1]))
                               .norm() / dt;
      if (speed > cfg.max_wrist_speed + 1e-12) ok = false;
    }
    report(7, "2.5 m/s wrist spike at 25 Hz is replaced by the previous "
              "pose; length and speed bound hold", ok);
  }

  // ---- criterion 8: normalization --------------------------------------
  {
    bool ok = true;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
      double lo = u(rng), hi = u(rng);
      if (lo > hi) std::swap(lo, hi);
      if (hi - lo < 1e-6) hi = lo + 1e-6;
      if (std::abs(dataset::normalize_value(lo, lo, hi)) > 1e-12) ok = false;
      if (std::abs(dataset::normalize_value(0.5 * (lo + hi), lo, hi) - 1.0) >
          1e-12)
        ok = false;
      if (dataset::normalize_value(hi + 100.0 * (hi - lo), lo, hi) != 1.5)
        ok = false;
      if (dataset::normalize_value(lo - 100.0 * (hi - lo), lo, hi) != -1.5)
        ok = false;
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      if (dataset::normalize_value(a, lo, hi) >
          dataset::normalize_value(b, lo, hi) + 1e-12)
        ok = false;
    }
    // clipping on fitted data stays at the percentile tails
    std::mt19937_64 drng(809);
    std::normal_distribution<double> g(0.0, 1.0);
    dataset::RobotDataset ds;
    dataset::RobotTrajectory traj;
    traj.id = "fit";
    for (int k = 0; k < 500; ++k) {
      dataset::RobotFrame f;
      f.timestamp_us = 40000ull * (k + 1);
      for (int i = 0; i < 13; ++i) f.q[i] = g(drng);
      for (int a2 = 0; a2 < 3; ++a2)
        for (int m = 0; m < 2; ++m)
          for (int fi = 0; fi < 5; ++fi) f.tactile[a2][m][fi] = g(drng);
      traj.frames.push_back(f);
    }
    ds.trajectories.push_back(traj);
    const auto stats = dataset::fit_normalization(ds);
    for (int c = 0; c < dataset::kNormChannels && ok; ++c) {
      int outside = 0;
      for (const auto& f : traj.frames) {
        const auto d = dataset::preprocess_tactile(f.tactile);
        const double x = c < 13 ? f.q[c] : d[(c - 13) / 5][(c - 13) % 5];
        if (x < stats.lo[c] || x > stats.hi[c]) ++outside;
      }
      if (outside > 20) ok = false;  // 4% of 500
    }
    report(8, "normalization maps band edges as specified, clips at +/-1.5, "
              "is monotone; percentile band excludes <= 4% of fit samples",
           ok);
  }

  // ---- criterion 9: differential sensing -------------------------------
  {
    bool invariance = true;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(-500.0, 500.0);
    for (int trial = 0; trial < 200 && invariance; ++trial) {
      auto f = random_frame(rng, 0);
      auto g = f;
      const Vec3 offset(u(rng), u(rng), u(rng));
      for (int t = 0; t < kNumTaxels; ++t)
        for (int m = 0; m < kMagsPerTaxel; ++m) g.readings[t][m] += offset;
      const auto da = analysis::differential(f);
      const auto db = analysis::differential(g);
      for (int t = 0; t < kNumTaxels; ++t)
        if ((da.diff[t] - db.diff[t]).cwiseAbs().maxCoeff() > 1e-9)
          invariance = false;
    }
    std::ostringstream what;
    what << "differential: common-mode invariance to 1e-9 ("
         << (invariance ? "ok" : "FAIL")
         << "); dual-mag lowers middle-distal x-axis RMS in "
         << sweep.middle_x_trend_ok << "/100 seeds (need >= 95)";
    report(9, what.str(), invariance && sweep.middle_x_trend_ok >= 95);
  }

  // ---- criterion 10: action chunking -----------------------------------
  {
    bool ok = true;
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<int> len(1, 500);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const int n = len(rng);
      std::vector<retarget::JointVector> actions;
      for (int i = 0; i < n; ++i)
        actions.push_back(retarget::JointVector::Constant(i));
      const auto ch = dataset::chunk_actions(actions, 16, 4);
      if (static_cast<int>(ch.samples.size()) != n) ok = false;
      for (int t = 0; t < n && ok; ++t) {
        if (static_cast<int>(ch.samples[t].size()) != 16) ok = false;
        for (int h = 0; h < 16; ++h)
          if (ch.samples[t][h][0] != std::min(t + h, n - 1)) ok = false;
      }
      // 4-execute schedule covers 0..n-1 exactly once
      std::vector<int> covered(n, 0);
      for (int start : ch.schedule)
        for (int i = start; i < std::min(start + 4, n); ++i) ++covered[i];
      for (int i = 0; i < n; ++i)
        if (covered[i] != 1) ok = false;
    }
    report(10, "chunking: sample count = length, terminal padding by "
               "repetition, 16/4 schedule covers each frame once", ok);
  }

  // ---- criterion 11: end-to-end bundle ---------------------------------
  {
    const auto t0 = Clock::now();
    bool ok = !bin.empty();
    std::string detail = bin.empty() ? "no binary path given" : "";
    const fs::path root = fs::temp_directory_path() / "osmo_accept_e2e";
    fs::remove_all(root);
    const fs::path demos = root / "demos";
    const fs::path ds_out = root / "dataset";
    const auto chain = retarget::default_chain();
    const auto geo = sim::default_geometry();

    handpose::Extrinsics ext;
    ext.camera_to_robot.linear() =
        Eigen::AngleAxisd(0.35, Vec3::UnitZ()).toRotationMatrix();
    ext.camera_to_robot.translation() = Vec3(0.10, -0.20, 0.05);
    const Iso3 robot_to_camera = ext.camera_to_robot.inverse();

    if (ok) {
      fs::create_directories(demos);
      const Mat3 r = ext.camera_to_robot.rotation();
      nlohmann::json je;
      je["rotation"] = {{r(0, 0), r(0, 1), r(0, 2)},
                        {r(1, 0), r(1, 1), r(1, 2)},
                        {r(2, 0), r(2, 1), r(2, 2)}};
      const Vec3 t = ext.camera_to_robot.translation();
      je["translation"] = {t.x(), t.y(), t.z()};
      std::ofstream(root / "extrinsics.json") << je.dump(2);

      const int n = 45;  // 1.8 s per demo at 25 Hz
      for (int d = 0; d < 10; ++d) {
        char name[32];
        std::snprintf(name, sizeof(name), "demo_%02d", d);
        const fs::path dir = demos / name;
        fs::create_directories(dir);

        std::vector<handpose::HandPoseFrame> frames;
        std::vector<handpose::PointCloud> clouds;
        for (int i = 0; i < n; ++i) {
          const double time = i / kStreamRateHz;
          const auto q = demo_pose(chain, time, d);
          const auto poses = chain.forward_kinematics(q);
          handpose::HandPoseFrame f;
          f.timestamp_us = static_cast<std::uint64_t>(i) * kFramePeriodUs;
          f.wrist_pose = robot_to_camera * poses[0];
          for (int kp = 0; kp < handpose::kNumKeypoints; ++kp)
            f.keypoints[kp] =
                f.wrist_pose.translation() + Vec3(0.001 * kp, 0, 0);
          f.keypoints[handpose::kWristKeypoint] = f.wrist_pose.translation();
          for (int fi = 0; fi < 5; ++fi)
            f.keypoints[handpose::kFingertipKeypoints[fi]] =
                robot_to_camera * poses[fi + 1].translation();
          frames.push_back(f);

          handpose::PointCloud c;
          if (i % 3 == 0) {
            // stereo cloud at the wrist's own depth: refinement is a no-op
            const Vec3 w = f.keypoints[handpose::kWristKeypoint];
            for (int p = 0; p < 60; ++p)
              c.points.emplace_back(w.x() + 0.0003 * p, w.y() - 0.0002 * p,
                                    w.z());
          }
          clouds.push_back(c);
        }
        handpose::write_keypoints((dir / "keypoints.txt").string(), frames,
                                  &clouds);

        sim::FingerWaveParams wp;
        wp.duration_s = n / kStreamRateHz;
        const auto glove = sim::simulate_finger_wave(geo, wp, 7000 + d);
        wire::write_stream((dir / "tactile.osmo").string(), glove);
      }

      const int rc = run_cmd(bin + " build-dataset --demos " + demos.string() +
                             " --extrinsics " + (root / "extrinsics.json").string() +
                             " --out " + ds_out.string() + " > /dev/null 2>&1");
      if (rc != 0) {
        ok = false;
        detail = "build-dataset exited " + std::to_string(rc);
      }
    }

    if (ok) {
      try {
        dataset::NormalizationStats stats;
        const auto ds =
            dataset::read_dataset<dataset::RobotFrame>(ds_out.string(), &stats);
        if (ds.trajectories.size() != 10) {
          ok = false;
          detail = "expected 10 trajectories, got " +
                   std::to_string(ds.trajectories.size());
        }
        for (const auto& traj : ds.trajectories) {
          if (traj.frames.size() != 45) {
            ok = false;
            detail = "trajectory " + traj.id + " has " +
                     std::to_string(traj.frames.size()) + " frames, expected 45";
          }
          // frame-for-frame alignment on the shared 25 Hz clock
          for (std::size_t i = 0; i < traj.frames.size(); ++i)
            if (traj.frames[i].timestamp_us !=
                static_cast<std::uint64_t>(i) * kFramePeriodUs) {
              ok = false;
              detail = "misaligned timestamp in " + traj.id;
              break;
            }
          // bit-exact serialization round trip
          const auto bytes = dataset::encode_trajectory(traj);
          std::ifstream in(ds_out / ("trajectories/" + traj.id + ".rec"),
                           std::ios::binary);
          std::vector<std::uint8_t> disk(
              (std::istreambuf_iterator<char>(in)),
              std::istreambuf_iterator<char>());
          if (bytes != disk) {
            ok = false;
            detail = "round-trip bytes differ for " + traj.id;
          }
        }
        if (ok && stats.size() != dataset::kNormChannels) {
          ok = false;
          detail = "normalization stats missing from manifest";
        }
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
    const double el = seconds_since(t0);
    if (ok && el >= 120.0) {
      ok = false;
      detail = "too slow";
    }
    fs::remove_all(root);
    std::ostringstream what;
    what << "end-to-end: 10-demo bundle -> robot dataset, aligned frames, "
            "bit-exact round trip, "
         << static_cast<int>(el) << " s (need < 120)";
    if (!detail.empty()) what << " [" << detail << "]";
    report(11, what.str(), ok);
  }

  if (g_failures > 0) {
    std::cerr << g_failures << " criterion/criteria failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
