// osmo: command-line front end for the tactile-glove data pipeline.
// Subcommands: simulate | decode | analyze | refine | retarget |
// build-dataset | export-csv | show-config.
// Exit codes: 0 success, 1 data-quality failure, 2 usage/config error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "osmo/analysis.hpp"
#include "osmo/dataset.hpp"
#include "osmo/geometry.hpp"
#include "osmo/handpose.hpp"
#include "osmo/retarget.hpp"
#include "osmo/scenarios.hpp"
#include "osmo/wire.hpp"

namespace fs = std::filesystem;
using namespace osmo;

namespace {

std::uint64_t seed_default() {
  if (const char* s = std::getenv("OSMO_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

sim::GloveGeometry load_geo(const std::string& path) {
  return path.empty() ? sim::default_geometry() : sim::load_geometry(path);
}

retarget::KinematicChain load_chain_opt(const std::string& path) {
  return path.empty() ? retarget::default_chain() : retarget::load_chain(path);
}

retarget::Environment load_env_opt(const std::string& path) {
  return path.empty() ? retarget::default_environment()
                      : retarget::load_environment(path);
}

struct DemoResult {
  dataset::DemoTrajectory demo;
  std::vector<retarget::JointVector> joints;
};

// One demo: keypoints + tactile stream -> aligned DemoFrames + retargeted q.
DemoResult process_demo(const std::string& demo_id, const fs::path& dir,
                        const handpose::Extrinsics& ext,
                        const retarget::KinematicChain& chain,
                        const retarget::Environment& env,
                        const retarget::SafetyConfig& safety,
                        const retarget::IkParams& ik, int sg_window,
                        int sg_order) {
  auto kf = handpose::read_keypoints((dir / "keypoints.txt").string());
  if (kf.frames.empty()) throw EmptyStreamError("demo has no keypoint frames");
  wire::StreamStats stats;
  auto glove = wire::read_stream((dir / "tactile.osmo").string(), stats);
  if (glove.empty()) throw EmptyStreamError("demo has no tactile frames");
  if (stats.crc_failures || stats.packets_dropped)
    std::cerr << "warning: " << demo_id << ": " << stats.crc_failures
              << " CRC failures, " << stats.packets_dropped
              << " dropped packets in tactile stream\n";

  // wrist depth refinement where a cloud is available, then robot frame
  std::vector<handpose::HandPoseFrame> refined;
  refined.reserve(kf.frames.size());
  for (std::size_t i = 0; i < kf.frames.size(); ++i) {
    handpose::HandPoseFrame f = kf.frames[i];
    if (!kf.clouds[i].points.empty())
      f = handpose::refine_wrist_depth(f, kf.clouds[i]);
    refined.push_back(handpose::to_robot_frame(f, ext));
  }

  // pair hand frames with tactile frames on the common 25 Hz clock
  std::vector<std::uint64_t> hand_ts, glove_ts;
  for (const auto& f : refined) hand_ts.push_back(f.timestamp_us);
  for (const auto& f : glove) glove_ts.push_back(f.timestamp_us);
  const auto table = wire::timestamp_align({hand_ts, glove_ts}, kStreamRateHz);

  std::vector<handpose::HandPoseFrame> hand_aligned;
  std::vector<const sim::GloveFrame*> glove_aligned;
  for (std::size_t t = 0; t < table.grid_us.size(); ++t) {
    if (table.matches[0][t] < 0 || table.matches[1][t] < 0) continue;
    hand_aligned.push_back(refined[table.matches[0][t]]);
    hand_aligned.back().timestamp_us = table.grid_us[t];
    glove_aligned.push_back(&glove[table.matches[1][t]]);
  }
  if (hand_aligned.empty())
    throw EmptyStreamError("no overlapping hand/tactile samples");

  auto traj = handpose::to_trajectory(hand_aligned);
  traj = handpose::smooth(traj, sg_window, sg_order);
  auto rt = retarget::retarget_trajectory(traj, chain, env, safety, ik);
  for (int idx : rt.skipped_frames)
    std::cerr << "warning: " << demo_id << ": unsafe pose at frame " << idx
              << ", previous pose repeated\n";

  DemoResult out;
  out.demo.id = demo_id;
  out.demo.source = demo_id;
  for (std::size_t i = 0; i < hand_aligned.size(); ++i) {
    dataset::DemoFrame f;
    f.timestamp_us = hand_aligned[i].timestamp_us;
    const std::string key = demo_id + ":" + std::to_string(i);
    f.rgb_ref = "img_" + hex64(fnv1a64(key.data(), key.size()));
    f.ir_left_ref = "irl_" + hex64(fnv1a64(key.data(), key.size(), 17));
    f.ir_right_ref = "irr_" + hex64(fnv1a64(key.data(), key.size(), 19));
    f.tactile = dataset::fingertip_slice(*glove_aligned[i]);
    out.demo.frames.push_back(std::move(f));
  }
  out.joints = std::move(rt.joints);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OSMO tactile-glove pipeline"};
  app.require_subcommand(1);

  std::string geometry_path, chain_path, env_path, extrinsics_path;
  std::uint64_t seed = seed_default();
  app.add_option("--geometry", geometry_path, "glove geometry config (JSON)");
  app.add_option("--seed", seed, "RNG seed (default: $OSMO_SEED or 0)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run a sensor scenario");
  std::string scenario = "finger-wave", out_path = "out.osmo";
  double seconds = 60.0, amplitude = 0.015;
  int presses = 10;
  sim_cmd->add_option("--scenario", scenario, "finger-wave | press-sequence");
  sim_cmd->add_option("--seconds", seconds, "duration (finger-wave)");
  sim_cmd->add_option("--amplitude", amplitude, "wave amplitude, m");
  sim_cmd->add_option("--presses", presses, "press count (press-sequence)");
  sim_cmd->add_option("--out", out_path, "output .osmo stream");

  // decode
  auto* dec_cmd = app.add_subcommand("decode", "decode an .osmo stream");
  std::string in_path, csv_path;
  dec_cmd->add_option("--in", in_path, "input .osmo stream")->required();
  dec_cmd->add_option("--csv", csv_path, "write readings as CSV");

  // analyze
  auto* ana_cmd = app.add_subcommand(
      "analyze", "three-configuration crosstalk comparison");
  double ana_seconds = 60.0;
  int trials = 5;
  std::string ana_csv, ana_stream;
  ana_cmd->add_option("--seconds", ana_seconds, "trial duration");
  ana_cmd->add_option("--trials", trials, "trials per configuration");
  ana_cmd->add_option("--csv", ana_csv, "write report CSV");
  ana_cmd->add_option("--stream", ana_stream,
                      "analyze a recorded stream instead of simulating");

  // refine
  auto* ref_cmd = app.add_subcommand(
      "refine", "depth-refine and smooth a keypoint trajectory");
  std::string kp_in, kp_out;
  int sg_window = 9, sg_order = 3;
  ref_cmd->add_option("--keypoints", kp_in, "input keypoint file")->required();
  ref_cmd->add_option("--extrinsics", extrinsics_path, "camera->robot extrinsics")
      ->required();
  ref_cmd->add_option("--out", kp_out, "output keypoint file")->required();
  ref_cmd->add_option("--window", sg_window, "Savitzky-Golay window (odd)");
  ref_cmd->add_option("--polyorder", sg_order, "Savitzky-Golay order");

  // retarget
  auto* ret_cmd =
      app.add_subcommand("retarget", "retarget a hand trajectory to joints");
  std::string traj_in, joints_out;
  double max_wrist_speed = 1.0;
  ret_cmd->add_option("--keypoints", traj_in, "robot-frame keypoint file")
      ->required();
  ret_cmd->add_option("--chain", chain_path, "kinematic chain config");
  ret_cmd->add_option("--env", env_path, "environment config");
  ret_cmd->add_option("--max-wrist-speed", max_wrist_speed, "m/s");
  ret_cmd->add_option("--out", joints_out, "output joint CSV")->required();

  // build-dataset
  auto* bld_cmd = app.add_subcommand(
      "build-dataset", "process a demo bundle into a robot dataset");
  std::string demos_dir, dataset_out;
  bld_cmd->add_option("--demos", demos_dir, "demo bundle directory")->required();
  bld_cmd->add_option("--extrinsics", extrinsics_path, "camera->robot extrinsics")
      ->required();
  bld_cmd->add_option("--chain", chain_path, "kinematic chain config");
  bld_cmd->add_option("--env", env_path, "environment config");
  bld_cmd->add_option("--out", dataset_out, "output dataset directory")
      ->required();
  bld_cmd->add_option("--window", sg_window, "Savitzky-Golay window (odd)");
  bld_cmd->add_option("--polyorder", sg_order, "Savitzky-Golay order");
  bld_cmd->add_option("--max-wrist-speed", max_wrist_speed, "m/s");

  // export-csv
  auto* exp_cmd =
      app.add_subcommand("export-csv", "flatten a robot dataset to CSV");
  std::string exp_dataset, exp_out;
  exp_cmd->add_option("--dataset", exp_dataset, "dataset directory")->required();
  exp_cmd->add_option("--out", exp_out, "output CSV path")->required();

  // show-config
  auto* cfg_cmd =
      app.add_subcommand("show-config", "print effective defaults as JSON");

  // let --seed / --geometry be given after the subcommand as well
  for (auto* sc : {sim_cmd, dec_cmd, ana_cmd, ref_cmd, ret_cmd, bld_cmd,
                   exp_cmd, cfg_cmd})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sim_cmd) {
      const auto geo = load_geo(geometry_path);
      std::vector<sim::GloveFrame> frames;
      if (scenario == "finger-wave") {
        sim::FingerWaveParams p;
        p.duration_s = seconds;
        p.amplitude_m = amplitude;
        frames = sim::simulate_finger_wave(geo, p, seed);
      } else if (scenario == "press-sequence") {
        sim::PressParams p;
        p.presses = presses;
        frames = sim::simulate_press_sequence(geo, p, seed);
      } else {
        std::cerr << "unknown scenario: " << scenario << "\n";
        return 2;
      }
      wire::write_stream(out_path, frames);
      std::cout << "wrote " << frames.size() << " packets to " << out_path
                << "\n";
    } else if (*dec_cmd) {
      wire::StreamStats stats;
      const auto frames = wire::read_stream(in_path, stats);
      std::cout << "packets_ok=" << stats.packets_ok
                << " packets_dropped=" << stats.packets_dropped
                << " crc_failures=" << stats.crc_failures
                << " resyncs=" << stats.resyncs << "\n";
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << "timestamp_us,taxel,mag,bx_ut,by_ut,bz_ut\n";
        for (const auto& f : frames)
          for (int t = 0; t < kNumTaxels; ++t)
            for (int m = 0; m < kMagsPerTaxel; ++m)
              out << f.timestamp_us << "," << t << "," << m << ","
                  << f.readings[t][m].x() << "," << f.readings[t][m].y() << ","
                  << f.readings[t][m].z() << "\n";
      }
      if (stats.crc_failures > 0) return 1;
    } else if (*ana_cmd) {
      const auto geo = load_geo(geometry_path);
      std::vector<analysis::RmsReport> reports;
      if (!ana_stream.empty()) {
        wire::StreamStats stats;
        const auto frames = wire::read_stream(ana_stream, stats);
        std::cout << "stream: packets_ok=" << stats.packets_ok
                  << " dropped=" << stats.packets_dropped
                  << " crc_failures=" << stats.crc_failures << "\n";
        if (frames.size() < 2) return 1;
        for (int tid :
             {geo.index_of("thumb_distal"), geo.index_of("middle_distal")}) {
          std::vector<Vec3> single, diff;
          for (const auto& f : frames) {
            single.push_back(f.readings[tid][0]);
            diff.push_back(f.readings[tid][0] - f.readings[tid][1]);
          }
          auto r1 = analysis::rms_noise(single);
          r1.taxel_id = tid;
          r1.config_label = "1 mag";
          auto r2 = analysis::rms_noise(diff);
          r2.taxel_id = tid;
          r2.config_label = "2 mags (differential)";
          reports.push_back(r1);
          reports.push_back(r2);
        }
      } else {
        analysis::CrosstalkScenarioSpec spec;
        spec.wave.duration_s = ana_seconds;
        spec.trials = trials;
        spec.seed = seed;
        reports = analysis::compare_configurations(geo, spec,
                                                   analysis::table_configs());
      }
      std::cout << analysis::format_table(reports, geo,
                                          "Adjacent Finger Motion");
      if (!ana_csv.empty()) {
        std::ofstream out(ana_csv);
        out << analysis::format_csv(reports, geo);
      }
    } else if (*ref_cmd) {
      const auto ext = handpose::load_extrinsics(extrinsics_path);
      auto kf = handpose::read_keypoints(kp_in);
      std::vector<handpose::HandPoseFrame> out_frames;
      for (std::size_t i = 0; i < kf.frames.size(); ++i) {
        handpose::HandPoseFrame f = kf.frames[i];
        if (!kf.clouds[i].points.empty())
          f = handpose::refine_wrist_depth(f, kf.clouds[i]);
        out_frames.push_back(handpose::to_robot_frame(f, ext));
      }
      // smooth keypoint channels through the SG filter
      handpose::SavitzkyGolay sg(sg_window, sg_order);
      const int n = static_cast<int>(out_frames.size());
      if (n >= sg_window) {
        for (int kp = 0; kp < handpose::kNumKeypoints; ++kp) {
          std::vector<Vec3> ch(n);
          for (int i = 0; i < n; ++i) ch[i] = out_frames[i].keypoints[kp];
          const auto sm = sg.apply(ch);
          for (int i = 0; i < n; ++i) out_frames[i].keypoints[kp] = sm[i];
        }
        std::vector<Vec3> ch(n);
        for (int i = 0; i < n; ++i) ch[i] = out_frames[i].wrist_pose.translation();
        const auto sm = sg.apply(ch);
        for (int i = 0; i < n; ++i) out_frames[i].wrist_pose.translation() = sm[i];
      }
      handpose::write_keypoints(kp_out, out_frames);
      std::cout << "wrote " << out_frames.size() << " refined frames to "
                << kp_out << "\n";
    } else if (*ret_cmd) {
      const auto chain = load_chain_opt(chain_path);
      const auto env = load_env_opt(env_path);
      auto safety = retarget::default_safety_config();
      safety.max_wrist_speed = max_wrist_speed;
      auto kf = handpose::read_keypoints(traj_in);
      for (auto& f : kf.frames) f.frame_id = handpose::FrameId::Robot;
      const auto traj = handpose::to_trajectory(kf.frames);
      const auto rt =
          retarget::retarget_trajectory(traj, chain, env, safety);
      for (int idx : rt.skipped_frames)
        std::cerr << "warning: unsafe pose at frame " << idx
                  << ", previous pose repeated\n";
      std::ofstream out(joints_out);
      out << "frame,timestamp_us";
      for (int i = 0; i < 13; ++i) out << ",q" << i;
      out << "\n";
      out.precision(12);
      for (std::size_t i = 0; i < rt.joints.size(); ++i) {
        out << i << "," << traj.timestamps_us[i];
        for (int jidx = 0; jidx < 13; ++jidx) out << "," << rt.joints[i][jidx];
        out << "\n";
      }
      std::cout << "wrote " << rt.joints.size() << " joint frames to "
                << joints_out << "\n";
    } else if (*bld_cmd) {
      const auto ext = handpose::load_extrinsics(extrinsics_path);
      const auto chain = load_chain_opt(chain_path);
      const auto env = load_env_opt(env_path);
      auto safety = retarget::default_safety_config();
      safety.max_wrist_speed = max_wrist_speed;
      retarget::IkParams ik;

      std::vector<fs::path> demo_dirs;
      for (const auto& e : fs::directory_iterator(demos_dir))
        if (e.is_directory() && fs::exists(e.path() / "keypoints.txt"))
          demo_dirs.push_back(e.path());
      std::sort(demo_dirs.begin(), demo_dirs.end());
      if (demo_dirs.empty()) {
        std::cerr << "no demos found under " << demos_dir << "\n";
        return 1;
      }
      dataset::DemoDataset demos;
      std::vector<std::vector<retarget::JointVector>> joints;
      for (const auto& dir : demo_dirs) {
        auto r = process_demo(dir.filename().string(), dir, ext, chain, env,
                              safety, ik, sg_window, sg_order);
        demos.trajectories.push_back(std::move(r.demo));
        joints.push_back(std::move(r.joints));
      }
      auto robot = dataset::build_robot_dataset(demos, joints);
      const auto stats = dataset::fit_normalization(robot);
      dataset::write_dataset(dataset_out, robot, &stats);
      std::size_t total = 0;
      for (const auto& t : robot.trajectories) total += t.frames.size();
      std::cout << "wrote " << robot.trajectories.size() << " trajectories ("
                << total << " frames) to " << dataset_out << "\n";
    } else if (*exp_cmd) {
      const auto ds = dataset::read_dataset<dataset::RobotFrame>(exp_dataset);
      dataset::export_csv(exp_out, ds);
      std::cout << "wrote " << exp_out << "\n";
    } else if (*cfg_cmd) {
      nlohmann::json j;
      j["geometry"] = sim::geometry_to_json(load_geo(geometry_path));
      j["chain"] = retarget::chain_to_json(retarget::default_chain());
      j["environment"] = {{"planes",
                           {{{"name", "ground"},
                             {"point", {0, 0, 0}},
                             {"normal", {0, 0, 1}}}}}};
      j["safety"] = {{"max_wrist_speed", 1.0},
                     {"collision_margin", 0.0},
                     {"exempt_links_vs_ground",
                      {"arm_7", "thumb_mcp", "index_mcp", "middle_mcp",
                       "ring_mcp", "pinky_mcp"}}};
      j["ik"] = {{"damping", 1e-2},
                 {"step_scale", 1.0},
                 {"tol", 1e-4},
                 {"max_iters", 200}};
      j["savitzky_golay"] = {{"window", 9}, {"polyorder", 3}};
      j["chunking"] = {{"horizon", 16}, {"exec", 4}};
      j["normalization"] = {{"percentiles", {0.02, 0.98}},
                            {"clip", 1.5},
                            {"centered", false}};
      j["seed"] = seed;
      std::cout << j.dump(2) << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
