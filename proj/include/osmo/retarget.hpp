#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "osmo/chain.hpp"
#include "osmo/handpose.hpp"

namespace osmo::retarget {

struct IkTargets {
  Iso3 wrist = Iso3::Identity();
  std::array<Vec3, 5> fingertips{};
  double wrist_pos_weight = 1.0;
  double wrist_rot_weight = 1.0;
  double fingertip_weight = 1.0;
};

struct IkParams {
  double damping = 1e-2;
  double step_scale = 1.0;
  double tol = 1e-4;
  int max_iters = 200;
};

struct IkResult {
  JointVector q = JointVector::Zero();
  double residual = 0.0;  // weighted task-space norm at the best iterate
  int iterations = 0;
  bool converged = false;
};

inline Vec3 rotation_log(const Mat3& r) {
  const Eigen::AngleAxisd aa(r);
  return aa.angle() * aa.axis();
}

namespace detail {

// Stacked weighted residual (21 rows) and Jacobian at q.
inline void task_error(const KinematicChain& chain, const IkTargets& targets,
                       const JointVector& q, Eigen::VectorXd& err,
                       Eigen::MatrixXd* jac) {
  const auto frames = chain.joint_frames(q);
  err.resize(21);
  if (jac) jac->setZero(21, kNumJoints);

  std::array<Iso3, 6> poses;
  for (int e = 0; e < 6; ++e)
    poses[e] = frames[chain.effectors[e].parent_joint] * chain.effectors[e].offset;

  err.segment<3>(0) =
      targets.wrist_pos_weight * (targets.wrist.translation() - poses[0].translation());
  err.segment<3>(3) =
      targets.wrist_rot_weight *
      rotation_log(targets.wrist.rotation() * poses[0].rotation().transpose());
  for (int f = 0; f < 5; ++f)
    err.segment<3>(6 + 3 * f) =
        targets.fingertip_weight *
        (targets.fingertips[f] - poses[f + 1].translation());

  if (!jac) return;
  for (int j = 0; j < kNumJoints; ++j) {
    const Vec3 axis_w = frames[j].linear() * chain.joints[j].axis.normalized();
    const Vec3 org_w = frames[j].translation();
    if (chain.is_ancestor(j, chain.effectors[0].parent_joint)) {
      jac->block<3, 1>(0, j) =
          targets.wrist_pos_weight * axis_w.cross(poses[0].translation() - org_w);
      jac->block<3, 1>(3, j) = targets.wrist_rot_weight * axis_w;
    }
    for (int f = 0; f < 5; ++f)
      if (chain.is_ancestor(j, chain.effectors[f + 1].parent_joint))
        jac->block<3, 1>(6 + 3 * f, j) =
            targets.fingertip_weight *
            axis_w.cross(poses[f + 1].translation() - org_w);
  }
}

}  // namespace detail

// Damped least-squares IK with per-step joint clamping. Never throws on
// non-convergence; the caller reads result.residual / result.converged.
inline IkResult solve_ik(const KinematicChain& chain, const IkTargets& targets,
                         const JointVector& q_init, const IkParams& params = {}) {
  if (!chain.within_limits(q_init))
    throw LimitViolationError("q_init outside joint limits");
  JointVector q = q_init;
  IkResult best;
  best.q = q;
  best.residual = std::numeric_limits<double>::infinity();

  Eigen::VectorXd err;
  Eigen::MatrixXd jac;
  for (int it = 0; it <= params.max_iters; ++it) {
    detail::task_error(chain, targets, q, err, nullptr);
    const double rnorm = err.norm();
    if (rnorm < best.residual) {
      best.residual = rnorm;
      best.q = q;
      best.iterations = it;
    }
    if (rnorm < params.tol) {
      best.converged = true;
      break;
    }
    if (it == params.max_iters) break;
    detail::task_error(chain, targets, q, err, &jac);
    const Eigen::MatrixXd jjt =
        jac * jac.transpose() +
        params.damping * params.damping *
            Eigen::MatrixXd::Identity(err.size(), err.size());
    const Eigen::VectorXd dq = jac.transpose() * jjt.ldlt().solve(err);
    q = chain.clamp(q + params.step_scale * dq);
  }
  return best;
}

// Environment: planes and axis-aligned boxes with names.
struct Plane {
  std::string name;
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
};

struct Box {
  std::string name;
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3::Ones();
};

struct Environment {
  std::vector<Plane> planes;
  std::vector<Box> boxes;
};

inline Environment default_environment() {
  Environment env;
  env.planes.push_back({"ground", Vec3::Zero(), Vec3::UnitZ()});
  return env;
}

inline Environment load_environment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open environment file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("environment parse error in " + path + ": " + e.what());
  }
  Environment env;
  for (const auto& jp : j.value("planes", nlohmann::json::array())) {
    Plane p;
    p.name = jp.at("name").get<std::string>();
    p.point = detail::jvec3(jp.at("point"));
    p.normal = detail::jvec3(jp.at("normal")).normalized();
    env.planes.push_back(p);
  }
  for (const auto& jb : j.value("boxes", nlohmann::json::array())) {
    Box b;
    b.name = jb.at("name").get<std::string>();
    b.center = detail::jvec3(jb.at("center"));
    b.half_extents = detail::jvec3(jb.at("half_extents"));
    env.boxes.push_back(b);
  }
  return env;
}

struct SafetyConfig {
  double max_wrist_speed = 1.0;  // m/s
  double collision_margin = 0.0;
  std::vector<std::pair<std::string, std::string>> exempt_pairs;  // (link, body)
};

inline SafetyConfig default_safety_config() {
  SafetyConfig cfg;
  for (const char* link : {"arm_7", "thumb_mcp", "index_mcp", "middle_mcp",
                           "ring_mcp", "pinky_mcp"})
    cfg.exempt_pairs.emplace_back(link, "ground");
  return cfg;
}

inline bool in_collision(const KinematicChain& chain, const JointVector& q,
                         const Environment& env, const SafetyConfig& cfg) {
  const auto frames = chain.joint_frames(q);
  auto exempt = [&](const std::string& link, const std::string& body) {
    for (const auto& [l, b] : cfg.exempt_pairs)
      if (l == link && b == body) return true;
    return false;
  };
  for (const auto& s : chain.spheres) {
    const Vec3 c = frames[s.joint] * s.center;
    for (const auto& p : env.planes) {
      if (exempt(s.link, p.name)) continue;
      if (p.normal.dot(c - p.point) < s.radius + cfg.collision_margin)
        return true;
    }
    for (const auto& b : env.boxes) {
      if (exempt(s.link, b.name)) continue;
      const Vec3 d = (c - b.center).cwiseAbs() - b.half_extents;
      const double outside = d.cwiseMax(0.0).norm();
      const bool inside = (d.array() <= 0.0).all();
      if (inside || outside < s.radius + cfg.collision_margin) return true;
    }
  }
  return false;
}

inline Vec3 wrist_position(const KinematicChain& chain, const JointVector& q) {
  const auto frames = chain.joint_frames(q);
  const auto& w = chain.effectors[0];
  return (frames[w.parent_joint] * w.offset).translation();
}

// Skip-and-repeat: the candidate pose is dropped in favor of the previous
// one whenever it breaks the wrist speed limit or collides.
inline JointVector safety_filter(const JointVector& q_prev,
                                 const JointVector& q_cand,
                                 const KinematicChain& chain,
                                 const Environment& env, const SafetyConfig& cfg,
                                 double dt) {
  if (dt <= 0.0) throw ConfigError("dt must be positive");
  const double speed =
      (wrist_position(chain, q_cand) - wrist_position(chain, q_prev)).norm() / dt;
  if (speed > cfg.max_wrist_speed) return q_prev;
  if (in_collision(chain, q_cand, env, cfg)) return q_prev;
  return q_cand;
}

struct RetargetResult {
  std::vector<JointVector> joints;  // one per input frame
  std::vector<int> skipped_frames;  // indices replaced by skip-and-repeat
};

inline RetargetResult retarget_trajectory(const handpose::HandTrajectory& human,
                                          const KinematicChain& chain,
                                          const Environment& env,
                                          const SafetyConfig& cfg,
                                          const IkParams& ik = {},
                                          const JointVector& q_home = JointVector::Zero()) {
  if (human.size() == 0) throw EmptyTrajectoryError("empty hand trajectory");

  RetargetResult out;
  out.joints.reserve(human.size());
  JointVector warm = chain.clamp(q_home);
  JointVector prev_out = warm;
  for (std::size_t i = 0; i < human.size(); ++i) {
    IkTargets targets;
    targets.wrist = human.wrist[i];
    targets.fingertips = human.fingertips[i];
    const IkResult r = solve_ik(chain, targets, warm, ik);
    if (i == 0) {
      if (r.residual > 10.0 * ik.tol)
        throw InitializationError(
            "first frame unreachable: residual " + std::to_string(r.residual));
      prev_out = r.q;
      out.joints.push_back(r.q);
      warm = r.q;
      continue;
    }
    const double dt =
        (human.timestamps_us[i] - human.timestamps_us[i - 1]) * 1e-6;
    const JointVector filtered =
        safety_filter(prev_out, r.q, chain, env, cfg, dt > 0 ? dt : 1.0 / kStreamRateHz);
    if ((filtered - r.q).norm() > 0.0)
      out.skipped_frames.push_back(static_cast<int>(i));
    out.joints.push_back(filtered);
    prev_out = filtered;
    warm = r.q;
  }
  return out;
}

}  // namespace osmo::retarget
