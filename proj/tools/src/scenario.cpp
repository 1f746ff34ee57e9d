#include "scenario.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include <json.hpp>

namespace mbsim {

using json = nlohmann::json;
using mbslie::Vec3;

namespace {

struct Field {
  const json& node;
  std::string path;

  Field child(const std::string& key) const {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    const auto it = node.find(key);
    if (it == node.end()) throw SchemaError(join(key), "missing required field");
    return {*it, join(key)};
  }

  std::optional<Field> optional(const std::string& key) const {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    const auto it = node.find(key);
    if (it == node.end()) return std::nullopt;
    return Field{*it, join(key)};
  }

  Field at(std::size_t i) const {
    return {node[i], path + "[" + std::to_string(i) + "]"};
  }

  std::string join(const std::string& key) const {
    return path.empty() ? key : path + "." + key;
  }

  double number() const {
    if (!node.is_number()) throw SchemaError(path, "expected a number");
    return node.get<double>();
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) throw SchemaError(path, "must be positive");
    return v;
  }

  int integer() const {
    if (!node.is_number_integer()) throw SchemaError(path, "expected an integer");
    return node.get<int>();
  }

  std::string string() const {
    if (!node.is_string()) throw SchemaError(path, "expected a string");
    return node.get<std::string>();
  }

  Vec3 vec3() const {
    if (!node.is_array() || node.size() != 3) {
      throw SchemaError(path, "expected an array of 3 numbers");
    }
    return Vec3(at(0).number(), at(1).number(), at(2).number());
  }

  std::vector<Vec3> vec3_list(std::size_t n) const {
    if (!node.is_array()) throw SchemaError(path, "expected an array");
    if (node.size() != n) {
      throw SchemaError(path, "expected " + std::to_string(n) + " entries, got " +
                                  std::to_string(node.size()));
    }
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i).vec3());
    return out;
  }
};

Vec3 vec3_or(const Field& parent, const std::string& key, const Vec3& fallback) {
  const auto f = parent.optional(key);
  return f ? f->vec3() : fallback;
}

mbslie::models::BodyParams parse_body(const Field& f) {
  mbslie::models::BodyParams p;
  p.mass = f.child("mass_kg").positive();
  const Field inertia = f.child("inertia_kgm2");
  p.inertia = inertia.vec3();
  for (int k = 0; k < 3; ++k) {
    if (!(p.inertia[k] > 0.0)) {
      throw SchemaError(inertia.path + "[" + std::to_string(k) + "]", "must be positive");
    }
  }
  p.com_offset = vec3_or(f, "com_offset_m", Vec3::Zero());
  p.gravity = vec3_or(f, "gravity_mps2", Vec3::Zero());
  return p;
}

ModelDesc parse_model(const Field& f) {
  ModelDesc m;
  const Field type = f.child("type");
  const std::string t = type.string();
  std::size_t expected = 1;
  if (t == "free_rigid_body") {
    m.kind = ModelKind::FreeRigidBody;
  } else if (t == "pinned_body") {
    m.kind = ModelKind::PinnedBody;
  } else if (t == "two_body_chain") {
    m.kind = ModelKind::TwoBodyChain;
    expected = 2;
  } else {
    throw SchemaError(type.path, "unknown model type '" + t +
                                     "' (expected free_rigid_body, pinned_body or "
                                     "two_body_chain)");
  }

  const Field bodies = f.child("bodies");
  if (!bodies.node.is_array() || bodies.node.size() != expected) {
    throw SchemaError(bodies.path, "expected an array of " + std::to_string(expected) +
                                       " bodies for " + t);
  }
  for (std::size_t i = 0; i < expected; ++i) m.bodies.push_back(parse_body(bodies.at(i)));

  if (m.kind == ModelKind::PinnedBody) {
    m.pin_point_body = f.child("pin_point_body_m").vec3();
    m.anchor = vec3_or(f, "anchor_m", Vec3::Zero());
  } else if (m.kind == ModelKind::TwoBodyChain) {
    const Field j = f.child("joints");
    m.chain.anchor = vec3_or(j, "anchor_m", Vec3::Zero());
    m.chain.body1_at_ground = j.child("body1_at_ground_m").vec3();
    m.chain.body1_at_body2 = j.child("body1_at_body2_m").vec3();
    m.chain.body2_at_body1 = j.child("body2_at_body1_m").vec3();
  }
  return m;
}

InitialState parse_initial(const Field& f, std::size_t n) {
  InitialState s;
  s.rotation_vectors = f.child("rotation_vectors_rad").vec3_list(n);
  s.angular_velocities = f.child("angular_velocities_radps").vec3_list(n);
  if (const auto p = f.optional("positions_m")) s.positions = p->vec3_list(n);
  if (const auto v = f.optional("velocities_mps")) s.velocities = v->vec3_list(n);
  return s;
}

mbslie::IntegratorConfig parse_integrator(const Field& f, const Field& combo) {
  mbslie::IntegratorConfig c;
  if (const auto s = f.optional("scheme")) {
    try {
      c.scheme = mbslie::parse_scheme(s->string());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(s->path, e.what());
    }
  }
  try {
    c.combo = mbslie::LgtCombo::parse(combo.string());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(combo.path, e.what());
  }
  c.h = f.child("h_s").positive();
  const Field t_end = f.child("t_end_s");
  c.t_end = t_end.number();
  if (!(c.t_end >= 0.0)) throw SchemaError(t_end.path, "must be non-negative");
  if (const auto p = f.optional("projection")) {
    try {
      c.projection = mbslie::parse_projection(p->string());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(p->path, e.what());
    }
  }
  if (const auto t = f.optional("projection_tol_m")) c.projection_tol = t->positive();
  if (const auto m = f.optional("projection_max_iter")) {
    c.projection_max_iter = m->integer();
    if (c.projection_max_iter < 1) throw SchemaError(m->path, "must be at least 1");
  }
  if (c.scheme == mbslie::Scheme::BaselineQuatRK4 &&
      c.combo.absolute != mbslie::AbsKind::QuatPos) {
    throw SchemaError(combo.path, "baseline_quat_rk4 requires a quaternion combo (1a-1d)");
  }
  return c;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", e.what());
  }
  const Field root{doc, ""};
  if (!doc.is_object()) throw SchemaError("<document>", "expected an object");
  Scenario s;
  s.model = parse_model(root.child("model"));
  s.initial = parse_initial(root.child("initial_state"), s.model.bodies.size());
  s.integrator = parse_integrator(root.child("integrator"), root.child("combo"));
  if (const auto o = root.optional("output")) s.output = o->string();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("<file>", "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::unique_ptr<mbslie::models::RigidBodySystem> build_model(const ModelDesc& desc,
                                                             mbslie::GroupModel group) {
  using namespace mbslie::models;
  switch (desc.kind) {
    case ModelKind::FreeRigidBody:
      return std::make_unique<RigidBodySystem>(free_rigid_body(desc.bodies[0], group));
    case ModelKind::PinnedBody:
      return std::make_unique<RigidBodySystem>(
          pinned_body(desc.bodies[0], desc.pin_point_body, group, desc.anchor));
    case ModelKind::TwoBodyChain:
      return std::make_unique<RigidBodySystem>(
          two_body_chain(desc.bodies[0], desc.bodies[1], desc.chain, group));
  }
  throw std::logic_error("unhandled model kind");
}

mbslie::MbsState build_state(const mbslie::models::RigidBodySystem& sys,
                             const InitialState& init, mbslie::AbsKind kind) {
  mbslie::MbsState s = mbslie::models::assemble_state(
      sys, kind, init.rotation_vectors, init.angular_velocities, init.positions,
      init.velocities);
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(6 * i + 3);
    if (!init.positions.empty()) {
      std::visit([&](auto& q) { q.r = init.positions[i]; }, s.q[i]);
    }
    if (!init.velocities.empty()) {
      s.V.segment<3>(k) = sys.frame() == mbslie::TwistFrame::Mixed
                              ? init.velocities[i]
                              : Vec3(mbslie::rotation_of(s.q[i]).transpose() *
                                     init.velocities[i]);
    }
  }
  return s;
}

}  // namespace mbsim
