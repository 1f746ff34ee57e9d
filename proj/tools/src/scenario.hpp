#pragma once

// Scenario files: JSON documents describing a model, an initial state and an
// integrator configuration. Field names carry their units.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <mbslie/integrate.hpp>
#include <mbslie/lgt.hpp>
#include <mbslie/models.hpp>

namespace mbsim {

/// Invalid scenario content. path() names the offending field, e.g.
/// "model.bodies[1].mass_kg".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class ModelKind { FreeRigidBody, PinnedBody, TwoBodyChain };

struct ModelDesc {
  ModelKind kind = ModelKind::FreeRigidBody;
  std::vector<mbslie::models::BodyParams> bodies;
  /// pinned_body
  mbslie::Vec3 pin_point_body = mbslie::Vec3::Zero();
  mbslie::Vec3 anchor = mbslie::Vec3::Zero();
  /// two_body_chain
  mbslie::models::ChainJoints chain;
};

struct InitialState {
  std::vector<mbslie::Vec3> rotation_vectors;
  /// Body-fixed angular velocities.
  std::vector<mbslie::Vec3> angular_velocities;
  /// IFR positions and velocities. When given they are used for every body
  /// as is; when absent, bodies placed by a joint close it and the others
  /// start at rest at the origin.
  std::vector<mbslie::Vec3> positions;
  std::vector<mbslie::Vec3> velocities;
};

struct Scenario {
  ModelDesc model;
  InitialState initial;
  mbslie::IntegratorConfig integrator;
  std::optional<std::string> output;
};

/// Throws SchemaError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::unique_ptr<mbslie::models::RigidBodySystem> build_model(
    const ModelDesc& desc, mbslie::GroupModel group);

mbslie::MbsState build_state(const mbslie::models::RigidBodySystem& sys,
                             const InitialState& init, mbslie::AbsKind kind);

}  // namespace mbsim
