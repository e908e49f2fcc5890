#pragma once

#include "mvpose/geometry.hpp"
#include "mvpose/skeleton.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace mvpose::opt {

struct ObjectiveConfig {
    double lambda_sym = 1.0;        // multiplier on the symmetry cost (m^2 vs px^2)
    int max_iters = 100;
    double grad_tol = 1e-8;         // gradient infinity-norm stop
    double step_tol = 1e-10;        // accepted-step infinity-norm stop, meters
    double initial_damping = 1e-3;
    double z_min = geom::kDefaultZMin;
};

enum class Termination { gradient, step, max_iters, stalled };

std::string to_string(Termination reason);

struct ObjectiveBreakdown {
    double reprojection = 0.0;   // px^2
    double symmetry = 0.0;       // m^2, raw sum of squared residuals
    int behind_camera_terms = 0; // (joint, view) terms skipped as degenerate

    double total(double lambda_sym) const { return reprojection + lambda_sym * symmetry; }
};

struct OptimizationResult {
    skel::Pose3D pose;
    double initial_objective = 0.0;
    double final_objective = 0.0;
    double reprojection_term = 0.0;
    double symmetry_term = 0.0;
    int iterations = 0;
    bool converged = false;
    Termination termination_reason = Termination::max_iters;
    std::vector<double> objective_trace;  // initial value then each accepted step
    int behind_camera_terms = 0;
};

struct NonFiniteObjective : std::runtime_error {
    NonFiniteObjective() : std::runtime_error("objective is non-finite; corrupt input") {}
};

// Sum of squared left/right limb-length differences over the convention's
// symmetric bone pairs, m^2.
double symmetry_cost(const skel::Pose3D& pose, const skel::JointConvention& conv);

// cameras[i] pairs with detections[i]. Reprojection terms honor visibility
// masks; a joint behind a camera contributes nothing for that view and is
// counted in the breakdown.
ObjectiveBreakdown evaluate_objective(const skel::Pose3D& pose,
                                      const std::vector<geom::Camera>& cameras,
                                      const std::vector<skel::Detection2D>& detections,
                                      const skel::JointConvention& conv,
                                      const ObjectiveConfig& config);

double objective(const skel::Pose3D& pose, const std::vector<geom::Camera>& cameras,
                 const std::vector<skel::Detection2D>& detections,
                 const skel::JointConvention& conv, const ObjectiveConfig& config);

// Analytic d(objective)/d(joint coordinates), length 3J, joint j at [3j, 3j+3).
Eigen::VectorXd gradient(const skel::Pose3D& pose,
                         const std::vector<geom::Camera>& cameras,
                         const std::vector<skel::Detection2D>& detections,
                         const skel::JointConvention& conv,
                         const ObjectiveConfig& config);

// Damped least-squares descent over all joint coordinates jointly. Accepted
// steps strictly decrease the objective; the best-seen pose is returned even
// when the iteration budget runs out. Throws NonFiniteObjective when the
// initial pose evaluates to a non-finite value.
OptimizationResult refine(const skel::Pose3D& initial,
                          const std::vector<geom::Camera>& cameras,
                          const std::vector<skel::Detection2D>& detections,
                          const skel::JointConvention& conv,
                          const ObjectiveConfig& config);

}  // namespace mvpose::opt
