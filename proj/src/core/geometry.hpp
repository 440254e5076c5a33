/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <string>

#include "core/error.hpp"

// Closed-form geometric inverse kinematics for a 5-revolute-joint arm.
//
// The solver works in two planes. The plan (bird's-eye) view fixes the base
// rotation q1; the vertical plane through the arm fixes q2..q4 from the
// triangle formed by the two links and the base-to-wrist diagonal.
//
// Angle conventions (public interface is degrees, lengths in centimeters):
//   * q1 = 0 points along the +y plan axis, positive toward +x,
//     range (-180, 180].
//   * q2 is the shoulder angle measured from the vertical, q3 the elbow
//     deviation, q4 the wrist angle, per the triangle construction
//     q2 = 90 - (b + d), q3 = 90 - a, q4 = 180 - (c + e). The vertical-plane
//     heights are measured from the shoulder pivot toward the target plane,
//     so the same construction covers wrists above and below the pivot.
//   * q5 is the gripper servo angle; it carries a configured open/closed
//     value and takes no part in the position solution.

namespace pp {

/// Link lengths and mount heights of the manipulator, in centimeters.
struct ArmGeometry {
    double link_shoulder_cm = 0.0;  ///< shoulder-to-elbow link
    double link_forearm_cm = 0.0;   ///< elbow-to-wrist link
    double base_height_cm = 0.0;    ///< shoulder pivot above the work plane
    double wrist_height_cm = 0.0;   ///< wrist height when touching a target
};

/// A point on the horizontal work plane, robot-base frame, base at origin.
struct PlanPoint {
    double x_cm = 0.0;
    double y_cm = 0.0;
};

/// Plan-view right triangle between the base and the target.
/// leg_y = base.y - object.y, leg_x = object.x - base.x; legs keep their
/// signs so the base angle can recover the quadrant.
struct PlanTriangle {
    double leg_y_cm = 0.0;
    double leg_x_cm = 0.0;
    double reach_cm = 0.0;
};

/// Interior angles of the vertical-plane construction, degrees.
/// a, b, c are the link/diagonal triangle; d, e split the right triangle
/// with legs (reach, |h2 - h1|). Satisfies a+b+c = 180 and d+e = 90.
struct VerticalTriangleAngles {
    double a_deg = 0.0;
    double b_deg = 0.0;
    double c_deg = 0.0;
    double d_deg = 0.0;
    double e_deg = 0.0;
};

/// The five output angles of the solver, degrees.
struct JointSolution {
    double q1_deg = 0.0;  ///< base / waist
    double q2_deg = 0.0;  ///< shoulder
    double q3_deg = 0.0;  ///< elbow
    double q4_deg = 0.0;  ///< wrist
    double q5_deg = 0.0;  ///< gripper (configured open/closed angle)
};

/// Plan annulus of horizontal distances the wrist can attain.
struct ReachableAnnulus {
    double r_min_cm = 0.0;
    double r_max_cm = 0.0;
};

/// Height gap below which the vertical right triangle degenerates and
/// (d, e) take their limit values (0, 90).
inline constexpr double kHeightGapEpsilonCm = 1e-9;

/// Tolerance band around +-1 inside which acos arguments are clamped
/// instead of reported as unreachable.
inline constexpr double kAcosClampTolerance = 1e-9;

PlanTriangle plan_triangle(const PlanPoint& base, const PlanPoint& object);

/// Base rotation from the plan triangle: the signed angle of (leg_x, leg_y)
/// measured from the +y plan axis, positive toward +x, range (-180, 180].
/// Throws DegenerateTarget when reach is zero.
double base_angle_deg(const PlanTriangle& t);

/// Diagonal from the shoulder pivot to the wrist: sqrt((h2-h1)^2 + reach^2).
double spatial_hypotenuse_cm(const ArmGeometry& g, double reach_cm);

/// Law-of-cosines angles of the vertical construction. Throws
/// TargetUnreachable when the link triangle cannot close on the diagonal.
VerticalTriangleAngles vertical_angles(const ArmGeometry& g, double reach_cm,
                                       double l4_cm);

struct JointTriple {
    double q2_deg = 0.0;
    double q3_deg = 0.0;
    double q4_deg = 0.0;
};

/// Maps the triangle angles onto the shoulder/elbow/wrist servo angles.
JointTriple joint_mapping(const VerticalTriangleAngles& v);

/// Full solve for a target on the work plane (robot-base frame).
/// gripper_deg is copied into q5. Throws DegenerateTarget for a target on
/// the base axis and TargetUnreachable outside the annulus.
JointSolution solve_ik(const ArmGeometry& g, const PlanPoint& object,
                       double gripper_deg = 60.0);

struct WristPose {
    PlanPoint plan;
    double wrist_height_cm = 0.0;
};

/// Forward chain under the solver's angle convention; the exact inverse of
/// solve_ik for any reachable target.
WristPose forward_kinematics(const ArmGeometry& g, const JointSolution& s);

/// Workspace precheck. Throws EmptyWorkspace when the height gap exceeds
/// the total link length.
ReachableAnnulus reachable_annulus(const ArmGeometry& g);

/// Single-line JSON record {"q1":...,"q5":...} with six decimal places.
std::string joint_solution_json(const JointSolution& s);

} // namespace pp
