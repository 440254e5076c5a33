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
#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg(double radians) { return radians * (180.0 / kPi); }
double rad(double degrees) { return degrees * (kPi / 180.0); }

// acos with the +-1e-9 clamp band; arguments further out mean the triangle
// cannot close.
double checked_acos_deg(double arg, const char* what) {
    if (!(arg >= -1.0 - kAcosClampTolerance && arg <= 1.0 + kAcosClampTolerance)) {
        raise(ErrorCode::TargetUnreachable,
              std::string("triangle does not close: acos argument for ") + what +
                  " = " + std::to_string(arg));
    }
    if (arg > 1.0) arg = 1.0;
    if (arg < -1.0) arg = -1.0;
    return deg(std::acos(arg));
}

double clamped_acos_deg(double arg) {
    if (arg > 1.0) arg = 1.0;
    if (arg < -1.0) arg = -1.0;
    return deg(std::acos(arg));
}

void check_geometry(const ArmGeometry& g) {
    if (!(g.link_shoulder_cm > 0.0) || !(g.link_forearm_cm > 0.0)) {
        raise(ErrorCode::InvalidArgument, "link lengths must be positive");
    }
    if (!(g.base_height_cm >= 0.0) || !(g.wrist_height_cm >= 0.0)) {
        raise(ErrorCode::InvalidArgument, "mount heights must be nonnegative");
    }
}

} // namespace

PlanTriangle plan_triangle(const PlanPoint& base, const PlanPoint& object) {
    PlanTriangle t;
    t.leg_y_cm = base.y_cm - object.y_cm;
    t.leg_x_cm = object.x_cm - base.x_cm;
    t.reach_cm = std::hypot(t.leg_y_cm, t.leg_x_cm);
    return t;
}

double base_angle_deg(const PlanTriangle& t) {
    if (t.reach_cm == 0.0) {
        raise(ErrorCode::DegenerateTarget,
              "target on the base axis: base angle undefined");
    }
    double angle = deg(std::atan2(t.leg_x_cm, t.leg_y_cm));
    if (angle <= -180.0) angle += 360.0;
    return angle;
}

double spatial_hypotenuse_cm(const ArmGeometry& g, double reach_cm) {
    return std::hypot(g.wrist_height_cm - g.base_height_cm, reach_cm);
}

VerticalTriangleAngles vertical_angles(const ArmGeometry& g, double reach_cm,
                                       double l4_cm) {
    check_geometry(g);
    const double l1 = g.link_shoulder_cm;
    const double l2 = g.link_forearm_cm;
    const double gap = std::fabs(g.wrist_height_cm - g.base_height_cm);

    VerticalTriangleAngles v;
    v.a_deg = checked_acos_deg((l1 * l1 + l2 * l2 - l4_cm * l4_cm) / (2.0 * l1 * l2), "a");
    v.b_deg = checked_acos_deg((l1 * l1 + l4_cm * l4_cm - l2 * l2) / (2.0 * l1 * l4_cm), "b");
    v.c_deg = checked_acos_deg((l2 * l2 + l4_cm * l4_cm - l1 * l1) / (2.0 * l2 * l4_cm), "c");

    // Right triangle with legs (reach, |h2-h1|). The law-of-cosines form is
    // ill-conditioned when either leg vanishes (acos near +-1), so the
    // angles come from the legs directly; for a diagonal consistent with
    // the legs the values coincide. Limit values at the two degenerate
    // corners keep d + e = 90 everywhere.
    if (gap < kHeightGapEpsilonCm) {
        v.d_deg = 0.0;
        v.e_deg = 90.0;
    } else if (reach_cm < kHeightGapEpsilonCm) {
        v.d_deg = 90.0;
        v.e_deg = 0.0;
    } else {
        v.d_deg = deg(std::atan2(gap, reach_cm));
        v.e_deg = deg(std::atan2(reach_cm, gap));
    }
    return v;
}

JointTriple joint_mapping(const VerticalTriangleAngles& v) {
    JointTriple q;
    q.q2_deg = 90.0 - (v.b_deg + v.d_deg);
    q.q3_deg = 90.0 - v.a_deg;
    q.q4_deg = 180.0 - (v.c_deg + v.e_deg);
    return q;
}

JointSolution solve_ik(const ArmGeometry& g, const PlanPoint& object,
                       double gripper_deg) {
    check_geometry(g);
    const PlanPoint base{0.0, 0.0};
    const PlanTriangle t = plan_triangle(base, object);

    // Orient the legs so q1 = 0 faces the +y plan axis: the triangle stores
    // leg_y = base.y - object.y, which points backwards.
    const PlanTriangle forward{-t.leg_y_cm, t.leg_x_cm, t.reach_cm};
    const double q1 = base_angle_deg(forward);

    const double l4 = spatial_hypotenuse_cm(g, t.reach_cm);
    const VerticalTriangleAngles v = vertical_angles(g, t.reach_cm, l4);
    const JointTriple q = joint_mapping(v);

    JointSolution s;
    s.q1_deg = q1;
    s.q2_deg = q.q2_deg;
    s.q3_deg = q.q3_deg;
    s.q4_deg = q.q4_deg;
    s.q5_deg = gripper_deg;
    return s;
}

WristPose forward_kinematics(const ArmGeometry& g, const JointSolution& s) {
    check_geometry(g);
    const double l1 = g.link_shoulder_cm;
    const double l2 = g.link_forearm_cm;

    // Shoulder from vertical, elbow relative to the shoulder; heights run
    // from the pivot toward the target plane so the chain inverts the solver
    // for wrists above and below the pivot alike.
    const double q2 = rad(s.q2_deg);
    const double q23 = rad(s.q2_deg + s.q3_deg);
    const double rho = l1 * std::sin(q2) + l2 * std::cos(q23);
    const double zeta = l1 * std::cos(q2) - l2 * std::sin(q23);
    const double toward_target = (g.wrist_height_cm >= g.base_height_cm) ? 1.0 : -1.0;

    const double q1 = rad(s.q1_deg);
    WristPose pose;
    pose.plan.x_cm = rho * std::sin(q1);
    pose.plan.y_cm = rho * std::cos(q1);
    pose.wrist_height_cm = g.base_height_cm + toward_target * zeta;
    return pose;
}

ReachableAnnulus reachable_annulus(const ArmGeometry& g) {
    check_geometry(g);
    const double total = g.link_shoulder_cm + g.link_forearm_cm;
    const double diff = std::fabs(g.link_shoulder_cm - g.link_forearm_cm);
    const double gap = std::fabs(g.wrist_height_cm - g.base_height_cm);
    if (gap > total) {
        raise(ErrorCode::EmptyWorkspace,
              "height gap exceeds total link length: no reachable point");
    }
    ReachableAnnulus annulus;
    annulus.r_max_cm = std::sqrt(total * total - gap * gap);
    annulus.r_min_cm = std::sqrt(std::max(0.0, diff * diff - gap * gap));
    return annulus;
}

std::string joint_solution_json(const JointSolution& s) {
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "{\"q1\":%.6f,\"q2\":%.6f,\"q3\":%.6f,\"q4\":%.6f,\"q5\":%.6f}",
                  s.q1_deg, s.q2_deg, s.q3_deg, s.q4_deg, s.q5_deg);
    return std::string(buf);
}

} // namespace pp
