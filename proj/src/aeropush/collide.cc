// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/collide.cc
//---------------------------------------------------------------------------//
#include "collide.hh"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace aeropush
{
namespace
{
//---------------------------------------------------------------------------//
struct LocalFrame
{
    double c{1}, s{0};
    Vec3 center;

    LocalFrame(YawBox const& box)
        : c{std::cos(box.yaw)}, s{std::sin(box.yaw)}, center{box.center}
    {
    }

    Vec3 to_local(Vec3 const& p) const
    {
        Vec3 const d = p - center;
        return {c * d.x() + s * d.y(), -s * d.x() + c * d.y(), d.z()};
    }
    Vec3 dir_to_world(Vec3 const& v) const
    {
        return {c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z()};
    }
    Vec3 to_world(Vec3 const& p) const { return center + dir_to_world(p); }
};

Vec3 clamp_to_box(Vec3 const& p, Vec3 const& h)
{
    return p.cwiseMax(-h).cwiseMin(h);
}

//---------------------------------------------------------------------------//
/*!
 * Minimize the squared segment-to-box distance in the box frame.
 *
 * The squared distance is convex and piecewise quadratic in the segment
 * parameter, with breakpoints where a coordinate crosses a slab boundary;
 * each piece is minimized in closed form.
 */
double closest_parameter(Vec3 const& a, Vec3 const& d, Vec3 const& h)
{
    std::array<double, 8> ts;
    int n = 0;
    ts[n++] = 0.0;
    for (int i = 0; i < 3; ++i)
    {
        if (d[i] == 0.0)
        {
            continue;
        }
        for (double bound : {h[i], -h[i]})
        {
            double const t = (bound - a[i]) / d[i];
            if (t > 0.0 && t < 1.0)
            {
                ts[n++] = t;
            }
        }
    }
    ts[n++] = 1.0;
    std::sort(ts.begin(), ts.begin() + n);

    double best_t = 0.0;
    double best_f = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < n; ++k)
    {
        double const t0 = ts[k], t1 = ts[k + 1];
        if (t1 <= t0)
        {
            continue;
        }
        double const tm = 0.5 * (t0 + t1);
        double qa = 0, qb = 0, qc = 0;
        for (int i = 0; i < 3; ++i)
        {
            double const x = a[i] + tm * d[i];
            double off;
            if (x > h[i])
                off = a[i] - h[i];
            else if (x < -h[i])
                off = a[i] + h[i];
            else
                continue;
            qa += d[i] * d[i];
            qb += 2 * d[i] * off;
            qc += off * off;
        }
        double t = t0;
        if (qa > 0)
        {
            t = std::clamp(-qb / (2 * qa), t0, t1);
        }
        double const f = (qa * t + qb) * t + qc;
        if (f < best_f)
        {
            best_f = f;
            best_t = t;
        }
    }
    return best_t;
}

//---------------------------------------------------------------------------//
struct InnerDepth
{
    double depth{0};
    double t{0};
    int axis{0};
    double sign{1};
};

/*!
 * Deepest segment point inside the box and its nearest face.
 *
 * Inner depth is the minimum of six linear functions of t (distance to
 * each face plane), hence concave; its maximum is attained at an endpoint
 * or at a pairwise crossing. On a plateau the midpoint is used. Faces tied
 * at the optimum are resolved toward the segment's base end.
 */
InnerDepth deepest_inner_point(Vec3 const& a, Vec3 const& d, Vec3 const& h)
{
    std::array<double, 6> alpha, beta;
    for (int i = 0; i < 3; ++i)
    {
        // face (i, +1): h - x ; face (i, -1): h + x
        alpha[2 * i] = h[i] - a[i];
        beta[2 * i] = -d[i];
        alpha[2 * i + 1] = h[i] + a[i];
        beta[2 * i + 1] = d[i];
    }
    auto depth_at = [&](double t) {
        double g = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 6; ++j)
        {
            g = std::min(g, alpha[j] + beta[j] * t);
        }
        return g;
    };

    std::array<double, 17> cand;
    int n = 0;
    cand[n++] = 0.0;
    cand[n++] = 1.0;
    for (int j = 0; j < 6; ++j)
    {
        for (int k = j + 1; k < 6; ++k)
        {
            double const db = beta[j] - beta[k];
            if (db == 0.0)
                continue;
            double const t = (alpha[k] - alpha[j]) / db;
            if (t > 0.0 && t < 1.0)
                cand[n++] = t;
        }
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k)
    {
        best = std::max(best, depth_at(cand[k]));
    }
    constexpr double tie = 1e-12;
    double t_lo = 1.0, t_hi = 0.0;
    for (int k = 0; k < n; ++k)
    {
        if (depth_at(cand[k]) >= best - tie)
        {
            t_lo = std::min(t_lo, cand[k]);
            t_hi = std::max(t_hi, cand[k]);
        }
    }
    InnerDepth result;
    result.t = 0.5 * (t_lo + t_hi);
    result.depth = depth_at(result.t);

    double best_score = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 6; ++j)
    {
        double const g = alpha[j] + beta[j] * result.t;
        if (g > result.depth + tie)
            continue;
        int const axis = j / 2;
        double const sign = (j % 2 == 0) ? 1.0 : -1.0;
        double const score = sign * a[axis];
        if (score > best_score)
        {
            best_score = score;
            result.axis = axis;
            result.sign = sign;
        }
    }
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
SegmentBoxDistance
segment_box_distance(Vec3 const& a, Vec3 const& b, YawBox const& box)
{
    LocalFrame const frame{box};
    Vec3 const la = frame.to_local(a);
    Vec3 const ld = frame.to_local(b) - la;
    double const t = closest_parameter(la, ld, box.half_extents);
    Vec3 const p = la + t * ld;
    Vec3 const q = clamp_to_box(p, box.half_extents);
    return {(p - q).norm(), t, frame.to_world(p), frame.to_world(q)};
}

//---------------------------------------------------------------------------//
CapsuleBoxContact capsule_box_contact(Vec3 const& a,
                                      Vec3 const& b,
                                      double radius,
                                      YawBox const& box)
{
    LocalFrame const frame{box};
    Vec3 const& h = box.half_extents;
    Vec3 const la = frame.to_local(a);
    Vec3 const ld = frame.to_local(b) - la;
    double const t = closest_parameter(la, ld, h);
    Vec3 const p = la + t * ld;
    Vec3 const q = clamp_to_box(p, h);
    double const dist = (p - q).norm();

    CapsuleBoxContact result;
    result.distance = dist;
    if (dist >= radius)
    {
        return result;
    }
    result.touching = true;
    if (dist > 0)
    {
        result.penetration = radius - dist;
        result.point = frame.to_world(q);
        result.normal = frame.dir_to_world((q - p) / dist);
        return result;
    }

    InnerDepth const inner = deepest_inner_point(la, ld, h);
    Vec3 face_point = la + inner.t * ld;
    face_point[inner.axis] = inner.sign * h[inner.axis];
    Vec3 push = Vec3::Zero();
    push[inner.axis] = -inner.sign;

    result.penetration = inner.depth + radius;
    result.point = frame.to_world(face_point);
    result.normal = frame.dir_to_world(push);
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
