// SPDX-License-Identifier: Apache-2.0
//
// Room, device placements and the CRIS element grid.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crispla
{

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline std::string to_string(const Vec3 &v)
{
    return "[" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + "]";
}

// A surface point with a unit normal. Construct through make() to normalise.
struct OrientedPoint
{
    Vec3 position;
    Vec3 normal;

    static OrientedPoint make(const Vec3 &position, const Vec3 &direction)
    {
        const double n = norm(direction);
        if (!(n > 0.0) || !direction.finite())
            throw std::invalid_argument("OrientedPoint: normal must be a finite non-zero vector");
        if (!position.finite())
            throw std::invalid_argument("OrientedPoint: position must be finite");
        return {position, direction / n};
    }
};

inline constexpr Vec3 kDown{0.0, 0.0, -1.0};

// Regular grid of square elements in the x = const wall plane.
// Rows run along y, columns along z, so a 50 x 30 grid at 0.1 m spans 5 m x 3 m.
struct CrisGrid
{
    Vec3 center{0.0, 2.5, 1.5};
    std::size_t rows = 50;
    std::size_t cols = 30;
    double element_side = 0.1;
    Vec3 normal{1.0, 0.0, 0.0};

    std::size_t size() const { return rows * cols; }
    double element_area() const { return element_side * element_side; }
    double extent_y() const { return static_cast<double>(rows) * element_side; }
    double extent_z() const { return static_cast<double>(cols) * element_side; }
};

struct Scene
{
    Vec3 room{5.0, 5.0, 3.0};
    OrientedPoint alice{{2.5, 2.5, 3.0}, kDown};
    OrientedPoint bob{{2.5, 2.5, 0.85}, {-1.0, 0.0, 0.0}};
    CrisGrid grid;
    std::optional<OrientedPoint> trudy;

    bool contains(const Vec3 &p) const
    {
        return p.x >= 0.0 && p.x <= room.x && p.y >= 0.0 && p.y <= room.y && p.z >= 0.0 && p.z <= room.z;
    }
};

// Collects every geometric violation instead of stopping at the first.
inline std::vector<std::string> scene_violations(const Scene &scene)
{
    std::vector<std::string> out;
    const auto &g = scene.grid;
    if (g.rows < 1 || g.cols < 1)
        out.push_back("cris grid needs at least one row and one column");
    if (!(g.element_side > 0.0))
        out.push_back("cris element side must be positive");
    const double tol = 1e-9;
    if (g.center.y - g.extent_y() / 2 < -tol || g.center.y + g.extent_y() / 2 > scene.room.y + tol)
        out.push_back("cris grid overflows the wall horizontally: " + std::to_string(g.extent_y()) +
                      " m of elements around y = " + std::to_string(g.center.y) + " in a " +
                      std::to_string(scene.room.y) + " m wall");
    if (g.center.z - g.extent_z() / 2 < -tol || g.center.z + g.extent_z() / 2 > scene.room.z + tol)
        out.push_back("cris grid overflows the wall vertically: " + std::to_string(g.extent_z()) +
                      " m of elements around z = " + std::to_string(g.center.z) + " in a " +
                      std::to_string(scene.room.z) + " m wall");
    if (!scene.contains(g.center))
        out.push_back("cris center " + to_string(g.center) + " outside the room");
    if (!scene.contains(scene.alice.position))
        out.push_back("alice " + to_string(scene.alice.position) + " outside the room");
    if (!scene.contains(scene.bob.position))
        out.push_back("bob " + to_string(scene.bob.position) + " outside the room");
    if (scene.trudy && !scene.contains(scene.trudy->position))
        out.push_back("trudy " + to_string(scene.trudy->position) + " outside the room");
    return out;
}

/// Element centres in row-major order (row index varies slowest).
/// Row r sits at y = cy + (r - (rows-1)/2) * side, column k at z = cz + (k - (cols-1)/2) * side.
inline std::vector<Vec3> element_centers(const CrisGrid &grid, const Vec3 &room)
{
    if (grid.rows < 1 || grid.cols < 1)
        throw std::invalid_argument("element_centers: grid needs rows, cols >= 1");
    const double half_rows = 0.5 * static_cast<double>(grid.rows - 1);
    const double half_cols = 0.5 * static_cast<double>(grid.cols - 1);
    std::vector<Vec3> out;
    out.reserve(grid.size());
    const double tol = 1e-9;
    for (std::size_t r = 0; r < grid.rows; ++r)
    {
        for (std::size_t k = 0; k < grid.cols; ++k)
        {
            const Vec3 p{grid.center.x, grid.center.y + (static_cast<double>(r) - half_rows) * grid.element_side,
                         grid.center.z + (static_cast<double>(k) - half_cols) * grid.element_side};
            if (p.x < -tol || p.x > room.x + tol || p.y < -tol || p.y > room.y + tol || p.z < -tol || p.z > room.z + tol)
                throw std::out_of_range("element_centers: element at " + to_string(p) + " lies outside the room");
            out.push_back(p);
        }
    }
    return out;
}

inline std::vector<OrientedPoint> element_surfaces(const CrisGrid &grid, const Vec3 &room)
{
    const Vec3 n = grid.normal / norm(grid.normal);
    std::vector<OrientedPoint> out;
    for (const auto &c : element_centers(grid, room))
        out.push_back({c, n});
    return out;
}

struct LinkCosines
{
    double cos_irradiance = 0.0; // at the emitting surface
    double cos_incidence = 0.0;  // at the receiving surface
    double distance = 0.0;       // m
};

// Cosines are clamped to [0, 1]: nothing is emitted or received behind a surface.
inline LinkCosines link_cosines(const OrientedPoint &src, const OrientedPoint &dst)
{
    const Vec3 delta = dst.position - src.position;
    const double d = norm(delta);
    if (!(d > 0.0))
        throw std::invalid_argument("link_cosines: coincident endpoints");
    const Vec3 u = delta / d;
    return {std::clamp(dot(src.normal, u), 0.0, 1.0), std::clamp(-dot(dst.normal, u), 0.0, 1.0), d};
}

} // namespace crispla
