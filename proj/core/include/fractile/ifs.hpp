#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractile/geometry.hpp"
#include "fractile/region.hpp"

namespace fractile {

enum class MapKind { Similitude, Affine };

// A contraction of R^d, d in {1, 2}. In d = 1 only the x coordinate is used.
class Contraction {
public:
    // theta in radians, counter-clockwise. With reflect = true the map is
    // x -> r * R(theta) * diag(1, -1) * x + t; in d = 1 reflect flips the sign.
    static Contraction similitude(int dimension, double ratio, double theta, bool reflect, Vec2 translation);
    static Contraction affine(int dimension, Mat2 linear, Vec2 translation);

    MapKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    // Similarity ratio for similitudes, operator norm for affine maps.
    double ratio() const { return ratio_; }
    double theta() const { return theta_; }
    bool reflect() const { return reflect_; }
    const Affine2& map() const { return map_; }
    Vec2 operator()(Vec2 p) const { return map_(p); }
    Vec2 fixed_point() const;

private:
    MapKind kind_ = MapKind::Similitude;
    int dim_ = 2;
    double ratio_ = 0.5;
    double theta_ = 0.0;
    bool reflect_ = false;
    Affine2 map_;
};

class IfsSystem {
public:
    IfsSystem(int dimension, std::vector<Contraction> maps, std::string label = {});

    int dimension() const { return dim_; }
    size_t size() const { return maps_.size(); }
    const std::vector<Contraction>& maps() const { return maps_; }
    const Contraction& operator[](size_t j) const { return maps_[j]; }
    const std::string& label() const { return label_; }
    bool all_similitudes() const;
    double max_ratio() const;
    std::vector<double> ratios() const;

private:
    int dim_;
    std::vector<Contraction> maps_;
    std::string label_;
};

// Finite word over map indices, stored 0-based; printed 1-based.
struct Word {
    std::vector<int> idx;

    static Word from_one_based(std::initializer_list<int> letters);
    size_t size() const { return idx.size(); }
    Word extended(int j) const {
        Word w = *this;
        w.idx.push_back(j);
        return w;
    }
    std::string to_string() const;
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

// phi_w = phi_{w1} o ... o phi_{wn}
Affine2 compose(const IfsSystem& s, const Word& w);
double word_ratio(const IfsSystem& s, const Word& w);

struct PointCloud {
    std::vector<Vec2> points;
    double err = 0.0;  // Hausdorff bound to the attractor
};

// Images of seed under all words of the given length, in lexicographic word order.
PointCloud attractor_points(const IfsSystem& s, int depth, Vec2 seed, std::uint64_t point_budget = 10'000'000);

struct HullResult {
    Region hull;
    int iterations = 0;
    double change = 0.0;  // Hausdorff change of the final step
};

// Convex hull of the attractor, iterated from the hull of the fixed points.
// Throws Inconclusive when max_iter is hit before the change bound certifies tol.
HullResult attractor_hull(const IfsSystem& s, double tol = 1e-12, int max_iter = 500);

struct DimensionResult {
    double value = 0.0;
    double residual = 0.0;  // |sum r_j^s - 1|
};

// Unique s with sum r_j^s = 1 (similitudes only).
DimensionResult similarity_dimension(const IfsSystem& s);

// Two-sided bounds on dist(x, F) by best-first search over words.
struct DistanceBounds {
    double lo = 0.0;
    double hi = 0.0;
};

class AttractorDistance {
public:
    explicit AttractorDistance(const IfsSystem& s, double hull_tol = 1e-12);

    // Stops once hi - lo <= precision, hi <= decide_below or lo > decide_above.
    DistanceBounds bounds(Vec2 x, double precision, double decide_below = -1.0,
                          double decide_above = std::numeric_limits<double>::infinity()) const;
    double distance(Vec2 x, double precision = 1e-10) const { return bounds(x, precision).hi; }
    const Region& hull() const { return hull_; }
    const IfsSystem& system() const { return sys_; }

private:
    IfsSystem sys_;
    Region hull_;
    std::vector<Vec2> hull_pts_;  // hull vertices, all points of F
};

}  // namespace fractile
