#pragma once

#include <memory>
#include <vector>

#include "fractile/ifs.hpp"
#include "fractile/region.hpp"

namespace fractile {

class Tiling;

// Distance to some closed target set, with two-sided bounds.
class DistanceField {
public:
    virtual ~DistanceField() = default;
    virtual int dimension() const = 0;
    // May stop early once hi <= decide_below or lo > decide_above.
    virtual DistanceBounds bounds(Vec2 x, double decide_below, double decide_above) const = 0;
    // Box containing the target set.
    virtual Box extent() const = 0;
};

// Exact distance to a finite set of segments (points allowed as degenerate segments).
class SegmentField final : public DistanceField {
public:
    SegmentField(int dimension, std::vector<std::pair<Vec2, Vec2>> segments);
    static SegmentField boundary_of(const Region& r);
    int dimension() const override { return dim_; }
    DistanceBounds bounds(Vec2 x, double decide_below, double decide_above) const override;
    Box extent() const override { return box_; }

private:
    int dim_;
    std::vector<std::pair<Vec2, Vec2>> segs_;
    Box box_;
    double cell_ = 1.0;
    std::vector<std::vector<int>> grid_;
    int nx_ = 1, ny_ = 1;
};

class PointCloudField final : public DistanceField {
public:
    PointCloudField(int dimension, const PointCloud& cloud);
    int dimension() const override { return field_.dimension(); }
    DistanceBounds bounds(Vec2 x, double decide_below, double decide_above) const override {
        return field_.bounds(x, decide_below, decide_above);
    }
    Box extent() const override { return field_.extent(); }

private:
    SegmentField field_;
};

// Distance to the attractor by branch-and-bound over words.
class AttractorField final : public DistanceField {
public:
    explicit AttractorField(const IfsSystem& s, double precision = 1e-9);
    int dimension() const override { return dist_.system().dimension(); }
    DistanceBounds bounds(Vec2 x, double decide_below, double decide_above) const override {
        return dist_.bounds(x, precision_, decide_below, decide_above);
    }
    Box extent() const override { return dist_.hull().bbox(); }
    const AttractorDistance& distance() const { return dist_; }

private:
    AttractorDistance dist_;
    double precision_;
};

// Distance to the boundary of the tiling's tile set, dist(x, bd T), meaningful for x in K.
class TilingBoundaryField final : public DistanceField {
public:
    explicit TilingBoundaryField(const Tiling& t);
    int dimension() const override;
    DistanceBounds bounds(Vec2 x, double decide_below, double decide_above) const override;
    Box extent() const override;

private:
    const Tiling* tiling_;
    std::vector<Affine2> inv_;  // phi_j^{-1}
    double rho_max_;
};

enum class Side { Any, Inside, Outside };

// S_eps = {x : dist(x, target) <= eps} restricted to one side of a reference region.
struct TubeQuery {
    const DistanceField* field = nullptr;
    double eps = 0.0;
    Side side = Side::Any;
    const Region* reference = nullptr;
};

struct GridVolume {
    double value = 0.0;
    double error_bar = 0.0;
    double cell = 0.0;
    std::size_t mixed_cells = 0;  // leaves straddling the level set or the reference boundary
    bool precision_warning = false;
};

// Counts grid cell centres in S_eps over a window covering the eps-neighbourhood.
// A quadtree skips blocks that are certainly inside or outside; bar = mixed * cell^d.
GridVolume grid_tube_volume(const TubeQuery& q, double cell);
// Runs cell and cell/2; value from the finer grid, bar adds the refinement delta.
GridVolume grid_tube_volume_refined(const TubeQuery& q, double cell);

}  // namespace fractile
