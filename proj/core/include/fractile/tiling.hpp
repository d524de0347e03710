#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "fractile/ifs.hpp"
#include "fractile/region.hpp"
#include "fractile/verdict.hpp"

namespace fractile {

// Overlap of hull images phi_j(C) and phi_k(C) for all pairs.
Verdict check_tsc(const IfsSystem& s, const Tolerance& tol = {});
// The open set O is passed as its closure K = cl O.
Verdict check_feasible(const IfsSystem& s, const Region& K, const Tolerance& tol = {});
// Holds iff measure(O \ Phi(K)) > area_eps.
Verdict check_nontrivial(const IfsSystem& s, const Region& K, const Tolerance& tol = {});

// Phi(R) = union of phi_j(R).
Region apply_maps(const IfsSystem& s, const Region& r, const Tolerance& tol = {});
// Connected components of K \ Phi(K); throws PreconditionFailed when infeasible or trivial.
std::vector<Region> generators(const IfsSystem& s, const Region& K, const Tolerance& tol = {});

// T_k = Phi^k(O) \ Phi^{k+1}(K), regularized.
struct TilesetLevel {
    int k = 0;
    Region region;
};
TilesetLevel tileset_level(const IfsSystem& s, const Region& K, int k, const Tolerance& tol = {});

struct Generator {
    Region region;
    double measure = 0.0;
    double inradius = 0.0;
};

class Tiling {
public:
    Tiling(const IfsSystem& s, const Region& K, const Tolerance& tol = {});

    const IfsSystem& system() const { return sys_; }
    const Region& base() const { return K_; }
    const std::vector<Generator>& generators() const { return gens_; }
    double max_inradius() const;
    const Tolerance& tolerance() const { return tol_; }

private:
    IfsSystem sys_;
    Region K_;
    std::vector<Generator> gens_;
    Tolerance tol_;
};

struct Tile {
    Word word;
    int q = 0;           // 0-based generator index
    double ratio = 1.0;  // r_w for similitudes, |det| for affine words
    double diameter = 0.0;
    Region region;
};

struct StopPolicy {
    int max_depth = 18;
    double min_diam = 0.0;
    std::size_t tile_cap = 2'000'000;
};

// Breadth-first stream of tiles; within a level words are lexicographic, then q.
class TileStream {
public:
    TileStream(const Tiling& t, StopPolicy stop);
    std::optional<Tile> next();
    bool truncated() const { return truncated_; }
    std::size_t emitted() const { return emitted_; }

private:
    struct Pending {
        Word word;
        Affine2 map;
    };
    const Tiling* tiling_;
    StopPolicy stop_;
    std::deque<Pending> queue_;
    std::optional<Pending> current_;
    int q_ = 0;
    bool truncated_ = false;
    std::size_t emitted_ = 0;
    double base_diam_ = 0.0;
};

TileStream enumerate_tiles(const Tiling& t, StopPolicy stop);

struct BoundaryDimensionReport {
    double dim_F = 0.0;
    double dim_bd_T0 = 0.0;
    double dim_bd_T = 0.0;
    bool partial = false;  // dim_F unavailable (affine maps)
};
BoundaryDimensionReport boundary_dimension_report(const IfsSystem& s, const Region& K);

}  // namespace fractile
