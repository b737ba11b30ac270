#pragma once

#include <Eigen/Core>
#include <vector>

#include "gslp/image.hpp"

namespace gslp {

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord&) const = default;
};

struct PatchSpec {
    int patch_side = 6;    // sqrt(d), patch is patch_side x patch_side
    int stride = 4;        // pixels between exemplar patches
    int window_side = 30;  // search window, pixels per axis
    int group_size = 60;   // similar patches kept per group
};

/// A group of similar patches. Column j of data is the patch at members[j]
/// vectorized row by row: index r*patch_side + c maps to pixel (x+c, y+r).
struct PatchGroup {
    Coord exemplar;
    std::vector<Coord> members;  // ascending matching distance, exemplar first
    Eigen::MatrixXd data;        // d x m
};

/// A per-group patch estimate headed back to the image plane.
struct GroupEstimate {
    std::vector<Coord> coords;
    Eigen::MatrixXd values;  // d x m, same vectorization as PatchGroup::data
};

/// Top-left corners of the exemplar patches: every `stride` pixels per axis,
/// with the last row/column clamped so patches never cross the image border.
/// With stride <= patch_side every pixel is covered by at least one patch.
std::vector<Coord> exemplar_grid(int width, int height, const PatchSpec& spec);

/// k nearest patches by squared Euclidean distance inside the
/// window_side x window_side search window centered on the exemplar's
/// top-left corner (clipped at the borders). Candidates are every patch
/// position fully inside both window and image, searched densely; the
/// exemplar itself is always a candidate, even when the clipped window is
/// too small to contain a full patch. Returns at most group_size positions
/// sorted by ascending distance, ties broken by row-major position.
std::vector<Coord> find_similar(const Image& search_image, Coord exemplar, const PatchSpec& spec);

/// Stack the patches at `coords` into a d x m matrix, one column per patch.
Eigen::MatrixXd gather_patches(const Image& source, const std::vector<Coord>& coords, int patch_side);

PatchGroup gather_group(const Image& source, const std::vector<Coord>& coords, const PatchSpec& spec);

/// Per-pixel unit-weight average of all patch estimates covering each pixel.
/// Pixels no estimate touches keep the fallback image's value. Accumulation
/// is compensated, so the output does not depend on the order of the input
/// list beyond ~1e-10.
Image aggregate(const std::vector<GroupEstimate>& estimates, int width, int height, int patch_side,
                const Image& fallback);

}  // namespace gslp
