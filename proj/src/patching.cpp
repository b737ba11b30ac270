#include "gslp/patching.hpp"

#include <algorithm>
#include <stdexcept>

namespace gslp {

std::vector<Coord> exemplar_grid(int width, int height, const PatchSpec& spec) {
    if (spec.patch_side < 1 || spec.stride < 1)
        throw std::invalid_argument("exemplar_grid: patch_side and stride must be positive");
    if (width < spec.patch_side || height < spec.patch_side)
        throw std::invalid_argument("exemplar_grid: image smaller than patch");

    auto axis_positions = [&](int dim) {
        std::vector<int> pos;
        const int last = dim - spec.patch_side;
        for (int v = 0;; v += spec.stride) {
            if (v >= last) {
                pos.push_back(last);
                break;
            }
            pos.push_back(v);
        }
        return pos;
    };
    const auto xs = axis_positions(width);
    const auto ys = axis_positions(height);

    std::vector<Coord> grid;
    grid.reserve(xs.size() * ys.size());
    for (int y : ys)
        for (int x : xs) grid.push_back({x, y});
    return grid;
}

namespace {

double patch_sqdist(const Image& img, Coord a, Coord b, int side) {
    double acc = 0.0;
    for (int r = 0; r < side; ++r) {
        const double* pa = &img.pixels[static_cast<std::size_t>(a.y + r) * img.width + a.x];
        const double* pb = &img.pixels[static_cast<std::size_t>(b.y + r) * img.width + b.x];
        for (int c = 0; c < side; ++c) {
            const double d = pa[c] - pb[c];
            acc += d * d;
        }
    }
    return acc;
}

}  // namespace

std::vector<Coord> find_similar(const Image& search_image, Coord exemplar, const PatchSpec& spec) {
    const int side = spec.patch_side;
    if (exemplar.x < 0 || exemplar.y < 0 || exemplar.x + side > search_image.width ||
        exemplar.y + side > search_image.height)
        throw std::invalid_argument("find_similar: exemplar patch outside image");

    // Window pixel span per axis, centered on the exemplar's top-left corner
    // and clipped at the image border.
    const int lo_half = spec.window_side / 2;
    const int hi_half = spec.window_side - 1 - lo_half;
    const int x0 = std::max(0, exemplar.x - lo_half);
    const int y0 = std::max(0, exemplar.y - lo_half);
    const int x1 = std::min(search_image.width - 1, exemplar.x + hi_half);
    const int y1 = std::min(search_image.height - 1, exemplar.y + hi_half);

    struct Candidate {
        Coord xy;
        double dist;
    };
    std::vector<Candidate> candidates;
    if (x1 - x0 + 1 >= side && y1 - y0 + 1 >= side)
        candidates.reserve(static_cast<std::size_t>(x1 - x0 - side + 2) * (y1 - y0 - side + 2));

    bool exemplar_seen = false;
    for (int y = y0; y + side - 1 <= y1; ++y) {
        for (int x = x0; x + side - 1 <= x1; ++x) {
            exemplar_seen |= (x == exemplar.x && y == exemplar.y);
            candidates.push_back({{x, y}, patch_sqdist(search_image, {x, y}, exemplar, side)});
        }
    }
    // A window smaller than the patch would otherwise lose the self match.
    if (!exemplar_seen) candidates.push_back({exemplar, 0.0});

    // Candidates were generated row-major, so a stable sort gives the
    // documented tie-break for equal distances.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });

    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(spec.group_size), candidates.size());
    std::vector<Coord> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = candidates[i].xy;
    return out;
}

Eigen::MatrixXd gather_patches(const Image& source, const std::vector<Coord>& coords, int patch_side) {
    const int d = patch_side * patch_side;
    Eigen::MatrixXd group(d, static_cast<Eigen::Index>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j) {
        const Coord c = coords[j];
        if (c.x < 0 || c.y < 0 || c.x + patch_side > source.width || c.y + patch_side > source.height)
            throw std::invalid_argument("gather_patches: coordinate out of bounds");
        int k = 0;
        for (int r = 0; r < patch_side; ++r) {
            const double* row = &source.pixels[static_cast<std::size_t>(c.y + r) * source.width + c.x];
            for (int cc = 0; cc < patch_side; ++cc) group(k++, static_cast<Eigen::Index>(j)) = row[cc];
        }
    }
    return group;
}

PatchGroup gather_group(const Image& source, const std::vector<Coord>& coords, const PatchSpec& spec) {
    PatchGroup g;
    g.exemplar = coords.empty() ? Coord{} : coords.front();
    g.members = coords;
    g.data = gather_patches(source, coords, spec.patch_side);
    return g;
}

Image aggregate(const std::vector<GroupEstimate>& estimates, int width, int height, int patch_side,
                const Image& fallback) {
    if (fallback.width != width || fallback.height != height)
        throw std::invalid_argument("aggregate: fallback dimension mismatch");

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<double> sum(n, 0.0);
    std::vector<double> comp(n, 0.0);  // Kahan compensation, keeps the result order-independent
    std::vector<double> cnt(n, 0.0);   // unit weights; integer-valued, exact

    const int d = patch_side * patch_side;
    for (const auto& est : estimates) {
        if (est.values.rows() != d || est.values.cols() != static_cast<Eigen::Index>(est.coords.size()))
            throw std::invalid_argument("aggregate: estimate shape mismatch");
        for (std::size_t j = 0; j < est.coords.size(); ++j) {
            const Coord c = est.coords[j];
            if (c.x < 0 || c.y < 0 || c.x + patch_side > width || c.y + patch_side > height)
                throw std::invalid_argument("aggregate: coordinate out of bounds");
            int k = 0;
            for (int r = 0; r < patch_side; ++r) {
                const std::size_t row = static_cast<std::size_t>(c.y + r) * width + c.x;
                for (int cc = 0; cc < patch_side; ++cc, ++k) {
                    const std::size_t idx = row + cc;
                    const double v = est.values(k, static_cast<Eigen::Index>(j)) - comp[idx];
                    const double t = sum[idx] + v;
                    comp[idx] = (t - sum[idx]) - v;
                    sum[idx] = t;
                    cnt[idx] += 1.0;
                }
            }
        }
    }

    Image out = fallback;
    for (std::size_t i = 0; i < n; ++i)
        if (cnt[i] > 0.0) out.pixels[i] = sum[i] / cnt[i];
    return out;
}

}  // namespace gslp
