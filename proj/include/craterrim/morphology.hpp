#ifndef CRATERRIM_MORPHOLOGY_HPP
#define CRATERRIM_MORPHOLOGY_HPP

#include "craterrim/crater.hpp"
#include "craterrim/raster.hpp"

#include <optional>
#include <vector>

namespace craterrim {

enum class ElementShape { Square, Cross, Disk };

/// Flat structuring element, symmetric about its centre.
struct StructuringElement {
  ElementShape shape = ElementShape::Disk;
  int radius = 1;

  /// Offsets (dx, dy) covered by the element, centre included.
  std::vector<Eigen::Vector2i> offsets() const;
};

struct OtsuResult {
  double threshold = 0.0;
  BinaryMask mask;
  /// Set when the window has no spread (or no finite values).
  bool degenerate = false;
};

inline constexpr int kOtsuBins = 256;

/// Otsu threshold over a 256-bin histogram spanning [min, max] of the finite
/// values. Bin k holds values in (e_k, e_{k+1}] with e_j = min + j (max-min)/256
/// (bin 0 also holds min). Foreground is `value > threshold`; NaN is background.
OtsuResult otsu_threshold(const Grid<double>& window);

/// 8-connected component labels (0 = background, 1..n) and per-label areas
/// (areas[0] unused).
struct Components {
  Grid<int> labels;
  std::vector<Eigen::Index> areas;
  int count() const { return static_cast<int>(areas.size()) - 1; }
};
Components label_components(const BinaryMask& mask);

/// Clears every 8-connected component smaller than `min_area` pixels.
BinaryMask remove_small_objects(const BinaryMask& mask, Eigen::Index min_area);

/// Pixels outside the mask count as background for dilation and as
/// foreground for erosion, which keeps the pair adjoint on a bounded domain.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

BinaryMask binary_closing(const BinaryMask& mask, const StructuringElement& se);
BinaryMask binary_open(const BinaryMask& mask, const StructuringElement& se);

/// Zhang-Suen thinning run to convergence.
BinaryMask thin(const BinaryMask& mask);

struct MorphParams {
  /// Overrides the scale-aware default max(8, round(0.05 r)).
  std::optional<Eigen::Index> min_area;
  StructuringElement close_se{ElementShape::Disk, 2};
  /// Final erosion-then-dilation. Unset means the step is the identity.
  std::optional<StructuringElement> open_se;
  double window_scale = 1.6;

  Eigen::Index min_area_for(double radius_px) const;
};

/// Binary rim region for one crater, in window coordinates.
struct RimRegionMask {
  BinaryMask mask;
  WindowOffset offset;
  bool degenerate = false;

  bool foreground_at(Eigen::Index parent_x, Eigen::Index parent_y) const {
    const Eigen::Index x = parent_x - offset.x;
    const Eigen::Index y = parent_y - offset.y;
    return x >= 0 && y >= 0 && x < mask.cols() && y < mask.rows() && mask(y, x);
  }
};

/// Intermediate masks of the rim-region pipeline, in order.
struct RimRegionSteps {
  BinaryMask otsu, denoised, closed, thinned, opened;
  WindowOffset offset;
};

/// Crop +-1.6r slope window, Otsu, small-object removal, closing, thinning,
/// opening. Throws std::invalid_argument when r < 3 px.
RimRegionMask extract_rim_region(const SlopeRaster& slope, const CraterRecord& crater,
                                 const MorphParams& params = {}, RimRegionSteps* steps = nullptr);

}  // namespace craterrim

#endif  // CRATERRIM_MORPHOLOGY_HPP
