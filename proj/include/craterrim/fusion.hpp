#ifndef CRATERRIM_FUSION_HPP
#define CRATERRIM_FUSION_HPP

#include "craterrim/detection.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace craterrim {

inline constexpr double kDefaultPseudoLabelThreshold = 0.85;
inline constexpr double kDefaultMatchThreshold = 0.4;

/// Keeps detections with confidence >= tau.
std::vector<Detection> filter_pseudo_labels(const std::vector<Detection>& dets,
                                            double tau = kDefaultPseudoLabelThreshold);

struct SetMatching {
  /// (index into a, index into b), in selection order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> only_a;
  std::vector<std::size_t> only_b;
};

/// Greedy one-to-one matching by descending disk IoU; a pair needs
/// IoU > threshold.
SetMatching match_detection_sets(const std::vector<Detection>& a, const std::vector<Detection>& b,
                                 double threshold = kDefaultMatchThreshold);

/// Mean rim of two polygons about the midpoint of their centres. Each input
/// is re-measured from that midpoint and linearly interpolated in azimuth
/// onto the common grid. Throws on a theta-step mismatch or when the centres
/// are more than 1.6 max(r_a, r_b) apart.
RimPolygon average_shapes(const RimPolygon& a, const RimPolygon& b);

enum class Provenance { Pair, OnlyA, OnlyB };
std::string_view to_string(Provenance p);

struct FusedDetection {
  Detection detection;
  Provenance provenance = Provenance::Pair;
};

/// Pairs are averaged (centre midpoint, mean radius, mean confidence, mean
/// rim when both carry one); singles pass through unchanged. Output order:
/// pairs by index into a, then only_a, then only_b.
std::vector<FusedDetection> fuse_detections(const std::vector<Detection>& a, const std::vector<Detection>& b,
                                            double threshold = kDefaultMatchThreshold);

}  // namespace craterrim

#endif  // CRATERRIM_FUSION_HPP
