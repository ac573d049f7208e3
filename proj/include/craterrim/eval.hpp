#ifndef CRATERRIM_EVAL_HPP
#define CRATERRIM_EVAL_HPP

#include "craterrim/crater.hpp"
#include "craterrim/detection.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace craterrim {

/// Fractions in [0, 1]; missing when a denominator is zero.
struct DetectionMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> f2;
};

struct MatchReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  DetectionMetrics metrics;
  /// (detection id, ground-truth id)
  std::vector<std::pair<std::string, std::string>> matched_pairs;
};

struct MatchTolerance {
  /// Centre distance limit as a fraction of min(r_det, r_gt).
  double center = 1.0;
  /// |r_det - r_gt| / min(r_det, r_gt) limit.
  double radius = 0.25;
};

/// Greedy one-to-one matching, nearest centres first.
MatchReport match_to_ground_truth(const std::vector<Detection>& dets, const std::vector<CraterRecord>& gt,
                                  const MatchTolerance& tol = {});

/// F1 = 2PR/(P+R), F2 = 5PR/(4P+R), from precision and recall directly
/// (either as fractions or as percentages).
struct FScores {
  std::optional<double> f1;
  std::optional<double> f2;
};
FScores f_scores(double precision, double recall);

DetectionMetrics metrics(std::size_t tp, std::size_t fp, std::size_t fn);

}  // namespace craterrim

#endif  // CRATERRIM_EVAL_HPP
