#include "craterrim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace craterrim {

FScores f_scores(double precision, double recall) {
  FScores f;
  if (precision + recall > 0.0) f.f1 = 2.0 * precision * recall / (precision + recall);
  if (4.0 * precision + recall > 0.0) f.f2 = 5.0 * precision * recall / (4.0 * precision + recall);
  return f;
}

DetectionMetrics metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  DetectionMetrics m;
  const auto t = static_cast<double>(tp);
  if (tp + fp > 0) m.precision = t / static_cast<double>(tp + fp);
  if (tp + fn > 0) m.recall = t / static_cast<double>(tp + fn);
  if (m.precision && m.recall) {
    const FScores f = f_scores(*m.precision, *m.recall);
    m.f1 = f.f1;
    m.f2 = f.f2;
  }
  return m;
}

MatchReport match_to_ground_truth(const std::vector<Detection>& dets, const std::vector<CraterRecord>& gt,
                                  const MatchTolerance& tol) {
  if (!(tol.center > 0.0) || !(tol.radius > 0.0)) throw std::invalid_argument("match tolerances must be positive");
  struct Candidate {
    double dist;
    std::size_t d, g;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      const double rmin = std::min(dets[i].radius_px, gt[j].radius_px);
      const double dist = (dets[i].center - gt[j].center).norm();
      if (dist <= tol.center * rmin && std::abs(dets[i].radius_px - gt[j].radius_px) / rmin <= tol.radius)
        cands.push_back({dist, i, j});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.d != b.d ? a.d < b.d : a.g < b.g;
  });

  MatchReport r;
  std::vector<bool> used_d(dets.size(), false), used_g(gt.size(), false);
  for (const auto& c : cands) {
    if (used_d[c.d] || used_g[c.g]) continue;
    used_d[c.d] = used_g[c.g] = true;
    r.matched_pairs.emplace_back(dets[c.d].id, gt[c.g].id);
  }
  r.tp = r.matched_pairs.size();
  r.fp = dets.size() - r.tp;
  r.fn = gt.size() - r.tp;
  r.metrics = metrics(r.tp, r.fp, r.fn);
  return r;
}

}  // namespace craterrim
