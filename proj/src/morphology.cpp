#include "craterrim/morphology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace craterrim {

std::vector<Eigen::Vector2i> StructuringElement::offsets() const {
  if (radius < 1) throw std::invalid_argument("structuring element radius must be >= 1");
  std::vector<Eigen::Vector2i> out;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      bool in = false;
      switch (shape) {
        case ElementShape::Square: in = true; break;
        case ElementShape::Cross: in = dx == 0 || dy == 0; break;
        case ElementShape::Disk: in = dx * dx + dy * dy <= radius * radius; break;
      }
      if (in) out.emplace_back(dx, dy);
    }
  }
  return out;
}

namespace {

using Wide = __int128;

// Sign of a/b - c/d for non-negative numerators and positive denominators,
// without forming products that could overflow.
int compare_fractions(Wide a, Wide b, Wide c, Wide d) {
  while (true) {
    const Wide qa = a / b, qc = c / d;
    if (qa != qc) return qa < qc ? -1 : 1;
    const Wide ra = a % b, rc = c % d;
    if (ra == 0 || rc == 0) return ra == rc ? 0 : (ra == 0 ? -1 : 1);
    // a/b - c/d has the sign of d/rc - b/ra.
    a = d;
    c = b;
    b = rc;
    d = ra;
  }
}

}  // namespace

OtsuResult otsu_threshold(const Grid<double>& window) {
  if (window.size() == 0) throw std::invalid_argument("otsu_threshold: empty window");
  OtsuResult result;
  result.mask = BinaryMask::Constant(window.rows(), window.cols(), false);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < window.size(); ++i) {
    const double v = window.data()[i];
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    result.degenerate = true;
    result.threshold = std::isfinite(lo) ? lo : 0.0;
    return result;
  }

  const double width = (hi - lo) / kOtsuBins;
  auto edge = [&](int j) { return lo + j * width; };
  auto bin_of = [&](double v) {
    int k = std::clamp(static_cast<int>(std::floor((v - lo) / width)), 0, kOtsuBins - 1);
    while (k < kOtsuBins - 1 && v > edge(k + 1)) ++k;
    while (k > 0 && !(v > edge(k))) --k;
    return k;
  };

  std::array<std::int64_t, kOtsuBins> hist{};
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < window.size(); ++i) {
    const double v = window.data()[i];
    if (std::isnan(v)) continue;
    ++hist[bin_of(v)];
    ++total;
  }
  std::int64_t level_sum = 0;
  for (int k = 0; k < kOtsuBins; ++k) level_sum += k * hist[k];

  // Between-class variance up to the constant 1/N^2:
  // (N*S0 - n0*S)^2 / (n0*n1), with bin indices as levels. Candidates are
  // compared exactly as fractions, so ties keep the smallest t.
  int best = -1;
  Wide best_num = 0, best_den = 1;
  std::int64_t n0 = 0, s0 = 0;
  for (int t = 0; t < kOtsuBins - 1; ++t) {
    n0 += hist[t];
    s0 += t * hist[t];
    const std::int64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const Wide diff = static_cast<Wide>(total) * s0 - static_cast<Wide>(n0) * level_sum;
    const Wide num = diff * diff;
    const Wide den = static_cast<Wide>(n0) * n1;
    if (best < 0 || compare_fractions(num, den, best_num, best_den) > 0) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }

  result.threshold = edge(best + 1);
  result.mask = window > result.threshold;
  return result;
}

namespace {

constexpr std::array<int, 8> kDx = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr std::array<int, 8> kDy = {-1, -1, -1, 0, 0, 1, 1, 1};

}  // namespace

Components label_components(const BinaryMask& mask) {
  Components c;
  c.labels = Grid<int>::Zero(mask.rows(), mask.cols());
  c.areas.push_back(0);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index y = 0; y < mask.rows(); ++y) {
    for (Eigen::Index x = 0; x < mask.cols(); ++x) {
      if (!mask(y, x) || c.labels(y, x) != 0) continue;
      const int label = static_cast<int>(c.areas.size());
      Eigen::Index area = 0;
      c.labels(y, x) = label;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        const auto [px, py] = stack.back();
        stack.pop_back();
        ++area;
        for (int k = 0; k < 8; ++k) {
          const Eigen::Index nx = px + kDx[k], ny = py + kDy[k];
          if (nx < 0 || ny < 0 || nx >= mask.cols() || ny >= mask.rows()) continue;
          if (!mask(ny, nx) || c.labels(ny, nx) != 0) continue;
          c.labels(ny, nx) = label;
          stack.emplace_back(nx, ny);
        }
      }
      c.areas.push_back(area);
    }
  }
  return c;
}

BinaryMask remove_small_objects(const BinaryMask& mask, Eigen::Index min_area) {
  if (min_area < 1) throw std::invalid_argument("remove_small_objects: min_area must be >= 1");
  const Components comp = label_components(mask);
  BinaryMask out = mask;
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    const int label = comp.labels.data()[i];
    if (label != 0 && comp.areas[static_cast<std::size_t>(label)] < min_area) out.data()[i] = false;
  }
  return out;
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  const auto offs = se.offsets();
  BinaryMask out = BinaryMask::Constant(mask.rows(), mask.cols(), false);
  for (Eigen::Index y = 0; y < mask.rows(); ++y) {
    for (Eigen::Index x = 0; x < mask.cols(); ++x) {
      if (!mask(y, x)) continue;
      for (const auto& o : offs) {
        const Eigen::Index nx = x + o.x(), ny = y + o.y();
        if (nx >= 0 && ny >= 0 && nx < mask.cols() && ny < mask.rows()) out(ny, nx) = true;
      }
    }
  }
  return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  const auto offs = se.offsets();
  BinaryMask out = BinaryMask::Constant(mask.rows(), mask.cols(), false);
  for (Eigen::Index y = 0; y < mask.rows(); ++y) {
    for (Eigen::Index x = 0; x < mask.cols(); ++x) {
      if (!mask(y, x)) continue;
      bool keep = true;
      for (const auto& o : offs) {
        const Eigen::Index nx = x + o.x(), ny = y + o.y();
        if (nx >= 0 && ny >= 0 && nx < mask.cols() && ny < mask.rows() && !mask(ny, nx)) {
          keep = false;
          break;
        }
      }
      out(y, x) = keep;
    }
  }
  return out;
}

BinaryMask binary_closing(const BinaryMask& mask, const StructuringElement& se) {
  return erode(dilate(mask, se), se);
}

BinaryMask binary_open(const BinaryMask& mask, const StructuringElement& se) {
  return dilate(erode(mask, se), se);
}

BinaryMask thin(const BinaryMask& mask) {
  BinaryMask img = mask;
  const Eigen::Index h = img.rows(), w = img.cols();
  auto px = [&](Eigen::Index y, Eigen::Index x) -> int {
    return (x >= 0 && y >= 0 && x < w && y < h && img(y, x)) ? 1 : 0;
  };
  std::vector<std::pair<Eigen::Index, Eigen::Index>> marked;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      marked.clear();
      for (Eigen::Index y = 0; y < h; ++y) {
        for (Eigen::Index x = 0; x < w; ++x) {
          if (!img(y, x)) continue;
          // P2..P9 clockwise from north.
          const int p2 = px(y - 1, x), p3 = px(y - 1, x + 1), p4 = px(y, x + 1), p5 = px(y + 1, x + 1);
          const int p6 = px(y + 1, x), p7 = px(y + 1, x - 1), p8 = px(y, x - 1), p9 = px(y - 1, x - 1);
          const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          if (b < 2 || b > 6) continue;
          const std::array<int, 9> ring = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
          int a = 0;
          for (int k = 0; k < 8; ++k) a += (ring[k] == 0 && ring[k + 1] == 1);
          if (a != 1) continue;
          if (pass == 0 ? (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) : (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0))
            continue;
          marked.emplace_back(x, y);
        }
      }
      for (const auto& [x, y] : marked) img(y, x) = false;
      changed = changed || !marked.empty();
    }
  }
  return img;
}

Eigen::Index MorphParams::min_area_for(double radius_px) const {
  if (min_area) return *min_area;
  return std::max<Eigen::Index>(8, static_cast<Eigen::Index>(std::lround(0.05 * radius_px)));
}

RimRegionMask extract_rim_region(const SlopeRaster& slope, const CraterRecord& crater,
                                 const MorphParams& params, RimRegionSteps* steps) {
  validate(crater);
  if (crater.radius_px < 3.0) throw std::invalid_argument("extract_rim_region: crater radius below 3 px");

  const double half = params.window_scale * crater.radius_px;
  Window<double> win = crop_window(slope.degrees, crater.center, half);
  const WindowBounds b = window_bounds(slope.width(), slope.height(), crater.center, half);
  const BinaryMask missing = slope.missing.block(b.y0, b.x0, b.rows(), b.cols());
  win.values = missing.select(Grid<double>::Constant(b.rows(), b.cols(), std::nan("")), win.values);

  RimRegionMask out;
  out.offset = win.offset;
  if (steps) steps->offset = win.offset;

  OtsuResult otsu = otsu_threshold(win.values);
  out.degenerate = otsu.degenerate;
  BinaryMask m = std::move(otsu.mask);
  if (steps) steps->otsu = m;
  m = remove_small_objects(m, params.min_area_for(crater.radius_px));
  if (steps) steps->denoised = m;
  m = binary_closing(m, params.close_se);
  if (steps) steps->closed = m;
  m = thin(m);
  if (steps) steps->thinned = m;
  if (params.open_se) m = binary_open(m, *params.open_se);
  if (steps) steps->opened = m;
  out.mask = std::move(m);
  return out;
}

}  // namespace craterrim
