#include "cspin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cspin {

namespace {

void validate(const TimeSeries& s) {
  if (s.t.size() != s.y.size() || s.t.empty())
    throw std::domain_error("TimeSeries: t and y must be non-empty and equal length");
  for (std::size_t i = 1; i < s.t.size(); ++i)
    if (!(s.t[i] > s.t[i - 1]))
      throw std::domain_error("TimeSeries: t must be strictly increasing");
}

// Centered moving average, window truncated at the edges.
std::vector<double> smooth(const std::vector<double>& y, int window) {
  if (window <= 1) return y;
  const int half = window / 2;
  const int n = static_cast<int>(y.size());
  std::vector<double> out(y.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    double acc = 0.0;
    for (int j = lo; j <= hi; ++j) acc += y[j];
    out[i] = acc / (hi - lo + 1);
  }
  return out;
}

// Prominence of the peak at index i: height above the higher of the two
// valley floors reached before a taller sample (or the series edge).
double prominence_at(const std::vector<double>& y, int i) {
  const int n = static_cast<int>(y.size());
  double left_min = y[i];
  for (int j = i - 1; j >= 0 && y[j] <= y[i]; --j) left_min = std::min(left_min, y[j]);
  double right_min = y[i];
  for (int j = i + 1; j < n && y[j] <= y[i]; ++j) right_min = std::min(right_min, y[j]);
  return y[i] - std::max(left_min, right_min);
}

// Local-maximum scan with plateau handling: a run of equal values flanked by
// strictly smaller neighbours counts as one peak at the run's centre.
PeakReport scan_peaks(const std::vector<double>& t, const std::vector<double>& ys,
                      double min_prominence, int smooth_window, int start_index,
                      double min_height = -std::numeric_limits<double>::infinity()) {
  PeakReport report;
  report.smooth_window = smooth_window;
  report.min_prominence = min_prominence;
  const int n = static_cast<int>(ys.size());
  for (int i = std::max(1, start_index); i + 1 < n; ++i) {
    if (!(ys[i] > ys[i - 1])) continue;
    int j = i;
    while (j + 1 < n && ys[j + 1] == ys[i]) ++j;
    if (j + 1 >= n) break;  // plateau runs into the right edge
    if (ys[j + 1] > ys[i]) {
      i = j;
      continue;
    }
    const int c = (i + j) / 2;
    const double prom = prominence_at(ys, c);
    if (prom >= min_prominence && ys[c] >= min_height)
      report.peaks.push_back({t[c], ys[c], prom});
    i = j;
  }
  return report;
}

}  // namespace

PeakReport detect_peaks(const TimeSeries& s, double min_prominence,
                        int smooth_window) {
  validate(s);
  if (smooth_window < 1 || static_cast<std::size_t>(smooth_window) >= s.t.size())
    throw std::domain_error("detect_peaks: require series length > smooth_window >= 1");
  return scan_peaks(s.t, smooth(s.y, smooth_window), min_prominence, smooth_window, 1);
}

// Revival detection works on the oscillation envelope rather than the raw
// carrier: rectify the deviation from the series mean, average it over a wide
// window (several carrier periods), and scan that envelope for prominent
// maxima. This keeps the detected time at the revival centre and is robust to
// carrier aliasing on coarse grids. The scan starts once the envelope has
// fallen halfway from its initial value to its global minimum (the end of the
// first collapse), so the t = 0 transient is never reported as a revival.
PeakReport detect_revivals(const TimeSeries& s, double min_prominence,
                           int smooth_window) {
  validate(s);
  if (smooth_window < 1 || static_cast<std::size_t>(smooth_window) >= s.t.size())
    throw std::domain_error("detect_revivals: require series length > smooth_window >= 1");
  // Rectify the raw series: pre-smoothing would cancel a carrier whose period
  // is comparable to the window and erase the signal before rectification.
  const int n = static_cast<int>(s.y.size());
  const double mean = std::accumulate(s.y.begin(), s.y.end(), 0.0) / n;
  std::vector<double> dev(s.y.size());
  for (int i = 0; i < n; ++i) dev[i] = std::abs(s.y[i] - mean);
  const int wide = std::max(smooth_window, n / 50);
  const std::vector<double> env = smooth(dev, wide);

  const double env_min = *std::min_element(env.begin(), env.end());
  const double gate = env_min + 0.5 * (env.front() - env_min);
  int start = 0;
  while (start < n && env[start] > gate) ++start;
  // A revival must also restore a substantial envelope amplitude; residual
  // fluctuations of a fully collapsed signal can clear the prominence bar
  // while staying far below the envelope level of a genuine revival.
  return scan_peaks(s.t, env, min_prominence, smooth_window, start,
                    2.0 * min_prominence);
}

SeriesMetrics compare_series(const TimeSeries& a, const TimeSeries& b) {
  validate(a);
  validate(b);
  if (a.t != b.t) throw std::domain_error("compare_series: time grids differ");
  SeriesMetrics m;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.y.size(); ++i) {
    const double d = std::abs(a.y[i] - b.y[i]);
    m.max_abs = std::max(m.max_abs, d);
    sq += d * d;
  }
  m.rms = std::sqrt(sq / static_cast<double>(a.y.size()));
  return m;
}

LineFit revival_linearity(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::domain_error("revival_linearity: need at least 3 (N, t_peak) pairs");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::domain_error("revival_linearity: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double sq = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.slope * x + fit.intercept);
    sq += r * r;
  }
  fit.residual = std::sqrt(sq / n);
  return fit;
}

}  // namespace cspin
