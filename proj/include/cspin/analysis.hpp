#pragma once

#include <string>
#include <vector>

namespace cspin {

struct TimeSeries {
  std::vector<double> t;  // strictly increasing
  std::vector<double> y;
  std::string label;
};

struct Peak {
  double time = 0.0;
  double height = 0.0;       // smoothed height
  double prominence = 0.0;
};

struct PeakReport {
  std::vector<Peak> peaks;   // sorted by time
  int smooth_window = 1;
  double min_prominence = 0.0;
};

inline constexpr int kDefaultSmoothWindow = 5;
inline constexpr double kDefaultMinProminence = 0.05;

/// Moving-average smoothing followed by a strict local-maximum scan with a
/// prominence threshold. Deterministic; a constant series yields no peaks.
PeakReport detect_peaks(const TimeSeries& s, double min_prominence,
                        int smooth_window);

/// Revival peaks only: the scan starts after the first collapse, i.e. after
/// the smoothed series first drops below its long-time mean plus the
/// prominence threshold, so the t = 0 maximum is never reported.
PeakReport detect_revivals(const TimeSeries& s,
                           double min_prominence = kDefaultMinProminence,
                           int smooth_window = kDefaultSmoothWindow);

struct SeriesMetrics {
  double max_abs = 0.0;
  double rms = 0.0;
};

/// Pointwise comparison; the two series must share the identical time grid.
SeriesMetrics compare_series(const TimeSeries& a, const TimeSeries& b);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of fit residuals
};

/// Least-squares line through (N, t_peak) pairs; needs at least 3 points.
LineFit revival_linearity(const std::vector<std::pair<double, double>>& points);

}  // namespace cspin
