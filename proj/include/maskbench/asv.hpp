#pragma once

#include <string>
#include <vector>

namespace maskbench {

/// Labeled speaker-verification scores. Higher score = more likely the same
/// speaker. For Cllr the scores are interpreted as natural-log
/// likelihood ratios.
struct TrialScores {
  std::vector<double> target;
  std::vector<double> nontarget;
};

struct DetPoint {
  double threshold = 0.0;
  double far = 0.0;  // fraction of nontarget scores >= threshold
  double frr = 0.0;  // fraction of target scores < threshold
};

/// DET staircase at every distinct score value (ascending threshold), plus
/// the two degenerate endpoints below/above all scores. FAR is
/// non-increasing and FRR non-decreasing along the result.
std::vector<DetPoint> det_points(const TrialScores& scores);

/// Equal error rate: the FAR == FRR crossing of the DET staircase, linearly
/// interpolated between the adjacent points that straddle it.
double eer(const TrialScores& scores);

/// Log-likelihood-ratio cost in bits:
///   Cllr = 1/2 [ mean_tgt log2(1+e^-s) + mean_non log2(1+e^s) ]
/// evaluated in an overflow-safe form. 1.0 for all-zero scores; approaches 0
/// for confidently correct LLRs. Calibration-sensitive by design.
double cllr(const TrialScores& scores);

/// Score file: lines "label<TAB>score" with label target|nontarget,
/// '#' comments and blank lines ignored. Errors name the offending line.
TrialScores read_trial_scores(const std::string& path);
TrialScores parse_trial_scores_text(const std::string& text,
                                    const std::string& origin = "<memory>");

}  // namespace maskbench
