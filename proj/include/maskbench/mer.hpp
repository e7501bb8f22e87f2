#pragma once

#include <cstdint>
#include <vector>

namespace maskbench {

/// Word-level masking decisions against ground truth:
///   TP  sensitive word, masked        TN  ordinary word, left alone
///   FN  sensitive word left unmasked  FP  ordinary word masked
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  std::int64_t fp = 0;

  std::int64_t total() const { return tp + tn + fn + fp; }
  ConfusionCounts& operator+=(const ConfusionCounts& other);
};

/// Penalties for the two error kinds. A missed sensitive word (FN) usually
/// costs more than collateral masking (FP), hence the asymmetric defaults.
struct MerConfig {
  double alpha = 2.0;  // FN penalty
  double beta = 1.0;   // FP penalty
};

/// Per-word comparison of "should be masked" (reference) against "was
/// masked" (hypothesis). Sequences must be equal length over the same word
/// order.
ConfusionCounts confusion(const std::vector<bool>& reference_labels,
                          const std::vector<bool>& hypothesis_labels);

/// Mask error rate: (alpha*FN + beta*FP) / (TN+TP+FN+FP).
double mer(const ConfusionCounts& counts, const MerConfig& config);

/// Recovery-oriented confusion: reference marks the originally masked words
/// (the ones that should become intelligible again), still_masked_labels
/// marks words still effectively masked after reversal. Errors are words
/// left masked: FN when the word was an original target, FP when reversal
/// corrupted a word that was never masked.
ConfusionCounts recovery_confusion(const std::vector<bool>& originally_masked,
                                   const std::vector<bool>& still_masked_labels);

/// MER over recovery_confusion.
double recovery_mer(const std::vector<bool>& originally_masked,
                    const std::vector<bool>& still_masked_labels, const MerConfig& config);

/// Corpus aggregation. Pooled counts weight every word equally, which makes
/// pooled MER the word-count-weighted mean of per-utterance MERs; the plain
/// mean of per-utterance values is reported separately.
ConfusionCounts pool(const std::vector<ConfusionCounts>& per_utterance);
double mean_utterance_mer(const std::vector<ConfusionCounts>& per_utterance,
                          const MerConfig& config);

}  // namespace maskbench
