#include "maskbench/mer.hpp"

#include "maskbench/errors.hpp"

namespace maskbench {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  tn += other.tn;
  fn += other.fn;
  fp += other.fp;
  return *this;
}

ConfusionCounts confusion(const std::vector<bool>& reference_labels,
                          const std::vector<bool>& hypothesis_labels) {
  if (reference_labels.size() != hypothesis_labels.size()) {
    throw InputError("label sequences differ in length (" +
                     std::to_string(reference_labels.size()) + " vs " +
                     std::to_string(hypothesis_labels.size()) + " words)");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < reference_labels.size(); ++i) {
    const bool ref = reference_labels[i];
    const bool hyp = hypothesis_labels[i];
    if (ref && hyp) ++c.tp;
    else if (ref && !hyp) ++c.fn;
    else if (!ref && hyp) ++c.fp;
    else ++c.tn;
  }
  return c;
}

double mer(const ConfusionCounts& counts, const MerConfig& config) {
  if (config.alpha < 0.0 || config.beta < 0.0) {
    throw InputError("MER penalties must be non-negative");
  }
  if (config.alpha == 0.0 && config.beta == 0.0) {
    throw InputError("MER penalties must not both be zero");
  }
  const auto total = counts.total();
  if (total == 0) throw InputError("MER is undefined for an empty word sequence");
  return (config.alpha * static_cast<double>(counts.fn) +
          config.beta * static_cast<double>(counts.fp)) /
         static_cast<double>(total);
}

ConfusionCounts recovery_confusion(const std::vector<bool>& originally_masked,
                                   const std::vector<bool>& still_masked_labels) {
  if (originally_masked.size() != still_masked_labels.size()) {
    throw InputError("label sequences differ in length (" +
                     std::to_string(originally_masked.size()) + " vs " +
                     std::to_string(still_masked_labels.size()) + " words)");
  }
  // A word counts as an error when it stays masked after reversal: FN if it
  // was an original target (failed to recover), FP if it never was one
  // (reversal corrupted it). Recovered words land in TP/TN accordingly.
  ConfusionCounts c;
  for (std::size_t i = 0; i < originally_masked.size(); ++i) {
    const bool orig = originally_masked[i];
    const bool still = still_masked_labels[i];
    if (orig && still) ++c.fn;
    else if (orig && !still) ++c.tp;
    else if (!orig && still) ++c.fp;
    else ++c.tn;
  }
  return c;
}

double recovery_mer(const std::vector<bool>& originally_masked,
                    const std::vector<bool>& still_masked_labels, const MerConfig& config) {
  return mer(recovery_confusion(originally_masked, still_masked_labels), config);
}

ConfusionCounts pool(const std::vector<ConfusionCounts>& per_utterance) {
  ConfusionCounts pooled;
  for (const auto& c : per_utterance) pooled += c;
  return pooled;
}

double mean_utterance_mer(const std::vector<ConfusionCounts>& per_utterance,
                          const MerConfig& config) {
  if (per_utterance.empty()) throw InputError("no utterances to average");
  double sum = 0.0;
  for (const auto& c : per_utterance) sum += mer(c, config);
  return sum / static_cast<double>(per_utterance.size());
}

}  // namespace maskbench
