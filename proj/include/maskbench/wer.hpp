#pragma once

#include <string>
#include <vector>

namespace maskbench {

/// Minimum-edit-distance alignment counts. rate = (S+D+I)/ref_len and may
/// exceed 1.0 for insertion-heavy hypotheses; it is never clipped.
struct WerBreakdown {
  std::int64_t substitutions = 0;
  std::int64_t deletions = 0;
  std::int64_t insertions = 0;
  std::int64_t ref_len = 0;
  double rate = 0.0;
};

/// Word error rate from a unit-cost minimum edit alignment. Ties are broken
/// deterministically: substitution is preferred over an insertion+deletion
/// pair, then matches/edits are taken at the earliest position. The same
/// operation serves phone error rate on phone tokens. Reference must be
/// non-empty.
WerBreakdown wer(const std::vector<std::string>& reference,
                 const std::vector<std::string>& hypothesis);

/// Sum edits and reference lengths across utterances (corpus WER).
WerBreakdown aggregate(const std::vector<WerBreakdown>& per_utterance);

/// Whitespace tokenizer for transcript lines.
std::vector<std::string> tokenize(const std::string& line);

}  // namespace maskbench
