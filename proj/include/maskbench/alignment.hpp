#pragma once

#include <string>
#include <vector>

namespace maskbench {

/// One time-stamped word from a forced alignment.
struct WordAlignment {
  std::string word;
  double start = 0.0;  // seconds
  double end = 0.0;
};

/// Ordered, non-overlapping word sequence.
struct Transcript {
  std::vector<WordAlignment> words;
};

struct Span {
  double start = 0.0;
  double end = 0.0;
};

/// Set of time intervals, kept normalized: sorted by start, overlapping or
/// touching intervals merged. Normalization is idempotent.
class SpanSet {
 public:
  SpanSet() = default;
  explicit SpanSet(std::vector<Span> spans);

  void add(double start, double end);

  /// Widen every span by pad seconds on each side (clamped at 0) and
  /// re-normalize. Guards against alignment jitter.
  SpanSet padded(double pad_s) const;

  const std::vector<Span>& spans() const { return spans_; }
  bool empty() const { return spans_.empty(); }
  std::size_t size() const { return spans_.size(); }
  double total_duration() const;

  /// Length of the intersection with [start, end).
  double overlap(double start, double end) const;

 private:
  void normalize();
  std::vector<Span> spans_;
};

enum class AlignmentFormat { tsv, ctm };

/// Parse a word alignment file.
///   tsv: "word<TAB>start_sec<TAB>end_sec", '#' comments ignored
///   ctm: "utt channel start_sec duration_sec word", whitespace-separated
/// Malformed lines, end <= start, overlaps and non-monotonic starts are
/// InputErrors that name the offending line.
Transcript parse_alignment(const std::string& path, AlignmentFormat format);
Transcript parse_alignment_text(const std::string& text, AlignmentFormat format,
                                const std::string& origin = "<memory>");

/// Validate Transcript invariants (monotone, non-overlapping, end > start).
void validate(const Transcript& transcript);

struct TargetMatch {
  SpanSet spans;
  std::vector<std::string> unmatched;  // phrases with no match, in input order
};

/// Every maximal contiguous, case-insensitive token-sequence match of each
/// phrase contributes [first word start, last word end]. Tokens are compared
/// after lowercasing and stripping leading/trailing punctuation; no fuzzy
/// matching.
TargetMatch spans_for_targets(const Transcript& transcript,
                              const std::vector<std::string>& phrases);

/// Word i is labeled masked iff overlap(word_i, masked) / duration(word_i)
/// >= overlap_threshold. Threshold must be in (0, 1].
std::vector<bool> word_mask_labels(const Transcript& transcript, const SpanSet& masked,
                                   double overlap_threshold = 0.5);

/// Spans file: lines "start_sec<TAB>end_sec". Targets file: one phrase per
/// line. '#' comments and blank lines ignored in both.
SpanSet parse_spans(const std::string& path);
std::vector<std::string> parse_targets(const std::string& path);

/// Token normalization used by phrase matching: ASCII lowercase plus
/// leading/trailing punctuation strip. Exposed for tests.
std::string normalize_token(const std::string& token);

}  // namespace maskbench
