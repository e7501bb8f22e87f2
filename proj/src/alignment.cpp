#include "maskbench/alignment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "maskbench/errors.hpp"

namespace maskbench {

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_seconds(const std::string& token, const std::string& origin, std::size_t line_no,
                     const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw InputError(origin + ":" + std::to_string(line_no) + ": bad " + what + " '" + token +
                     "'");
  }
}

[[noreturn]] void line_error(const std::string& origin, std::size_t line_no,
                             const std::string& msg) {
  throw InputError(origin + ":" + std::to_string(line_no) + ": " + msg);
}

}  // namespace

SpanSet::SpanSet(std::vector<Span> spans) : spans_(std::move(spans)) {
  for (const auto& s : spans_) {
    if (!(s.start < s.end)) {
      throw InputError("span must have start < end");
    }
    if (s.start < 0.0) {
      throw InputError("span start must be non-negative");
    }
  }
  normalize();
}

void SpanSet::add(double start, double end) {
  if (!(start < end)) throw InputError("span must have start < end");
  if (start < 0.0) throw InputError("span start must be non-negative");
  spans_.push_back({start, end});
  normalize();
}

void SpanSet::normalize() {
  std::sort(spans_.begin(), spans_.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });
  std::vector<Span> merged;
  for (const auto& s : spans_) {
    if (!merged.empty() && s.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  spans_ = std::move(merged);
}

SpanSet SpanSet::padded(double pad_s) const {
  if (pad_s == 0.0) return *this;
  SpanSet out;
  for (const auto& s : spans_) {
    const double start = std::max(0.0, s.start - pad_s);
    const double end = s.end + pad_s;
    if (start < end) out.spans_.push_back({start, end});
  }
  out.normalize();
  return out;
}

double SpanSet::total_duration() const {
  double acc = 0.0;
  for (const auto& s : spans_) acc += s.end - s.start;
  return acc;
}

double SpanSet::overlap(double start, double end) const {
  double acc = 0.0;
  for (const auto& s : spans_) {
    if (s.end <= start) continue;
    if (s.start >= end) break;
    acc += std::min(end, s.end) - std::max(start, s.start);
  }
  return acc;
}

Transcript parse_alignment_text(const std::string& text, AlignmentFormat format,
                                const std::string& origin) {
  Transcript transcript;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (comment_or_blank(line)) continue;

    WordAlignment wa;
    if (format == AlignmentFormat::tsv) {
      auto fields = split_ws(line);
      if (fields.size() != 3) {
        line_error(origin, line_no,
                   "expected 3 fields 'word start end', got " + std::to_string(fields.size()));
      }
      wa.word = fields[0];
      wa.start = parse_seconds(fields[1], origin, line_no, "start time");
      wa.end = parse_seconds(fields[2], origin, line_no, "end time");
    } else {
      auto fields = split_ws(line);
      if (fields.size() != 5) {
        line_error(origin, line_no,
                   "expected 5 fields 'utt channel start duration word', got " +
                       std::to_string(fields.size()));
      }
      wa.word = fields[4];
      wa.start = parse_seconds(fields[2], origin, line_no, "start time");
      const double dur = parse_seconds(fields[3], origin, line_no, "duration");
      wa.end = wa.start + dur;
    }
    if (wa.start < 0.0) line_error(origin, line_no, "negative start time");
    if (!(wa.end > wa.start)) line_error(origin, line_no, "word end must be after its start");
    if (!transcript.words.empty()) {
      const auto& prev = transcript.words.back();
      if (wa.start < prev.start) {
        line_error(origin, line_no, "word start times must be non-decreasing");
      }
      if (wa.start < prev.end) {
        line_error(origin, line_no, "word overlaps the previous word");
      }
    }
    transcript.words.push_back(std::move(wa));
  }
  return transcript;
}

Transcript parse_alignment(const std::string& path, AlignmentFormat format) {
  return parse_alignment_text(read_text_file(path), format, path);
}

void validate(const Transcript& transcript) {
  for (std::size_t i = 0; i < transcript.words.size(); ++i) {
    const auto& w = transcript.words[i];
    if (w.start < 0.0 || !(w.end > w.start)) {
      throw InputError("transcript word " + std::to_string(i) + " has an invalid interval");
    }
    if (i > 0) {
      const auto& prev = transcript.words[i - 1];
      if (w.start < prev.start || w.start < prev.end) {
        throw InputError("transcript words must be ordered and non-overlapping");
      }
    }
  }
}

std::string normalize_token(const std::string& token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && std::ispunct(static_cast<unsigned char>(token[begin]))) ++begin;
  while (end > begin && std::ispunct(static_cast<unsigned char>(token[end - 1]))) --end;
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(token[i]))));
  }
  return out;
}

TargetMatch spans_for_targets(const Transcript& transcript,
                              const std::vector<std::string>& phrases) {
  validate(transcript);
  std::vector<std::string> norm_words;
  norm_words.reserve(transcript.words.size());
  for (const auto& w : transcript.words) norm_words.push_back(normalize_token(w.word));

  TargetMatch result;
  std::vector<Span> hits;
  for (const auto& phrase : phrases) {
    std::vector<std::string> tokens;
    {
      std::istringstream ss(phrase);
      std::string tok;
      while (ss >> tok) {
        auto norm = normalize_token(tok);
        if (!norm.empty()) tokens.push_back(std::move(norm));
      }
    }
    bool matched = false;
    if (!tokens.empty() && tokens.size() <= norm_words.size()) {
      for (std::size_t i = 0; i + tokens.size() <= norm_words.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < tokens.size(); ++k) {
          if (norm_words[i + k] != tokens[k]) {
            ok = false;
            break;
          }
        }
        if (ok) {
          hits.push_back(
              {transcript.words[i].start, transcript.words[i + tokens.size() - 1].end});
          matched = true;
        }
      }
    }
    if (!matched) result.unmatched.push_back(phrase);
  }
  result.spans = SpanSet(std::move(hits));
  return result;
}

std::vector<bool> word_mask_labels(const Transcript& transcript, const SpanSet& masked,
                                   double overlap_threshold) {
  if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0)) {
    throw InputError("overlap threshold must lie in (0, 1]");
  }
  validate(transcript);
  std::vector<bool> labels(transcript.words.size(), false);
  for (std::size_t i = 0; i < transcript.words.size(); ++i) {
    const auto& w = transcript.words[i];
    const double dur = w.end - w.start;
    const double ov = masked.overlap(w.start, w.end);
    labels[i] = ov / dur >= overlap_threshold - 1e-12;
  }
  return labels;
}

SpanSet parse_spans(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Span> spans;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (comment_or_blank(line)) continue;
    auto fields = split_ws(line);
    if (fields.size() != 2) {
      line_error(path, line_no, "expected 2 fields 'start end'");
    }
    const double start = parse_seconds(fields[0], path, line_no, "start time");
    const double end = parse_seconds(fields[1], path, line_no, "end time");
    if (start < 0.0) line_error(path, line_no, "negative start time");
    if (!(end > start)) line_error(path, line_no, "span end must be after its start");
    spans.push_back({start, end});
  }
  return SpanSet(std::move(spans));
}

std::vector<std::string> parse_targets(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> phrases;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (comment_or_blank(line)) continue;
    phrases.push_back(line);
  }
  return phrases;
}

}  // namespace maskbench
