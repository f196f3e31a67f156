// tests/test_util.h
//
// Shared fixture helpers for the unit and acceptance suites.

#ifndef A2W_TESTS_TEST_UTIL_H_
#define A2W_TESTS_TEST_UTIL_H_

#include <string>
#include <vector>

#include "a2w/common.h"
#include "a2w/ctc.h"
#include "a2w/vocab.h"

namespace a2w::testutil {

inline MixedVocab MakeVocab(const std::vector<std::string>& lines,
                            int min_count, int letter_order,
                            VocabScheme scheme) {
  return BuildVocabFromLines(lines, min_count, letter_order, scheme);
}

// Random posteriorgram via per-row softmax of uniform logits.
inline Posteriorgram RandomPosteriorgram(Rng* rng, int t_len, int v) {
  Posteriorgram post;
  post.blank_id = v - 1;
  post.probs.resize(t_len, v);
  for (int t = 0; t < t_len; ++t) {
    double sum = 0.0;
    for (int k = 0; k < v; ++k) {
      double e = std::exp(rng->NextUniform(-2.0, 2.0));
      post.probs(t, k) = e;
      sum += e;
    }
    post.probs.row(t) /= sum;
  }
  return post;
}

// One frame per entry of `frames`; each row is one-hot at the given id.
inline Posteriorgram OneHotPosteriorgram(const std::vector<int>& frames, int v,
                                         int blank_id) {
  Posteriorgram post;
  post.blank_id = blank_id;
  post.probs = Eigen::MatrixXd::Zero(static_cast<int>(frames.size()), v);
  for (size_t t = 0; t < frames.size(); ++t)
    post.probs(static_cast<int>(t), frames[t]) = 1.0;
  return post;
}

// Blank-filled posteriorgram of t_len frames with the given unit active over
// inclusive spans. Spans must not overlap.
struct SpanSpec {
  int unit_id;
  int start, end;
};

inline Posteriorgram SpanPosteriorgram(const std::vector<SpanSpec>& spans,
                                       int t_len, int v, int blank_id) {
  std::vector<int> frames(static_cast<size_t>(t_len), blank_id);
  for (const auto& s : spans) {
    for (int t = s.start; t <= s.end; ++t) {
      if (t < 0 || t >= t_len) continue;
      frames[static_cast<size_t>(t)] = s.unit_id;
    }
  }
  return OneHotPosteriorgram(frames, v, blank_id);
}

// |a-b| <= rel * max(|a|,|b|) + floor
inline bool CloseRel(double a, double b, double rel, double floor = 1e-9) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + floor;
}

// Flat coefficient views over parameter structs, used by the
// finite-difference oracles. Collection order must match between a parameter
// struct and its gradient twin; both sides use these helpers.
inline void Collect(Eigen::MatrixXd& m, std::vector<double*>* out) {
  for (Eigen::Index i = 0; i < m.size(); ++i) out->push_back(m.data() + i);
}

inline void Collect(Eigen::VectorXd& v, std::vector<double*>* out) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out->push_back(v.data() + i);
}

}  // namespace a2w::testutil

#endif  // A2W_TESTS_TEST_UTIL_H_
