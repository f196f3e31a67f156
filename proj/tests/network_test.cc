// tests/network_test.cc

#include <doctest.h>

#include "a2w/ctc.h"
#include "a2w/network.h"
#include "test_util.h"

using namespace a2w;
using testutil::Collect;

namespace {

FeatureSequence RandomFeats(Rng* rng, int t_len, int d) {
  FeatureSequence f;
  f.utterance_id = "test";
  f.frames.resize(t_len, d);
  for (int t = 0; t < t_len; ++t)
    for (int k = 0; k < d; ++k) f.frames(t, k) = rng->NextUniform(-1, 1);
  return f;
}

std::vector<double*> CollectNetwork(NetworkParams* p) {
  std::vector<double*> out;
  for (auto& layer : p->layers) {
    for (LstmParams* dir : {&layer.fwd, &layer.bwd}) {
      Collect(dir->w_x, &out);
      Collect(dir->w_h, &out);
      Collect(dir->b, &out);
    }
  }
  Collect(p->softmax.w, &out);
  Collect(p->softmax.b, &out);
  return out;
}

}  // namespace

TEST_CASE("zero network gives uniform posteriors") {
  NetworkParams p = NetworkParams::Create(3, 4, 5, 2, nullptr);
  Rng rng(1);
  FeatureSequence feats = RandomFeats(&rng, 6, 3);
  NetworkTrace trace = NetworkForward(p, feats);
  for (int t = 0; t < 6; ++t)
    for (int v = 0; v < 5; ++v)
      CHECK(trace.post.probs(t, v) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("posterior rows sum to one and forward is deterministic") {
  Rng rng(2);
  NetworkParams p = NetworkParams::Create(3, 4, 5, 2, &rng);
  FeatureSequence feats = RandomFeats(&rng, 7, 3);
  NetworkTrace a = NetworkForward(p, feats);
  NetworkTrace b = NetworkForward(p, feats);
  CHECK((a.post.probs - b.post.probs).norm() == 0.0);
  for (int t = 0; t < 7; ++t)
    CHECK(a.post.probs.row(t).sum() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_NOTHROW(a.post.Validate());
}

TEST_CASE("dimension mismatch is an error") {
  NetworkParams p = NetworkParams::Create(3, 4, 5, 1, nullptr);
  Rng rng(3);
  FeatureSequence feats = RandomFeats(&rng, 4, 2);
  CHECK_THROWS(NetworkForward(p, feats));
  FeatureSequence bad = RandomFeats(&rng, 4, 3);
  bad.frames(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(NetworkForward(p, bad));
}

TEST_CASE("palindromic weights reverse with the input") {
  // Forward/backward cells identical, and every consumer of a concatenated
  // [fwd ; bwd] pair treats the two halves the same; reversing the input
  // then reverses the output distributions.
  Rng rng(4);
  const int d = 3, h = 3, v = 4, layers = 2;
  NetworkParams p = NetworkParams::Create(d, h, v, layers, &rng);
  for (auto& layer : p.layers) layer.bwd = layer.fwd;
  auto symmetrize = [&](Eigen::MatrixXd& m) {
    m.rightCols(h) = m.leftCols(h);
  };
  symmetrize(p.layers[1].fwd.w_x);
  p.layers[1].bwd = p.layers[1].fwd;
  symmetrize(p.softmax.w);

  FeatureSequence feats = RandomFeats(&rng, 6, d);
  FeatureSequence reversed;
  reversed.utterance_id = "rev";
  reversed.frames = feats.frames.colwise().reverse();

  Eigen::MatrixXd out = NetworkForward(p, feats).post.probs;
  Eigen::MatrixXd out_rev = NetworkForward(p, reversed).post.probs;
  CHECK((out_rev - Eigen::MatrixXd(out.colwise().reverse())).cwiseAbs().maxCoeff()
        <= 1e-12);
}

TEST_CASE("network softmax equals the standalone output projection") {
  Rng rng(5);
  NetworkParams p = NetworkParams::Create(2, 3, 4, 1, &rng);
  FeatureSequence feats = RandomFeats(&rng, 5, 2);
  NetworkTrace trace = NetworkForward(p, feats);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd y = OutputProjection(trace.top.values.row(t).transpose(),
                                         p.softmax.w, p.softmax.b);
    CHECK((y.transpose() - trace.post.probs.row(t)).norm() == 0.0);
  }
}

TEST_CASE("BPTT matches finite differences through the CTC loss") {
  Rng rng(6);
  const int d = 2, h = 3, v = 4, t_len = 5;
  NetworkParams p = NetworkParams::Create(d, h, v, 2, &rng);
  FeatureSequence feats = RandomFeats(&rng, t_len, d);
  LabelSequence labels;
  labels.ids = {0, 2};

  auto loss_of = [&]() {
    NetworkTrace trace = NetworkForward(p, feats);
    return CtcLoss(trace.post, labels).loss;
  };

  NetworkTrace trace = NetworkForward(p, feats);
  CtcLossResult loss = CtcLoss(trace.post, labels);
  NetworkParams grad = NetworkBackward(p, trace, loss.grad_logits);

  std::vector<double*> params = CollectNetwork(&p);
  std::vector<double*> grads = CollectNetwork(&grad);
  REQUIRE(params.size() == grads.size());
  const double step = 1e-5;
  for (size_t k = 0; k < params.size(); ++k) {
    double saved = *params[k];
    *params[k] = saved + step;
    double up = loss_of();
    *params[k] = saved - step;
    double down = loss_of();
    *params[k] = saved;
    double fd = (up - down) / (2 * step);
    CHECK(testutil::CloseRel(*grads[k], fd, 1e-3, 1e-7));
  }
}

TEST_CASE("zero upstream gradient gives zero parameter gradient") {
  Rng rng(7);
  NetworkParams p = NetworkParams::Create(2, 3, 4, 2, &rng);
  FeatureSequence feats = RandomFeats(&rng, 4, 2);
  NetworkTrace trace = NetworkForward(p, feats);
  NetworkParams grad =
      NetworkBackward(p, trace, Eigen::MatrixXd::Zero(4, 4));
  CHECK(grad.SquaredNorm() == 0.0);
}

TEST_CASE("summed batch gradient is linear in utterance multiplicity") {
  Rng rng(8);
  NetworkParams p = NetworkParams::Create(2, 3, 4, 1, &rng);
  FeatureSequence feats = RandomFeats(&rng, 5, 2);
  LabelSequence labels;
  labels.ids = {1};
  NetworkTrace trace = NetworkForward(p, feats);
  CtcLossResult loss = CtcLoss(trace.post, labels);

  NetworkParams once = NetworkBackward(p, trace, loss.grad_logits);
  NetworkParams twice = NetworkParams::ZeroLike(p);
  twice.Add(NetworkBackward(p, trace, loss.grad_logits));
  twice.Add(NetworkBackward(p, trace, loss.grad_logits));
  twice.Add(once, -2.0);
  CHECK(twice.SquaredNorm() <= 1e-24);
}

TEST_CASE("derived letter model shares frozen bottom layers") {
  Rng rng(9);
  NetworkParams word = NetworkParams::Create(4, 3, 6, 2, &rng);
  MixedVocab letters = testutil::MakeVocab({"ab ba", "ab"}, 1, 1,
                                           VocabScheme::kLettersOnly);
  Rng derive_rng(10);
  NetworkParams derived = DeriveLetterModel(word, letters, &derive_rng);

  CHECK(derived.num_layers() == 2);
  CHECK(derived.layers[0].frozen);
  CHECK_FALSE(derived.layers[1].frozen);
  CHECK(derived.output_dim == letters.inventory.size());
  CHECK(derived.output_dim == 30);  // single-letter set size

  // Bottom-layer forward equality on shared inputs.
  FeatureSequence feats = RandomFeats(&rng, 5, 4);
  NetworkTrace wt = NetworkForward(word, feats);
  NetworkTrace dt = NetworkForward(derived, feats);
  CHECK((wt.layer_traces[0].output - dt.layer_traces[0].output).norm() == 0.0);

  // Frozen layers receive no gradient.
  LabelSequence labels;
  labels.ids = {0, 1};
  CtcLossResult loss = CtcLoss(dt.post, labels);
  NetworkParams grad = NetworkBackward(derived, dt, loss.grad_logits);
  CHECK(grad.layers[0].fwd.SquaredNorm() == 0.0);
  CHECK(grad.layers[0].bwd.SquaredNorm() == 0.0);
  CHECK(grad.layers[1].fwd.SquaredNorm() > 0.0);

  CHECK_THROWS(DeriveLetterModel(
      NetworkParams::Create(4, 3, 6, 1, &rng), letters, &rng));
}
