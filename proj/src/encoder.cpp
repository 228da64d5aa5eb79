#include "lexseq/encoder.hpp"

#include <cmath>

#include "lexseq/check.hpp"

namespace lexseq {

namespace {

Param weight(const std::string& name, int rows, int cols, Rng& rng) {
  return Param(name, Tensor::truncated_normal(rows, cols, 0.02, rng), ParamGroup::Bert);
}

Param zeros(const std::string& name, int rows, int cols) {
  return Param(name, Tensor(rows, cols), ParamGroup::Bert);
}

Param ones(const std::string& name, int cols) {
  return Param(name, Tensor(1, cols, 1.0), ParamGroup::Bert);
}

}  // namespace

EmbedderParams EmbedderParams::init(int vocab, int max_len, int d_c, double dropout_rate,
                                    Rng& rng) {
  EmbedderParams p;
  p.token = weight("embedder.token", vocab, d_c, rng);
  p.position = weight("embedder.position", max_len, d_c, rng);
  p.segment = weight("embedder.segment", 2, d_c, rng);
  p.ln_gamma = ones("embedder.ln_gamma", d_c);
  p.ln_beta = zeros("embedder.ln_beta", 1, d_c);
  p.dropout_rate = dropout_rate;
  return p;
}

std::vector<Param*> EmbedderParams::params() {
  return {&token, &position, &segment, &ln_gamma, &ln_beta};
}

Var embed(Graph& g, EmbedderParams& p, const std::vector<int>& token_ids,
          const std::vector<int>& segment_ids, const std::vector<int>* position_ids) {
  check(!token_ids.empty(), "embed: empty sentence");
  check(token_ids.size() == segment_ids.size(), "embed: token/segment length mismatch");
  std::vector<int> default_positions;
  if (position_ids == nullptr) {
    default_positions.resize(token_ids.size());
    for (std::size_t i = 0; i < token_ids.size(); ++i) default_positions[i] = static_cast<int>(i);
    position_ids = &default_positions;
  }
  check(position_ids->size() == token_ids.size(), "embed: position length mismatch");

  Var e = g.add(g.rows(g.param(p.token), token_ids),
                g.rows(g.param(p.segment), segment_ids));
  e = g.add(e, g.rows(g.param(p.position), *position_ids));
  e = g.layer_norm(e, g.param(p.ln_gamma), g.param(p.ln_beta));
  return g.dropout(e, p.dropout_rate);
}

TransformerLayerParams TransformerLayerParams::init(int layer_index, int d_c, int heads,
                                                    int d_ff, Rng& rng) {
  check(heads >= 1 && d_c % heads == 0, "transformer: d_c must be divisible by heads");
  const std::string base = "layer" + std::to_string(layer_index) + ".";
  TransformerLayerParams p;
  p.heads = heads;
  p.wq = weight(base + "attn.wq", d_c, d_c, rng);
  p.bq = zeros(base + "attn.bq", 1, d_c);
  p.wk = weight(base + "attn.wk", d_c, d_c, rng);
  p.bk = zeros(base + "attn.bk", 1, d_c);
  p.wv = weight(base + "attn.wv", d_c, d_c, rng);
  p.bv = zeros(base + "attn.bv", 1, d_c);
  p.wo = weight(base + "attn.wo", d_c, d_c, rng);
  p.bo = zeros(base + "attn.bo", 1, d_c);
  p.ffn_w1 = weight(base + "ffn.w1", d_ff, d_c, rng);
  p.ffn_b1 = zeros(base + "ffn.b1", 1, d_ff);
  p.ffn_w2 = weight(base + "ffn.w2", d_c, d_ff, rng);
  p.ffn_b2 = zeros(base + "ffn.b2", 1, d_c);
  p.ln1_gamma = ones(base + "ln1_gamma", d_c);
  p.ln1_beta = zeros(base + "ln1_beta", 1, d_c);
  p.ln2_gamma = ones(base + "ln2_gamma", d_c);
  p.ln2_beta = zeros(base + "ln2_beta", 1, d_c);
  return p;
}

std::vector<Param*> TransformerLayerParams::params() {
  return {&wq, &bq, &wk, &bk, &wv, &bv, &wo, &bo,
          &ffn_w1, &ffn_b1, &ffn_w2, &ffn_b2,
          &ln1_gamma, &ln1_beta, &ln2_gamma, &ln2_beta};
}

Var multi_head_attention(Graph& g, TransformerLayerParams& p, Var h) {
  const int n = g.value(h).rows();
  const int d = g.value(h).cols();
  const int dh = d / p.heads;
  Var q = linear(g, h, p.wq, p.bq);
  Var k = linear(g, h, p.wk, p.bk);
  Var v = linear(g, h, p.wv, p.bv);
  std::vector<Var> contexts;
  contexts.reserve(p.heads);
  for (int head = 0; head < p.heads; ++head) {
    const int c0 = head * dh, c1 = (head + 1) * dh;
    Var qh = g.slice(q, 0, n, c0, c1);
    Var kh = g.slice(k, 0, n, c0, c1);
    Var vh = g.slice(v, 0, n, c0, c1);
    Var scores = g.scale(g.matmul(qh, g.transpose(kh)), 1.0 / std::sqrt(double(dh)));
    Var attn = g.softmax_rows(scores);
    contexts.push_back(g.matmul(attn, vh));
  }
  Var cat = p.heads == 1 ? contexts[0] : g.concat_cols(contexts);
  return linear(g, cat, p.wo, p.bo);
}

Var transformer_layer(Graph& g, TransformerLayerParams& p, Var h) {
  Var attn = multi_head_attention(g, p, h);
  Var mid = g.layer_norm(g.add(h, attn), g.param(p.ln1_gamma), g.param(p.ln1_beta));
  Var ffn = linear(g, g.relu(linear(g, mid, p.ffn_w1, p.ffn_b1)), p.ffn_w2, p.ffn_b2);
  return g.layer_norm(g.add(mid, ffn), g.param(p.ln2_gamma), g.param(p.ln2_beta));
}

}  // namespace lexseq
