#pragma once

#include <vector>

#include "lexseq/graph.hpp"
#include "lexseq/param.hpp"
#include "lexseq/rng.hpp"

namespace lexseq {

// Token + segment + position embedding, followed by layer norm and dropout.
struct EmbedderParams {
  Param token;     // [V x d_c]
  Param position;  // [max_len x d_c]
  Param segment;   // [2 x d_c]
  Param ln_gamma;
  Param ln_beta;
  double dropout_rate = 0.1;

  static EmbedderParams init(int vocab, int max_len, int d_c, double dropout_rate,
                             Rng& rng);
  std::vector<Param*> params();
};

// Position ids default to 0..n-1 when not supplied.
Var embed(Graph& g, EmbedderParams& p, const std::vector<int>& token_ids,
          const std::vector<int>& segment_ids,
          const std::vector<int>* position_ids = nullptr);

// One post-norm transformer layer: G = LN(H + MHAttn(H)), out = LN(G + FFN(G)),
// FFN two layers with ReLU, attention scores scaled by 1/sqrt(d_head),
// bidirectional (no causal mask).
struct TransformerLayerParams {
  int heads = 4;
  Param wq, bq, wk, bk, wv, bv, wo, bo;  // projections, [d_c x d_c] / [1 x d_c]
  Param ffn_w1, ffn_b1;                  // [d_ff x d_c], [1 x d_ff]
  Param ffn_w2, ffn_b2;                  // [d_c x d_ff], [1 x d_c]
  Param ln1_gamma, ln1_beta, ln2_gamma, ln2_beta;

  static TransformerLayerParams init(int layer_index, int d_c, int heads, int d_ff,
                                     Rng& rng);
  std::vector<Param*> params();
};

Var multi_head_attention(Graph& g, TransformerLayerParams& p, Var h);
Var transformer_layer(Graph& g, TransformerLayerParams& p, Var h);

}  // namespace lexseq
