#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexseq/param.hpp"
#include "lexseq/rng.hpp"
#include "lexseq/tensor.hpp"

namespace lexseq {

// Handle to a node in a Graph. Cheap to copy; only valid for the graph that
// produced it.
struct Var {
  int id = -1;
};

// Reverse-mode autodiff over a tape of tensor ops. A graph is built by one
// thread for one computation (a sentence or a batch), backward() is called
// once, and gradients land in the bound Params. Every op validates shapes
// and rejects non-finite outputs.
class Graph {
 public:
  explicit Graph(bool training = false, Rng* rng = nullptr)
      : training_(training), rng_(rng) {}

  // Leaves.
  Var leaf(Tensor value);
  Var param(Param& p);  // cached: repeated calls return the same node
  Var zeros(int rows, int cols) { return leaf(Tensor(rows, cols)); }

  // Elementwise and linear algebra.
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var scale(Var a, double c);
  Var matmul(Var a, Var b);
  Var transpose(Var a);
  Var add_row_broadcast(Var m, Var row);  // row [1xc] added to every row of m
  Var add_col_broadcast(Var m, Var col);  // col [rx1] added to every column of m

  // Nonlinearities and normalization.
  Var tanh(Var a);
  Var relu(Var a);
  Var softmax_rows(Var a);
  // mask has one entry per element of a, true = participates. Masked entries
  // are exact zeros in the output (the -inf logit limit). Rows with no
  // unmasked entry are an error.
  Var softmax_rows(Var a, const std::vector<std::uint8_t>& mask);
  Var layer_norm(Var x, Var gamma, Var beta, double eps = 1e-12);
  // Inverted dropout: train scales kept entries by 1/(1-rate), eval is the
  // identity (returns x unchanged, no node).
  Var dropout(Var x, double rate);

  // Structure.
  Var rows(Var table, std::vector<int> ids);  // gather; scatter-add backward
  Var slice(Var a, int r0, int r1, int c0, int c1);
  Var concat_rows(const std::vector<Var>& parts);
  Var concat_cols(const std::vector<Var>& parts);
  Var logsumexp_cols(Var a);  // [rxc] -> [1xc], reduces over rows
  Var sum(Var a);             // [rxc] -> [1x1]
  Var pick(Var a, std::vector<std::pair<int, int>> coords);  // -> [1xk]

  const Tensor& value(Var v) const { return node(v.id).value; }
  double scalar(Var v) const;

  // Seeds d(loss)/d(loss)=1, sweeps the tape in reverse creation order, and
  // accumulates leaf gradients into their bound Params (+=). One call per
  // graph.
  void backward(Var loss);
  const Tensor& grad(Var v) const { return node(v.id).grad; }

  bool training() const { return training_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::function<void(Graph&, int)> backward;
    Param* bound = nullptr;
  };

  int push(Tensor value, std::function<void(Graph&, int)> back, const char* op);
  Node& node(int id);
  const Node& node(int id) const;

  std::vector<Node> nodes_;
  std::unordered_map<const Param*, int> param_nodes_;
  bool training_ = false;
  Rng* rng_ = nullptr;
  bool backward_done_ = false;
};

// y = x * W^T + b with W stored [out x in] and b [1 x out].
Var linear(Graph& g, Var x, Param& w, Param& b);

}  // namespace lexseq
