#include "lexseq/graph.hpp"

#include <cmath>
#include <limits>

#include "lexseq/check.hpp"

namespace lexseq {

namespace {

void check_shape(bool ok, const char* op, const Tensor& a, const Tensor& b) {
  check(ok, std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}

}  // namespace

Graph::Node& Graph::node(int id) {
  check(id >= 0 && id < static_cast<int>(nodes_.size()), "graph: invalid node id");
  return nodes_[id];
}

const Graph::Node& Graph::node(int id) const {
  check(id >= 0 && id < static_cast<int>(nodes_.size()), "graph: invalid node id");
  return nodes_[id];
}

int Graph::push(Tensor value, std::function<void(Graph&, int)> back, const char* op) {
  check(value.numel() > 0, std::string(op) + ": empty result");
  check(value.all_finite(), std::string(op) + ": non-finite values produced");
  Node n;
  n.value = std::move(value);
  n.backward = std::move(back);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

Var Graph::leaf(Tensor value) {
  return Var{push(std::move(value), nullptr, "leaf")};
}

Var Graph::param(Param& p) {
  auto it = param_nodes_.find(&p);
  if (it != param_nodes_.end()) return Var{it->second};
  int id = push(p.value, nullptr, "param");
  nodes_[id].bound = &p;
  param_nodes_.emplace(&p, id);
  return Var{id};
}

double Graph::scalar(Var v) const {
  const Tensor& t = value(v);
  check(t.numel() == 1, "scalar: tensor has shape " + t.shape_str());
  return t.data[0];
}

Var Graph::add(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  check_shape(x.same_shape(y), "add", x, y);
  Tensor out = x;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += y.data[i];
  int pa = a.id, pb = b.id;
  return Var{push(std::move(out), [pa, pb](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& da = g.node(pa).grad;
    Tensor& db = g.node(pb).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i) {
      da.data[i] += gr.data[i];
      db.data[i] += gr.data[i];
    }
  }, "add")};
}

Var Graph::sub(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  check_shape(x.same_shape(y), "sub", x, y);
  Tensor out = x;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= y.data[i];
  int pa = a.id, pb = b.id;
  return Var{push(std::move(out), [pa, pb](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& da = g.node(pa).grad;
    Tensor& db = g.node(pb).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i) {
      da.data[i] += gr.data[i];
      db.data[i] -= gr.data[i];
    }
  }, "sub")};
}

Var Graph::mul(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  check_shape(x.same_shape(y), "mul", x, y);
  Tensor out = x;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= y.data[i];
  int pa = a.id, pb = b.id;
  return Var{push(std::move(out), [pa, pb](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& x2 = g.node(pa).value;
    const Tensor& y2 = g.node(pb).value;
    Tensor& da = g.node(pa).grad;
    Tensor& db = g.node(pb).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i) {
      da.data[i] += gr.data[i] * y2.data[i];
      db.data[i] += gr.data[i] * x2.data[i];
    }
  }, "mul")};
}

Var Graph::scale(Var a, double c) {
  Tensor out = value(a);
  for (double& v : out.data) v *= c;
  int pa = a.id;
  return Var{push(std::move(out), [pa, c](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& da = g.node(pa).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i) da.data[i] += c * gr.data[i];
  }, "scale")};
}

Var Graph::matmul(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  check(x.cols() == y.rows(), "matmul: inner extents differ, " + x.shape_str() +
                                  " x " + y.shape_str());
  const int m = x.rows(), k = x.cols(), n = y.cols();
  Tensor out(m, n);
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      const double xv = x.at(i, p);
      if (xv == 0.0) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) += xv * y.at(p, j);
    }
  }
  int pa = a.id, pb = b.id;
  return Var{push(std::move(out), [pa, pb](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& x2 = g.node(pa).value;
    const Tensor& y2 = g.node(pb).value;
    Tensor& da = g.node(pa).grad;
    Tensor& db = g.node(pb).grad;
    const int m = x2.rows(), k = x2.cols(), n = y2.cols();
    // dA += G * B^T
    for (int i = 0; i < m; ++i)
      for (int p = 0; p < k; ++p) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += gr.at(i, j) * y2.at(p, j);
        da.at(i, p) += acc;
      }
    // dB += A^T * G
    for (int p = 0; p < k; ++p)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += x2.at(i, p) * gr.at(i, j);
        db.at(p, j) += acc;
      }
  }, "matmul")};
}

Var Graph::transpose(Var a) {
  const Tensor& x = value(a);
  Tensor out(x.cols(), x.rows());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out.at(j, i) = x.at(i, j);
  int pa = a.id;
  return Var{push(std::move(out), [pa](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& da = g.node(pa).grad;
    for (int i = 0; i < gr.rows(); ++i)
      for (int j = 0; j < gr.cols(); ++j) da.at(j, i) += gr.at(i, j);
  }, "transpose")};
}

Var Graph::add_row_broadcast(Var m, Var row) {
  const Tensor& x = value(m);
  const Tensor& v = value(row);
  check(v.rows() == 1 && v.cols() == x.cols(),
        "add_row_broadcast: want [1x" + std::to_string(x.cols()) + "], got " + v.shape_str());
  Tensor out = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out.at(i, j) += v.at(0, j);
  int pm = m.id, pv = row.id;
  return Var{push(std::move(out), [pm, pv](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& dm = g.node(pm).grad;
    Tensor& dv = g.node(pv).grad;
    for (int i = 0; i < gr.rows(); ++i)
      for (int j = 0; j < gr.cols(); ++j) {
        dm.at(i, j) += gr.at(i, j);
        dv.at(0, j) += gr.at(i, j);
      }
  }, "add_row_broadcast")};
}

Var Graph::add_col_broadcast(Var m, Var col) {
  const Tensor& x = value(m);
  const Tensor& v = value(col);
  check(v.cols() == 1 && v.rows() == x.rows(),
        "add_col_broadcast: want [" + std::to_string(x.rows()) + "x1], got " + v.shape_str());
  Tensor out = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out.at(i, j) += v.at(i, 0);
  int pm = m.id, pv = col.id;
  return Var{push(std::move(out), [pm, pv](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& dm = g.node(pm).grad;
    Tensor& dv = g.node(pv).grad;
    for (int i = 0; i < gr.rows(); ++i)
      for (int j = 0; j < gr.cols(); ++j) {
        dm.at(i, j) += gr.at(i, j);
        dv.at(i, 0) += gr.at(i, j);
      }
  }, "add_col_broadcast")};
}

Var Graph::tanh(Var a) {
  Tensor out = value(a);
  for (double& v : out.data) v = std::tanh(v);
  int pa = a.id;
  return Var{push(std::move(out), [pa](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& y = g.node(self).value;
    Tensor& da = g.node(pa).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i)
      da.data[i] += gr.data[i] * (1.0 - y.data[i] * y.data[i]);
  }, "tanh")};
}

Var Graph::relu(Var a) {
  Tensor out = value(a);
  for (double& v : out.data) v = v > 0.0 ? v : 0.0;
  int pa = a.id;
  return Var{push(std::move(out), [pa](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& x = g.node(pa).value;
    Tensor& da = g.node(pa).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i)
      if (x.data[i] > 0.0) da.data[i] += gr.data[i];
  }, "relu")};
}

Var Graph::softmax_rows(Var a) {
  return softmax_rows(a, std::vector<std::uint8_t>(value(a).numel(), 1));
}

Var Graph::softmax_rows(Var a, const std::vector<std::uint8_t>& mask) {
  const Tensor& x = value(a);
  check(mask.size() == x.numel(), "softmax: mask size mismatch");
  const int r = x.rows(), c = x.cols();
  Tensor out(r, c);
  for (int i = 0; i < r; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < c; ++j)
      if (mask[static_cast<std::size_t>(i) * c + j] && x.at(i, j) > mx) mx = x.at(i, j);
    check(mx > -std::numeric_limits<double>::infinity(), "softmax: fully masked row");
    double z = 0.0;
    for (int j = 0; j < c; ++j) {
      if (mask[static_cast<std::size_t>(i) * c + j]) {
        out.at(i, j) = std::exp(x.at(i, j) - mx);
        z += out.at(i, j);
      }
    }
    for (int j = 0; j < c; ++j) out.at(i, j) /= z;
  }
  int pa = a.id;
  std::vector<std::uint8_t> m = mask;
  return Var{push(std::move(out), [pa, m = std::move(m)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& s = g.node(self).value;
    Tensor& da = g.node(pa).grad;
    const int r = s.rows(), c = s.cols();
    for (int i = 0; i < r; ++i) {
      double dot = 0.0;
      for (int j = 0; j < c; ++j) dot += gr.at(i, j) * s.at(i, j);
      for (int j = 0; j < c; ++j)
        if (m[static_cast<std::size_t>(i) * c + j])
          da.at(i, j) += s.at(i, j) * (gr.at(i, j) - dot);
    }
  }, "softmax")};
}

Var Graph::layer_norm(Var x, Var gamma, Var beta, double eps) {
  const Tensor& in = value(x);
  const Tensor& gm = value(gamma);
  const Tensor& bt = value(beta);
  const int r = in.rows(), d = in.cols();
  check(gm.rows() == 1 && gm.cols() == d, "layer_norm: gamma must be [1x" + std::to_string(d) + "]");
  check(bt.rows() == 1 && bt.cols() == d, "layer_norm: beta must be [1x" + std::to_string(d) + "]");
  Tensor out(r, d);
  Tensor xhat(r, d);
  std::vector<double> inv_std(r);
  for (int i = 0; i < r; ++i) {
    double mean = 0.0;
    for (int j = 0; j < d; ++j) mean += in.at(i, j);
    mean /= d;
    double var = 0.0;
    for (int j = 0; j < d; ++j) {
      double dlt = in.at(i, j) - mean;
      var += dlt * dlt;
    }
    var /= d;
    inv_std[i] = 1.0 / std::sqrt(var + eps);
    for (int j = 0; j < d; ++j) {
      xhat.at(i, j) = (in.at(i, j) - mean) * inv_std[i];
      out.at(i, j) = gm.at(0, j) * xhat.at(i, j) + bt.at(0, j);
    }
  }
  int px = x.id, pg = gamma.id, pb = beta.id;
  return Var{push(std::move(out),
                  [px, pg, pb, xhat = std::move(xhat), inv_std = std::move(inv_std)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& gm2 = g.node(pg).value;
    Tensor& dx = g.node(px).grad;
    Tensor& dg = g.node(pg).grad;
    Tensor& db = g.node(pb).grad;
    const int r = gr.rows(), d = gr.cols();
    for (int i = 0; i < r; ++i) {
      double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
      for (int j = 0; j < d; ++j) {
        const double dxhat = gr.at(i, j) * gm2.at(0, j);
        mean_dxhat += dxhat;
        mean_dxhat_xhat += dxhat * xhat.at(i, j);
        dg.at(0, j) += gr.at(i, j) * xhat.at(i, j);
        db.at(0, j) += gr.at(i, j);
      }
      mean_dxhat /= d;
      mean_dxhat_xhat /= d;
      for (int j = 0; j < d; ++j) {
        const double dxhat = gr.at(i, j) * gm2.at(0, j);
        dx.at(i, j) += inv_std[i] * (dxhat - mean_dxhat - xhat.at(i, j) * mean_dxhat_xhat);
      }
    }
  }, "layer_norm")};
}

Var Graph::dropout(Var x, double rate) {
  check(rate >= 0.0 && rate < 1.0, "dropout: rate must be in [0,1)");
  if (!training_ || rate == 0.0) return x;
  check(rng_ != nullptr, "dropout: training graph needs an rng");
  const Tensor& in = value(x);
  const double keep_scale = 1.0 / (1.0 - rate);
  std::vector<double> factor(in.numel());
  for (double& f : factor) f = rng_->bernoulli(rate) ? 0.0 : keep_scale;
  Tensor out = in;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= factor[i];
  int px = x.id;
  return Var{push(std::move(out), [px, factor = std::move(factor)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& dx = g.node(px).grad;
    for (std::size_t i = 0; i < gr.data.size(); ++i) dx.data[i] += gr.data[i] * factor[i];
  }, "dropout")};
}

Var Graph::rows(Var table, std::vector<int> ids) {
  const Tensor& t = value(table);
  check(!ids.empty(), "rows: empty id list");
  for (int id : ids)
    check(id >= 0 && id < t.rows(),
          "rows: id " + std::to_string(id) + " out of range [0," + std::to_string(t.rows()) + ")");
  const int d = t.cols();
  Tensor out(static_cast<int>(ids.size()), d);
  for (std::size_t k = 0; k < ids.size(); ++k)
    for (int j = 0; j < d; ++j) out.at(static_cast<int>(k), j) = t.at(ids[k], j);
  int pt = table.id;
  return Var{push(std::move(out), [pt, ids = std::move(ids)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& dt = g.node(pt).grad;
    const int d = gr.cols();
    for (std::size_t k = 0; k < ids.size(); ++k)
      for (int j = 0; j < d; ++j) dt.at(ids[k], j) += gr.at(static_cast<int>(k), j);
  }, "rows")};
}

Var Graph::slice(Var a, int r0, int r1, int c0, int c1) {
  const Tensor& x = value(a);
  check(0 <= r0 && r0 < r1 && r1 <= x.rows() && 0 <= c0 && c0 < c1 && c1 <= x.cols(),
        "slice: bounds out of range for " + x.shape_str());
  Tensor out(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) out.at(i - r0, j - c0) = x.at(i, j);
  int pa = a.id;
  return Var{push(std::move(out), [pa, r0, c0](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& da = g.node(pa).grad;
    for (int i = 0; i < gr.rows(); ++i)
      for (int j = 0; j < gr.cols(); ++j) da.at(i + r0, j + c0) += gr.at(i, j);
  }, "slice")};
}

Var Graph::concat_rows(const std::vector<Var>& parts) {
  check(!parts.empty(), "concat_rows: no parts");
  const int c = value(parts[0]).cols();
  int r = 0;
  for (Var p : parts) {
    check(value(p).cols() == c, "concat_rows: column mismatch");
    r += value(p).rows();
  }
  Tensor out(r, c);
  int off = 0;
  std::vector<int> ids;
  std::vector<int> offsets;
  for (Var p : parts) {
    const Tensor& t = value(p);
    ids.push_back(p.id);
    offsets.push_back(off);
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < c; ++j) out.at(off + i, j) = t.at(i, j);
    off += t.rows();
  }
  return Var{push(std::move(out), [ids = std::move(ids), offsets = std::move(offsets)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Tensor& dp = g.node(ids[k]).grad;
      for (int i = 0; i < dp.rows(); ++i)
        for (int j = 0; j < dp.cols(); ++j) dp.at(i, j) += gr.at(offsets[k] + i, j);
    }
  }, "concat_rows")};
}

Var Graph::concat_cols(const std::vector<Var>& parts) {
  check(!parts.empty(), "concat_cols: no parts");
  const int r = value(parts[0]).rows();
  int c = 0;
  for (Var p : parts) {
    check(value(p).rows() == r, "concat_cols: row mismatch");
    c += value(p).cols();
  }
  Tensor out(r, c);
  int off = 0;
  std::vector<int> ids;
  std::vector<int> offsets;
  for (Var p : parts) {
    const Tensor& t = value(p);
    ids.push_back(p.id);
    offsets.push_back(off);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < t.cols(); ++j) out.at(i, off + j) = t.at(i, j);
    off += t.cols();
  }
  return Var{push(std::move(out), [ids = std::move(ids), offsets = std::move(offsets)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Tensor& dp = g.node(ids[k]).grad;
      for (int i = 0; i < dp.rows(); ++i)
        for (int j = 0; j < dp.cols(); ++j) dp.at(i, j) += gr.at(i, offsets[k] + j);
    }
  }, "concat_cols")};
}

Var Graph::logsumexp_cols(Var a) {
  const Tensor& x = value(a);
  const int r = x.rows(), c = x.cols();
  Tensor out(1, c);
  for (int j = 0; j < c; ++j) {
    double mx = x.at(0, j);
    for (int i = 1; i < r; ++i) mx = std::max(mx, x.at(i, j));
    double z = 0.0;
    for (int i = 0; i < r; ++i) z += std::exp(x.at(i, j) - mx);
    out.at(0, j) = mx + std::log(z);
  }
  int pa = a.id;
  return Var{push(std::move(out), [pa](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    const Tensor& y = g.node(self).value;
    const Tensor& x2 = g.node(pa).value;
    Tensor& da = g.node(pa).grad;
    for (int i = 0; i < x2.rows(); ++i)
      for (int j = 0; j < x2.cols(); ++j)
        da.at(i, j) += gr.at(0, j) * std::exp(x2.at(i, j) - y.at(0, j));
  }, "logsumexp_cols")};
}

Var Graph::sum(Var a) {
  const Tensor& x = value(a);
  Tensor out(1, 1);
  for (double v : x.data) out.data[0] += v;
  int pa = a.id;
  return Var{push(std::move(out), [pa](Graph& g, int self) {
    const double gr = g.node(self).grad.data[0];
    Tensor& da = g.node(pa).grad;
    for (double& v : da.data) v += gr;
  }, "sum")};
}

Var Graph::pick(Var a, std::vector<std::pair<int, int>> coords) {
  const Tensor& x = value(a);
  check(!coords.empty(), "pick: empty coordinate list");
  Tensor out(1, static_cast<int>(coords.size()));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    auto [i, j] = coords[k];
    check(i >= 0 && i < x.rows() && j >= 0 && j < x.cols(), "pick: coordinate out of range");
    out.at(0, static_cast<int>(k)) = x.at(i, j);
  }
  int pa = a.id;
  return Var{push(std::move(out), [pa, coords = std::move(coords)](Graph& g, int self) {
    const Tensor& gr = g.node(self).grad;
    Tensor& da = g.node(pa).grad;
    for (std::size_t k = 0; k < coords.size(); ++k)
      da.at(coords[k].first, coords[k].second) += gr.at(0, static_cast<int>(k));
  }, "pick")};
}

void Graph::backward(Var loss) {
  check(!backward_done_, "backward: graph already swept");
  const Tensor& lt = value(loss);
  check(lt.numel() == 1, "backward: loss must be scalar, got " + lt.shape_str());
  for (Node& n : nodes_) n.grad = Tensor(n.value.rows(), n.value.cols());
  nodes_[loss.id].grad.data[0] = 1.0;
  for (int id = loss.id; id >= 0; --id) {
    if (nodes_[id].backward) nodes_[id].backward(*this, id);
  }
  for (Node& n : nodes_) {
    if (n.bound != nullptr && !n.bound->frozen) {
      n.bound->ensure_grad();
      for (std::size_t i = 0; i < n.grad.data.size(); ++i)
        n.bound->grad.data[i] += n.grad.data[i];
    }
  }
  backward_done_ = true;
}

Var linear(Graph& g, Var x, Param& w, Param& b) {
  return g.add_row_broadcast(g.matmul(x, g.transpose(g.param(w))), g.param(b));
}

}  // namespace lexseq
