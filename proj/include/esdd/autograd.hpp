// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_AUTOGRAD_HPP
#define ESDD_AUTOGRAD_HPP

#include <Eigen/Dense>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace esdd::ag {

using Mat = Eigen::MatrixXd;

// Named trainable array. Gradients accumulate across backward passes until
// zero_grad() is called, which is what allows mini-batch averaging by
// accumulating per-sample contributions.
struct Parameter {
  std::string name;
  Mat value;
  Mat grad;

  int size() const { return static_cast<int>(value.size()); }
  void zero_grad() { grad.setZero(); }
};

// Ordered collection of parameters; iteration order is the registration
// order, which keeps optimizers and checkpoints deterministic.
class ParamStore {
 public:
  Parameter& add(const std::string& name, int rows, int cols);
  Parameter& at(const std::string& name);
  const Parameter& at(const std::string& name) const;
  bool has(const std::string& name) const;

  std::vector<Parameter*> all();
  std::vector<const Parameter*> all() const;
  // Parameters whose name starts with `prefix` (e.g. "encoder.").
  std::vector<Parameter*> group(const std::string& prefix);

  void zero_grad();
  long total_size() const;

 private:
  std::deque<Parameter> params_;  // stable addresses
  std::map<std::string, Parameter*> by_name_;
};

// Handle to a node in a Graph.
struct Var {
  int i = -1;
  bool valid() const { return i >= 0; }
};

// Dynamic reverse-mode tape over matrices. One Graph holds one forward pass;
// creation order is topological order, so backward() is a reverse sweep.
// Construct with grad_enabled = false for inference-only forwards (skips
// closure allocation).
class Graph {
 public:
  explicit Graph(bool grad_enabled = true) : grad_enabled_(grad_enabled) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  bool grad_enabled() const { return grad_enabled_; }

  Var input(Mat v);                // constant leaf
  Var param(Parameter& p);         // trainable leaf; backward() adds to p.grad
  const Mat& value(Var v) const;
  // Gradient of the last backward() target w.r.t. node v (zeros if unused).
  Mat grad_of(Var v) const;

  // Runs reverse-mode accumulation from a 1x1 scalar node.
  void backward(Var scalar);

  // --- ops -----------------------------------------------------------------
  Var matmul(Var a, Var b);
  Var add(Var a, Var b);                 // same shape
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);                 // elementwise
  Var scale(Var a, double s);
  Var mul_scalar(Var a, Var s);          // s is 1x1
  Var add_rowvec(Var a, Var r);          // r is 1xC, broadcast over rows
  Var relu(Var a);
  Var gelu(Var a);                       // exact erf form
  Var softmax_rows(Var a);
  Var log_softmax_rows(Var a);
  Var layer_norm(Var a, Var gamma, Var beta, double eps = 1e-5);  // per row
  Var transpose(Var a);
  Var slice_rows(Var a, int r0, int n);
  Var slice_cols(Var a, int c0, int n);
  Var concat_rows(const std::vector<Var>& parts);
  Var concat_cols(const std::vector<Var>& parts);
  Var sum_all(Var a);    // 1x1
  Var mean_all(Var a);   // 1x1
  Var mean_rows(Var a);  // 1xC, mean over rows
  Var max_rows(Var a);   // 1xC, max over rows (grad routed to first argmax)

  // 2D convolution over a multi-channel image stored as (channels x H*W)
  // with row-major pixels. weight is (out_ch x in_ch*kh*kw), bias is
  // (out_ch x 1). Output is (out_ch x oh*ow) with
  // oh = (h + 2*pad - kh)/stride + 1 (floor), likewise ow.
  Var conv2d(Var img, Var weight, Var bias, int h, int w, int kh, int kw,
             int stride, int pad);

  // y = x * W + b with W, b taken from parameters (b may be null).
  Var linear(Var x, Parameter& weight, Parameter* bias);

 private:
  struct Node {
    Mat value;
    Mat grad;
    bool grad_ready = false;
    std::function<void()> back;
  };

  std::deque<Node> nodes_;  // stable references for closures
  bool grad_enabled_;

  Var push(Mat value);
  void set_back(Var v, std::function<void()> fn);
  void accumulate(int i, const Mat& g);
  Node& node(Var v);
  const Node& node(Var v) const;

  friend struct GraphTestAccess;
};

}  // namespace esdd::ag

#endif  // ESDD_AUTOGRAD_HPP
