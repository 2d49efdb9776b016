// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/autograd.hpp"

#include <cmath>
#include <stdexcept>

namespace esdd::ag {

// ----------------------------------------------------------------- ParamStore

Parameter& ParamStore::add(const std::string& name, int rows, int cols) {
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate parameter name: " + name);
  params_.push_back(Parameter{name, Mat::Zero(rows, cols), Mat::Zero(rows, cols)});
  Parameter& p = params_.back();
  by_name_[name] = &p;
  return p;
}

Parameter& ParamStore::at(const std::string& name) {
  auto it = by_name_.find(name);
  if (it == by_name_.end())
    throw std::invalid_argument("unknown parameter: " + name);
  return *it->second;
}

const Parameter& ParamStore::at(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end())
    throw std::invalid_argument("unknown parameter: " + name);
  return *it->second;
}

bool ParamStore::has(const std::string& name) const {
  return by_name_.count(name) > 0;
}

std::vector<Parameter*> ParamStore::all() {
  std::vector<Parameter*> out;
  out.reserve(params_.size());
  for (auto& p : params_) out.push_back(&p);
  return out;
}

std::vector<const Parameter*> ParamStore::all() const {
  std::vector<const Parameter*> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(&p);
  return out;
}

std::vector<Parameter*> ParamStore::group(const std::string& prefix) {
  std::vector<Parameter*> out;
  for (auto& p : params_)
    if (p.name.rfind(prefix, 0) == 0) out.push_back(&p);
  return out;
}

void ParamStore::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

long ParamStore::total_size() const {
  long n = 0;
  for (const auto& p : params_) n += p.size();
  return n;
}

// ---------------------------------------------------------------------- Graph

Var Graph::push(Mat value) {
  nodes_.push_back(Node{std::move(value), Mat(), false, nullptr});
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Graph::set_back(Var v, std::function<void()> fn) {
  if (grad_enabled_) nodes_[v.i].back = std::move(fn);
}

Graph::Node& Graph::node(Var v) {
  if (!v.valid() || v.i >= static_cast<int>(nodes_.size()))
    throw std::invalid_argument("invalid graph node handle");
  return nodes_[v.i];
}

const Graph::Node& Graph::node(Var v) const {
  if (!v.valid() || v.i >= static_cast<int>(nodes_.size()))
    throw std::invalid_argument("invalid graph node handle");
  return nodes_[v.i];
}

void Graph::accumulate(int i, const Mat& g) {
  Node& n = nodes_[i];
  if (!n.grad_ready) {
    n.grad = g;
    n.grad_ready = true;
  } else {
    n.grad += g;
  }
}

const Mat& Graph::value(Var v) const { return node(v).value; }

Mat Graph::grad_of(Var v) const {
  const Node& n = node(v);
  if (!n.grad_ready) return Mat::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void Graph::backward(Var scalar) {
  if (!grad_enabled_)
    throw std::logic_error("backward() on a grad-disabled graph");
  Node& s = node(scalar);
  if (s.value.rows() != 1 || s.value.cols() != 1)
    throw std::invalid_argument("backward() target must be 1x1");
  accumulate(scalar.i, Mat::Ones(1, 1));
  for (int i = scalar.i; i >= 0; --i) {
    Node& n = nodes_[i];
    if (n.grad_ready && n.back) n.back();
  }
}

Var Graph::input(Mat v) { return push(std::move(v)); }

Var Graph::param(Parameter& p) {
  Var v = push(p.value);
  Parameter* pp = &p;
  set_back(v, [this, v, pp] { pp->grad += nodes_[v.i].grad; });
  return v;
}

Var Graph::matmul(Var a, Var b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.cols() != B.rows())
    throw std::invalid_argument("matmul: inner dimensions differ");
  Var out = push(A * B);
  set_back(out, [this, a, b, out] {
    const Mat& G = nodes_[out.i].grad;
    accumulate(a.i, G * nodes_[b.i].value.transpose());
    accumulate(b.i, nodes_[a.i].value.transpose() * G);
  });
  return out;
}

Var Graph::add(Var a, Var b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("add: shape mismatch");
  Var out = push(A + B);
  set_back(out, [this, a, b, out] {
    const Mat& G = nodes_[out.i].grad;
    accumulate(a.i, G);
    accumulate(b.i, G);
  });
  return out;
}

Var Graph::sub(Var a, Var b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("sub: shape mismatch");
  Var out = push(A - B);
  set_back(out, [this, a, b, out] {
    const Mat& G = nodes_[out.i].grad;
    accumulate(a.i, G);
    accumulate(b.i, -G);
  });
  return out;
}

Var Graph::mul(Var a, Var b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("mul: shape mismatch");
  Var out = push(A.cwiseProduct(B));
  set_back(out, [this, a, b, out] {
    const Mat& G = nodes_[out.i].grad;
    accumulate(a.i, G.cwiseProduct(nodes_[b.i].value));
    accumulate(b.i, G.cwiseProduct(nodes_[a.i].value));
  });
  return out;
}

Var Graph::scale(Var a, double s) {
  Var out = push(value(a) * s);
  set_back(out, [this, a, out, s] { accumulate(a.i, nodes_[out.i].grad * s); });
  return out;
}

Var Graph::mul_scalar(Var a, Var s) {
  const Mat& S = value(s);
  if (S.rows() != 1 || S.cols() != 1)
    throw std::invalid_argument("mul_scalar: scalar operand must be 1x1");
  double sv = S(0, 0);
  Var out = push(value(a) * sv);
  set_back(out, [this, a, s, out] {
    const Mat& G = nodes_[out.i].grad;
    double sv2 = nodes_[s.i].value(0, 0);
    accumulate(a.i, G * sv2);
    Mat ds(1, 1);
    ds(0, 0) = G.cwiseProduct(nodes_[a.i].value).sum();
    accumulate(s.i, ds);
  });
  return out;
}

Var Graph::add_rowvec(Var a, Var r) {
  const Mat& A = value(a);
  const Mat& R = value(r);
  if (R.rows() != 1 || R.cols() != A.cols())
    throw std::invalid_argument("add_rowvec: bias must be 1 x cols(a)");
  Mat v = A;
  v.rowwise() += R.row(0);
  Var out = push(std::move(v));
  set_back(out, [this, a, r, out] {
    const Mat& G = nodes_[out.i].grad;
    accumulate(a.i, G);
    accumulate(r.i, G.colwise().sum());
  });
  return out;
}

Var Graph::relu(Var a) {
  const Mat& A = value(a);
  Var out = push(A.cwiseMax(0.0));
  set_back(out, [this, a, out] {
    const Mat& G = nodes_[out.i].grad;
    const Mat& A2 = nodes_[a.i].value;
    accumulate(a.i, (A2.array() > 0.0).cast<double>().matrix().cwiseProduct(G));
  });
  return out;
}

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
inline double gelu_fwd(double x) {
  return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2));
}
inline double gelu_bwd(double x) {
  double cdf = 0.5 * (1.0 + std::erf(x * kInvSqrt2));
  double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  return cdf + x * pdf;
}
}  // namespace

Var Graph::gelu(Var a) {
  const Mat& A = value(a);
  Var out = push(A.unaryExpr([](double x) { return gelu_fwd(x); }));
  set_back(out, [this, a, out] {
    const Mat& G = nodes_[out.i].grad;
    const Mat& A2 = nodes_[a.i].value;
    accumulate(a.i, A2.unaryExpr([](double x) { return gelu_bwd(x); })
                        .cwiseProduct(G));
  });
  return out;
}

Var Graph::softmax_rows(Var a) {
  const Mat& A = value(a);
  Mat y(A.rows(), A.cols());
  for (int r = 0; r < A.rows(); ++r) {
    double mx = A.row(r).maxCoeff();
    Eigen::ArrayXd e = (A.row(r).array() - mx).exp();
    y.row(r) = (e / e.sum()).matrix();
  }
  Var out = push(std::move(y));
  set_back(out, [this, a, out] {
    const Mat& G = nodes_[out.i].grad;
    const Mat& Y = nodes_[out.i].value;
    Mat dx(Y.rows(), Y.cols());
    for (int r = 0; r < Y.rows(); ++r) {
      double dot = G.row(r).dot(Y.row(r));
      dx.row(r) = Y.row(r).cwiseProduct(G.row(r) - Mat::Constant(1, Y.cols(), dot));
    }
    accumulate(a.i, dx);
  });
  return out;
}

Var Graph::log_softmax_rows(Var a) {
  const Mat& A = value(a);
  Mat y(A.rows(), A.cols());
  for (int r = 0; r < A.rows(); ++r) {
    double mx = A.row(r).maxCoeff();
    double lse = std::log((A.row(r).array() - mx).exp().sum()) + mx;
    y.row(r) = A.row(r).array() - lse;
  }
  Var out = push(std::move(y));
  set_back(out, [this, a, out] {
    const Mat& G = nodes_[out.i].grad;
    const Mat& Y = nodes_[out.i].value;
    Mat dx(Y.rows(), Y.cols());
    for (int r = 0; r < Y.rows(); ++r) {
      double gsum = G.row(r).sum();
      dx.row(r) = G.row(r) - (Y.row(r).array().exp() * gsum).matrix();
    }
    accumulate(a.i, dx);
  });
  return out;
}

Var Graph::layer_norm(Var a, Var gamma, Var beta, double eps) {
  const Mat& A = value(a);
  const Mat& G0 = value(gamma);
  const Mat& B0 = value(beta);
  int cols = static_cast<int>(A.cols());
  if (G0.rows() != 1 || G0.cols() != cols || B0.rows() != 1 ||
      B0.cols() != cols)
    throw std::invalid_argument("layer_norm: gamma/beta must be 1 x cols(a)");

  Mat xhat(A.rows(), cols);
  Eigen::VectorXd inv_std(A.rows());
  for (int r = 0; r < A.rows(); ++r) {
    double mean = A.row(r).mean();
    double var = (A.row(r).array() - mean).square().mean();
    double is = 1.0 / std::sqrt(var + eps);
    inv_std(r) = is;
    xhat.row(r) = (A.row(r).array() - mean) * is;
  }
  Mat y = xhat;
  for (int r = 0; r < y.rows(); ++r)
    y.row(r) = y.row(r).cwiseProduct(G0.row(0)) + B0.row(0);

  Var out = push(std::move(y));
  set_back(out, [this, a, gamma, beta, out, xhat, inv_std] {
    const Mat& G = nodes_[out.i].grad;
    const Mat& gmm = nodes_[gamma.i].value;
    int n = static_cast<int>(xhat.cols());
    Mat dx(xhat.rows(), n);
    for (int r = 0; r < xhat.rows(); ++r) {
      Eigen::RowVectorXd dxhat = G.row(r).cwiseProduct(gmm.row(0));
      double m1 = dxhat.mean();
      double m2 = dxhat.cwiseProduct(xhat.row(r)).mean();
      dx.row(r) =
          inv_std(r) * (dxhat.array() - m1 - xhat.row(r).array() * m2);
    }
    accumulate(a.i, dx);
    accumulate(gamma.i, G.cwiseProduct(xhat).colwise().sum());
    accumulate(beta.i, G.colwise().sum());
  });
  return out;
}

Var Graph::transpose(Var a) {
  Var out = push(value(a).transpose());
  set_back(out, [this, a, out] {
    accumulate(a.i, nodes_[out.i].grad.transpose());
  });
  return out;
}

Var Graph::slice_rows(Var a, int r0, int n) {
  const Mat& A = value(a);
  if (r0 < 0 || n < 0 || r0 + n > A.rows())
    throw std::invalid_argument("slice_rows: range out of bounds");
  Var out = push(A.middleRows(r0, n));
  set_back(out, [this, a, out, r0, n] {
    const Mat& G = nodes_[out.i].grad;
    Mat g = Mat::Zero(nodes_[a.i].value.rows(), nodes_[a.i].value.cols());
    g.middleRows(r0, n) = G;
    accumulate(a.i, g);
  });
  return out;
}

Var Graph::slice_cols(Var a, int c0, int n) {
  const Mat& A = value(a);
  if (c0 < 0 || n < 0 || c0 + n > A.cols())
    throw std::invalid_argument("slice_cols: range out of bounds");
  Var out = push(A.middleCols(c0, n));
  set_back(out, [this, a, out, c0, n] {
    const Mat& G = nodes_[out.i].grad;
    Mat g = Mat::Zero(nodes_[a.i].value.rows(), nodes_[a.i].value.cols());
    g.middleCols(c0, n) = G;
    accumulate(a.i, g);
  });
  return out;
}

Var Graph::concat_rows(const std::vector<Var>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_rows: empty");
  long rows = 0;
  long cols = value(parts[0]).cols();
  for (Var p : parts) {
    if (value(p).cols() != cols)
      throw std::invalid_argument("concat_rows: column mismatch");
    rows += value(p).rows();
  }
  Mat v(rows, cols);
  long r = 0;
  for (Var p : parts) {
    v.middleRows(r, value(p).rows()) = value(p);
    r += value(p).rows();
  }
  Var out = push(std::move(v));
  std::vector<Var> ps = parts;
  set_back(out, [this, ps, out] {
    const Mat& G = nodes_[out.i].grad;
    long r2 = 0;
    for (Var p : ps) {
      long n = nodes_[p.i].value.rows();
      accumulate(p.i, G.middleRows(r2, n));
      r2 += n;
    }
  });
  return out;
}

Var Graph::concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: empty");
  long cols = 0;
  long rows = value(parts[0]).rows();
  for (Var p : parts) {
    if (value(p).rows() != rows)
      throw std::invalid_argument("concat_cols: row mismatch");
    cols += value(p).cols();
  }
  Mat v(rows, cols);
  long c = 0;
  for (Var p : parts) {
    v.middleCols(c, value(p).cols()) = value(p);
    c += value(p).cols();
  }
  Var out = push(std::move(v));
  std::vector<Var> ps = parts;
  set_back(out, [this, ps, out] {
    const Mat& G = nodes_[out.i].grad;
    long c2 = 0;
    for (Var p : ps) {
      long n = nodes_[p.i].value.cols();
      accumulate(p.i, G.middleCols(c2, n));
      c2 += n;
    }
  });
  return out;
}

Var Graph::sum_all(Var a) {
  Mat v(1, 1);
  v(0, 0) = value(a).sum();
  Var out = push(std::move(v));
  set_back(out, [this, a, out] {
    double g = nodes_[out.i].grad(0, 0);
    accumulate(a.i, Mat::Constant(nodes_[a.i].value.rows(),
                                  nodes_[a.i].value.cols(), g));
  });
  return out;
}

Var Graph::mean_all(Var a) {
  double n = static_cast<double>(value(a).size());
  Mat v(1, 1);
  v(0, 0) = value(a).sum() / n;
  Var out = push(std::move(v));
  set_back(out, [this, a, out, n] {
    double g = nodes_[out.i].grad(0, 0) / n;
    accumulate(a.i, Mat::Constant(nodes_[a.i].value.rows(),
                                  nodes_[a.i].value.cols(), g));
  });
  return out;
}

Var Graph::mean_rows(Var a) {
  const Mat& A = value(a);
  Var out = push(A.colwise().mean());
  set_back(out, [this, a, out] {
    const Mat& G = nodes_[out.i].grad;
    double inv = 1.0 / nodes_[a.i].value.rows();
    Mat g(nodes_[a.i].value.rows(), nodes_[a.i].value.cols());
    for (int r = 0; r < g.rows(); ++r) g.row(r) = G.row(0) * inv;
    accumulate(a.i, g);
  });
  return out;
}

Var Graph::max_rows(Var a) {
  const Mat& A = value(a);
  Mat v(1, A.cols());
  std::vector<int> argmax(A.cols());
  for (int c = 0; c < A.cols(); ++c) {
    int idx = 0;
    v(0, c) = A.col(c).maxCoeff(&idx);
    argmax[c] = idx;
  }
  Var out = push(std::move(v));
  set_back(out, [this, a, out, argmax] {
    const Mat& G = nodes_[out.i].grad;
    Mat g = Mat::Zero(nodes_[a.i].value.rows(), nodes_[a.i].value.cols());
    for (int c = 0; c < g.cols(); ++c) g(argmax[c], c) = G(0, c);
    accumulate(a.i, g);
  });
  return out;
}

Var Graph::conv2d(Var img, Var weight, Var bias, int h, int w, int kh, int kw,
                  int stride, int pad) {
  const Mat& I = value(img);
  const Mat& W = value(weight);
  const Mat& B = value(bias);
  int in_ch = static_cast<int>(I.rows());
  if (I.cols() != static_cast<long>(h) * w)
    throw std::invalid_argument("conv2d: image size mismatch");
  if (W.cols() != static_cast<long>(in_ch) * kh * kw)
    throw std::invalid_argument("conv2d: weight size mismatch");
  int out_ch = static_cast<int>(W.rows());
  if (B.rows() != out_ch || B.cols() != 1)
    throw std::invalid_argument("conv2d: bias must be out_ch x 1");
  int oh = (h + 2 * pad - kh) / stride + 1;
  int ow = (w + 2 * pad - kw) / stride + 1;
  if (oh <= 0 || ow <= 0) throw std::invalid_argument("conv2d: empty output");

  // im2col: (in_ch*kh*kw) x (oh*ow)
  Mat cols(static_cast<long>(in_ch) * kh * kw, static_cast<long>(oh) * ow);
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      long col = static_cast<long>(oy) * ow + ox;
      for (int c = 0; c < in_ch; ++c) {
        for (int ky = 0; ky < kh; ++ky) {
          for (int kx = 0; kx < kw; ++kx) {
            int iy = oy * stride - pad + ky;
            int ix = ox * stride - pad + kx;
            long row = (static_cast<long>(c) * kh + ky) * kw + kx;
            cols(row, col) = (iy >= 0 && iy < h && ix >= 0 && ix < w)
                                 ? I(c, static_cast<long>(iy) * w + ix)
                                 : 0.0;
          }
        }
      }
    }
  }

  Mat out_v = W * cols;
  out_v.colwise() += B.col(0);
  Var out = push(std::move(out_v));
  set_back(out, [this, img, weight, bias, out, cols, h, w, kh, kw, stride, pad,
                 oh, ow, in_ch] {
    const Mat& G = nodes_[out.i].grad;  // out_ch x oh*ow
    accumulate(weight.i, G * cols.transpose());
    accumulate(bias.i, G.rowwise().sum());
    Mat dcols = nodes_[weight.i].value.transpose() * G;
    Mat dimg = Mat::Zero(in_ch, static_cast<long>(h) * w);
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        long col = static_cast<long>(oy) * ow + ox;
        for (int c = 0; c < in_ch; ++c) {
          for (int ky = 0; ky < kh; ++ky) {
            for (int kx = 0; kx < kw; ++kx) {
              int iy = oy * stride - pad + ky;
              int ix = ox * stride - pad + kx;
              if (iy < 0 || iy >= h || ix < 0 || ix >= w) continue;
              long row = (static_cast<long>(c) * kh + ky) * kw + kx;
              dimg(c, static_cast<long>(iy) * w + ix) += dcols(row, col);
            }
          }
        }
      }
    }
    accumulate(img.i, dimg);
  });
  return out;
}

Var Graph::linear(Var x, Parameter& weight, Parameter* bias) {
  Var y = matmul(x, param(weight));
  if (bias) y = add_rowvec(y, param(*bias));
  return y;
}

}  // namespace esdd::ag
