#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "util/rng.hpp"

namespace cdds::nn {

// Domain floor for log and division, shared across ops.
inline constexpr double kClampEps = 1e-12;

// Dynamic-tape reverse-mode autodiff over row-major 2D tensors. Instantiated
// with S=float for training and S=double for verification; the double build
// additionally checks every op output for non-finite values.
template <class S>
struct Node {
    int rows = 0;
    int cols = 0;
    std::vector<S> v;
    std::vector<S> g;  // lazily allocated, zero-initialized
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node<S>>> parents;
    std::function<void(Node<S>&)> backward;
    const char* op = "leaf";

    size_t size() const { return v.size(); }
    void ensure_grad() {
        if (g.empty()) g.assign(v.size(), S(0));
    }
};

template <class S>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::shared_ptr<Node<S>> n) : n_(std::move(n)) {}

    static Tensor zeros(int r, int c, bool requires_grad = false) {
        return filled(r, c, S(0), requires_grad);
    }
    static Tensor filled(int r, int c, S value, bool requires_grad = false) {
        auto n = std::make_shared<Node<S>>();
        n->rows = r;
        n->cols = c;
        n->v.assign(size_t(r) * size_t(c), value);
        n->requires_grad = requires_grad;
        return Tensor(std::move(n));
    }
    static Tensor from(int r, int c, std::vector<S> values, bool requires_grad = false) {
        if (values.size() != size_t(r) * size_t(c))
            throw std::invalid_argument("Tensor::from: value count does not match shape");
        auto n = std::make_shared<Node<S>>();
        n->rows = r;
        n->cols = c;
        n->v = std::move(values);
        n->requires_grad = requires_grad;
        return Tensor(std::move(n));
    }
    static Tensor scalar(S value) { return filled(1, 1, value); }

    bool defined() const { return bool(n_); }
    int rows() const { return n_->rows; }
    int cols() const { return n_->cols; }
    size_t size() const { return n_->size(); }
    S at(int i, int j) const { return n_->v[size_t(i) * size_t(n_->cols) + size_t(j)]; }
    S item() const {
        if (size() != 1) throw std::invalid_argument("Tensor::item: not a scalar");
        return n_->v[0];
    }
    std::vector<S>& values() { return n_->v; }
    const std::vector<S>& values() const { return n_->v; }
    const std::vector<S>& grad() const { return n_->g; }
    bool requires_grad() const { return n_->requires_grad; }
    void set_requires_grad(bool b) { n_->requires_grad = b; }
    void zero_grad() { n_->g.assign(n_->size(), S(0)); }

    std::shared_ptr<Node<S>> node() const { return n_; }

private:
    std::shared_ptr<Node<S>> n_;
};

namespace detail {

template <class S>
inline void check_finite(const Node<S>& n) {
    if constexpr (std::is_same_v<S, double>) {
        for (S x : n.v)
            if (!std::isfinite(x))
                throw std::runtime_error(std::string("non-finite value in op '") + n.op + "'");
    }
}

template <class S>
inline std::shared_ptr<Node<S>> make_node(const char* op, int r, int c,
                                          std::vector<std::shared_ptr<Node<S>>> parents) {
    auto n = std::make_shared<Node<S>>();
    n->op = op;
    n->rows = r;
    n->cols = c;
    n->v.assign(size_t(r) * size_t(c), S(0));
    n->parents = std::move(parents);
    for (const auto& p : n->parents)
        if (p->requires_grad || p->backward) n->requires_grad = true;
    return n;
}

[[noreturn]] inline void shape_error(const char* op, const std::string& detail) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch (" + detail + ")");
}

}  // namespace detail

template <class S>
Tensor<S> matmul(const Tensor<S>& a, const Tensor<S>& b) {
    if (a.cols() != b.rows())
        detail::shape_error("matmul", std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    int r = a.rows(), k = a.cols(), c = b.cols();
    auto n = detail::make_node<S>("matmul", r, c, {a.node(), b.node()});
    const S* av = a.values().data();
    const S* bv = b.values().data();
    S* out = n->v.data();
    for (int i = 0; i < r; ++i)
        for (int p = 0; p < k; ++p) {
            S aip = av[i * k + p];
            if (aip == S(0)) continue;
            const S* brow = bv + p * c;
            S* orow = out + i * c;
            for (int j = 0; j < c; ++j) orow[j] += aip * brow[j];
        }
    detail::check_finite(*n);
    n->backward = [r, k, c](Node<S>& self) {
        auto& A = *self.parents[0];
        auto& B = *self.parents[1];
        const S* G = self.g.data();
        if (A.requires_grad || A.backward) {
            A.ensure_grad();
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    S gij = G[i * c + j];
                    if (gij == S(0)) continue;
                    for (int p = 0; p < k; ++p) A.g[size_t(i * k + p)] += gij * B.v[size_t(p * c + j)];
                }
        }
        if (B.requires_grad || B.backward) {
            B.ensure_grad();
            for (int p = 0; p < k; ++p)
                for (int i = 0; i < r; ++i) {
                    S aip = A.v[size_t(i * k + p)];
                    if (aip == S(0)) continue;
                    for (int j = 0; j < c; ++j) B.g[size_t(p * c + j)] += aip * G[i * c + j];
                }
        }
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> transpose(const Tensor<S>& a) {
    int r = a.rows(), c = a.cols();
    auto n = detail::make_node<S>("transpose", c, r, {a.node()});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) n->v[size_t(j) * size_t(r) + size_t(i)] = a.at(i, j);
    n->backward = [r, c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                A.g[size_t(i) * size_t(c) + size_t(j)] += self.g[size_t(j) * size_t(r) + size_t(i)];
    };
    return Tensor<S>(n);
}

namespace detail {

template <class S, class Fwd, class Bwd>
Tensor<S> binary_same_shape(const char* op, const Tensor<S>& a, const Tensor<S>& b, Fwd fwd,
                            Bwd bwd) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) detail::shape_error(op, "elementwise");
    auto n = detail::make_node<S>(op, a.rows(), a.cols(), {a.node(), b.node()});
    for (size_t i = 0; i < n->v.size(); ++i) n->v[i] = fwd(a.values()[i], b.values()[i]);
    detail::check_finite(*n);
    n->backward = [bwd](Node<S>& self) {
        auto& A = *self.parents[0];
        auto& B = *self.parents[1];
        bool ga = A.requires_grad || A.backward;
        bool gb = B.requires_grad || B.backward;
        if (ga) A.ensure_grad();
        if (gb) B.ensure_grad();
        for (size_t i = 0; i < self.v.size(); ++i) {
            auto [da, db] = bwd(A.v[i], B.v[i]);
            if (ga) A.g[i] += self.g[i] * da;
            if (gb) B.g[i] += self.g[i] * db;
        }
    };
    return Tensor<S>(n);
}

template <class S, class Fwd, class Bwd>
Tensor<S> unary(const char* op, const Tensor<S>& a, Fwd fwd, Bwd bwd) {
    auto n = detail::make_node<S>(op, a.rows(), a.cols(), {a.node()});
    for (size_t i = 0; i < n->v.size(); ++i) n->v[i] = fwd(a.values()[i]);
    detail::check_finite(*n);
    n->backward = [bwd](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (size_t i = 0; i < self.v.size(); ++i) A.g[i] += self.g[i] * bwd(A.v[i], self.v[i]);
    };
    return Tensor<S>(n);
}

}  // namespace detail

template <class S>
Tensor<S> add(const Tensor<S>& a, const Tensor<S>& b) {
    return detail::binary_same_shape<S>(
        "add", a, b, [](S x, S y) { return x + y; },
        [](S, S) { return std::pair<S, S>(S(1), S(1)); });
}

template <class S>
Tensor<S> sub(const Tensor<S>& a, const Tensor<S>& b) {
    return detail::binary_same_shape<S>(
        "sub", a, b, [](S x, S y) { return x - y; },
        [](S, S) { return std::pair<S, S>(S(1), S(-1)); });
}

template <class S>
Tensor<S> mul(const Tensor<S>& a, const Tensor<S>& b) {
    return detail::binary_same_shape<S>(
        "mul", a, b, [](S x, S y) { return x * y; },
        [](S x, S y) { return std::pair<S, S>(y, x); });
}

// Elementwise division with the denominator clamped away from zero.
template <class S>
Tensor<S> div(const Tensor<S>& a, const Tensor<S>& b) {
    auto clamp = [](S y) {
        S m = std::abs(y) < S(kClampEps) ? S(kClampEps) : std::abs(y);
        return y < S(0) ? -m : m;
    };
    return detail::binary_same_shape<S>(
        "div", a, b, [clamp](S x, S y) { return x / clamp(y); },
        [clamp](S x, S y) {
            S d = clamp(y);
            return std::pair<S, S>(S(1) / d, -x / (d * d));
        });
}

template <class S>
Tensor<S> scale(const Tensor<S>& a, double s) {
    return detail::unary<S>(
        "scale", a, [s](S x) { return S(double(x) * s); }, [s](S, S) { return S(s); });
}

template <class S>
Tensor<S> add_scalar(const Tensor<S>& a, double s) {
    return detail::unary<S>(
        "add_scalar", a, [s](S x) { return S(double(x) + s); }, [](S, S) { return S(1); });
}

// s - a
template <class S>
Tensor<S> rsub_scalar(double s, const Tensor<S>& a) {
    return detail::unary<S>(
        "rsub_scalar", a, [s](S x) { return S(s - double(x)); }, [](S, S) { return S(-1); });
}

template <class S>
Tensor<S> relu(const Tensor<S>& a) {
    return detail::unary<S>(
        "relu", a, [](S x) { return x > S(0) ? x : S(0); },
        [](S x, S) { return x > S(0) ? S(1) : S(0); });
}

template <class S>
Tensor<S> sigmoid(const Tensor<S>& a) {
    return detail::unary<S>(
        "sigmoid", a,
        [](S x) {
            // evaluated in double to keep the float path stable at the tails
            double e = 1.0 / (1.0 + std::exp(-double(x)));
            return S(e);
        },
        [](S, S y) { return y * (S(1) - y); });
}

template <class S>
Tensor<S> tanh_op(const Tensor<S>& a) {
    return detail::unary<S>(
        "tanh", a, [](S x) { return S(std::tanh(double(x))); },
        [](S, S y) { return S(1) - y * y; });
}

template <class S>
Tensor<S> exp_op(const Tensor<S>& a) {
    return detail::unary<S>(
        "exp", a, [](S x) { return S(std::exp(double(x))); }, [](S, S y) { return y; });
}

// log(max(x, kClampEps)); zero slope below the clamp
template <class S>
Tensor<S> log_op(const Tensor<S>& a) {
    return detail::unary<S>(
        "log", a, [](S x) { return S(std::log(std::max(double(x), kClampEps))); },
        [](S x, S) { return double(x) > kClampEps ? S(1.0 / double(x)) : S(0); });
}

// Pass-through gradient inside [lo, hi], zero outside.
template <class S>
Tensor<S> clamp_op(const Tensor<S>& a, double lo, double hi) {
    return detail::unary<S>(
        "clamp", a,
        [lo, hi](S x) { return S(std::min(std::max(double(x), lo), hi)); },
        [lo, hi](S x, S) { return (double(x) > lo && double(x) < hi) ? S(1) : S(0); });
}

template <class S>
Tensor<S> sqrt_op(const Tensor<S>& a) {
    return detail::unary<S>(
        "sqrt", a, [](S x) { return S(std::sqrt(std::max(double(x), 0.0))); },
        [](S x, S y) { return x > S(kClampEps) ? S(0.5) / y : S(0); });
}

template <class S>
Tensor<S> bcast_row(const Tensor<S>& a, int r) {
    if (a.rows() != 1) detail::shape_error("bcast_row", "expected 1 x c");
    int c = a.cols();
    auto n = detail::make_node<S>("bcast_row", r, c, {a.node()});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) n->v[size_t(i) * size_t(c) + size_t(j)] = a.values()[size_t(j)];
    n->backward = [r, c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A.g[size_t(j)] += self.g[size_t(i) * size_t(c) + size_t(j)];
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> bcast_col(const Tensor<S>& a, int c) {
    if (a.cols() != 1) detail::shape_error("bcast_col", "expected r x 1");
    int r = a.rows();
    auto n = detail::make_node<S>("bcast_col", r, c, {a.node()});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) n->v[size_t(i) * size_t(c) + size_t(j)] = a.values()[size_t(i)];
    n->backward = [r, c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A.g[size_t(i)] += self.g[size_t(i) * size_t(c) + size_t(j)];
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> concat_cols(const Tensor<S>& a, const Tensor<S>& b) {
    if (a.rows() != b.rows()) detail::shape_error("concat_cols", "row counts differ");
    int r = a.rows(), ca = a.cols(), cb = b.cols();
    auto n = detail::make_node<S>("concat_cols", r, ca + cb, {a.node(), b.node()});
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < ca; ++j) n->v[size_t(i) * size_t(ca + cb) + size_t(j)] = a.at(i, j);
        for (int j = 0; j < cb; ++j) n->v[size_t(i) * size_t(ca + cb) + size_t(ca + j)] = b.at(i, j);
    }
    n->backward = [r, ca, cb](Node<S>& self) {
        auto& A = *self.parents[0];
        auto& B = *self.parents[1];
        bool ga = A.requires_grad || A.backward;
        bool gb = B.requires_grad || B.backward;
        if (ga) A.ensure_grad();
        if (gb) B.ensure_grad();
        for (int i = 0; i < r; ++i) {
            if (ga)
                for (int j = 0; j < ca; ++j)
                    A.g[size_t(i) * size_t(ca) + size_t(j)] +=
                        self.g[size_t(i) * size_t(ca + cb) + size_t(j)];
            if (gb)
                for (int j = 0; j < cb; ++j)
                    B.g[size_t(i) * size_t(cb) + size_t(j)] +=
                        self.g[size_t(i) * size_t(ca + cb) + size_t(ca + j)];
        }
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> slice_cols(const Tensor<S>& a, int c0, int c1) {
    if (c0 < 0 || c1 > a.cols() || c0 >= c1) detail::shape_error("slice_cols", "bad range");
    int r = a.rows(), c = a.cols(), w = c1 - c0;
    auto n = detail::make_node<S>("slice_cols", r, w, {a.node()});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < w; ++j) n->v[size_t(i) * size_t(w) + size_t(j)] = a.at(i, c0 + j);
    n->backward = [r, c, c0, w](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < w; ++j)
                A.g[size_t(i) * size_t(c) + size_t(c0 + j)] += self.g[size_t(i) * size_t(w) + size_t(j)];
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> softmax_rows(const Tensor<S>& a) {
    int r = a.rows(), c = a.cols();
    auto n = detail::make_node<S>("softmax", r, c, {a.node()});
    for (int i = 0; i < r; ++i) {
        const S* in = a.values().data() + size_t(i) * size_t(c);
        S* out = n->v.data() + size_t(i) * size_t(c);
        S mx = in[0];
        for (int j = 1; j < c; ++j) mx = std::max(mx, in[j]);
        double sum = 0;
        for (int j = 0; j < c; ++j) {
            double e = std::exp(double(in[j] - mx));
            out[j] = S(e);
            sum += e;
        }
        for (int j = 0; j < c; ++j) out[j] = S(double(out[j]) / sum);
    }
    detail::check_finite(*n);
    n->backward = [r, c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i) {
            const S* y = self.v.data() + size_t(i) * size_t(c);
            const S* gy = self.g.data() + size_t(i) * size_t(c);
            double dot = 0;
            for (int j = 0; j < c; ++j) dot += double(gy[j]) * double(y[j]);
            for (int j = 0; j < c; ++j)
                A.g[size_t(i) * size_t(c) + size_t(j)] += S((double(gy[j]) - dot) * double(y[j]));
        }
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> col_sums(const Tensor<S>& a) {  // -> 1 x c
    int r = a.rows(), c = a.cols();
    auto n = detail::make_node<S>("col_sums", 1, c, {a.node()});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) n->v[size_t(j)] += a.at(i, j);
    n->backward = [r, c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A.g[size_t(i) * size_t(c) + size_t(j)] += self.g[size_t(j)];
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> row_sums(const Tensor<S>& a) {  // -> r x 1
    int r = a.rows(), c = a.cols();
    auto n = detail::make_node<S>("row_sums", r, 1, {a.node()});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) n->v[size_t(i)] += a.at(i, j);
    n->backward = [r, c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A.g[size_t(i) * size_t(c) + size_t(j)] += self.g[size_t(i)];
    };
    return Tensor<S>(n);
}

template <class S>
Tensor<S> sum_all(const Tensor<S>& a) {
    int r = a.rows(), c = a.cols();
    auto n = detail::make_node<S>("sum_all", 1, 1, {a.node()});
    double acc = 0;
    for (S x : a.values()) acc += double(x);
    n->v[0] = S(acc);
    n->backward = [](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (size_t i = 0; i < A.g.size(); ++i) A.g[i] += self.g[0];
    };
    (void)r;
    (void)c;
    return Tensor<S>(n);
}

template <class S>
Tensor<S> mean_all(const Tensor<S>& a) {
    return scale(sum_all(a), 1.0 / double(a.size()));
}

template <class S>
Tensor<S> col_means(const Tensor<S>& a) {
    return scale(col_sums(a), 1.0 / double(a.rows()));
}

template <class S>
Tensor<S> gather_rows(const Tensor<S>& a, std::vector<int> idx) {
    int c = a.cols();
    int r_out = int(idx.size());
    for (int i : idx)
        if (i < 0 || i >= a.rows()) detail::shape_error("gather_rows", "index out of range");
    auto n = detail::make_node<S>("gather_rows", r_out, c, {a.node()});
    for (int i = 0; i < r_out; ++i)
        for (int j = 0; j < c; ++j)
            n->v[size_t(i) * size_t(c) + size_t(j)] = a.at(idx[size_t(i)], j);
    n->backward = [idx = std::move(idx), c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (size_t i = 0; i < idx.size(); ++i)
            for (int j = 0; j < c; ++j)
                A.g[size_t(idx[i]) * size_t(c) + size_t(j)] += self.g[i * size_t(c) + size_t(j)];
    };
    return Tensor<S>(n);
}

// Sums row i of the input into output row idx[i].
template <class S>
Tensor<S> scatter_sum_rows(const Tensor<S>& a, std::vector<int> idx, int out_rows) {
    if (int(idx.size()) != a.rows()) detail::shape_error("scatter_sum_rows", "index count");
    int c = a.cols();
    for (int i : idx)
        if (i < 0 || i >= out_rows) detail::shape_error("scatter_sum_rows", "index out of range");
    auto n = detail::make_node<S>("scatter_sum_rows", out_rows, c, {a.node()});
    for (size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < c; ++j)
            n->v[size_t(idx[i]) * size_t(c) + size_t(j)] += a.at(int(i), j);
    n->backward = [idx = std::move(idx), c](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (size_t i = 0; i < idx.size(); ++i)
            for (int j = 0; j < c; ++j)
                A.g[i * size_t(c) + size_t(j)] += self.g[size_t(idx[i]) * size_t(c) + size_t(j)];
    };
    return Tensor<S>(n);
}

// Inverted dropout; draws exactly size() uniforms from the stream.
template <class S>
Tensor<S> dropout(const Tensor<S>& a, double rate, rng::Stream& stream) {
    if (rate <= 0.0) return a;
    auto n = detail::make_node<S>("dropout", a.rows(), a.cols(), {a.node()});
    auto mask = std::make_shared<std::vector<S>>(a.size());
    double keep = 1.0 - rate;
    for (size_t i = 0; i < a.size(); ++i) {
        bool kept = stream.next_double() >= rate;
        (*mask)[i] = kept ? S(1.0 / keep) : S(0);
        n->v[i] = a.values()[i] * (*mask)[i];
    }
    n->backward = [mask](Node<S>& self) {
        auto& A = *self.parents[0];
        A.ensure_grad();
        for (size_t i = 0; i < self.v.size(); ++i) A.g[i] += self.g[i] * (*mask)[i];
    };
    return Tensor<S>(n);
}

// Reverse-mode sweep from a scalar loss.
template <class S>
void backward(const Tensor<S>& loss) {
    if (loss.size() != 1) throw std::invalid_argument("backward: loss must be scalar");
    std::vector<Node<S>*> order;
    std::unordered_set<Node<S>*> seen;
    // Iterative post-order DFS; graphs can be deep on large batches.
    std::vector<std::pair<Node<S>*, size_t>> stack{{loss.node().get(), 0}};
    seen.insert(loss.node().get());
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < node->parents.size()) {
            Node<S>* p = node->parents[next++].get();
            if (!seen.count(p)) {
                seen.insert(p);
                stack.push_back({p, 0});
            }
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }
    loss.node()->ensure_grad();
    loss.node()->g[0] = S(1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node<S>* node = *it;
        if (node->backward && !node->g.empty()) node->backward(*node);
    }
}

// Balanced pairwise mean; keeps the graph shallow for large batches.
template <class S>
Tensor<S> mean_of(std::vector<Tensor<S>> xs) {
    if (xs.empty()) throw std::invalid_argument("mean_of: empty");
    size_t count = xs.size();
    while (xs.size() > 1) {
        std::vector<Tensor<S>> next;
        for (size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(add(xs[i], xs[i + 1]));
        if (xs.size() % 2) next.push_back(xs.back());
        xs = std::move(next);
    }
    return scale(xs[0], 1.0 / double(count));
}

// log(p / (1-p)) with the standard clamp.
template <class S>
Tensor<S> logit(const Tensor<S>& p) {
    return sub(log_op(p), log_op(rsub_scalar(1.0, p)));
}

template <class S>
Tensor<S> linear(const Tensor<S>& x, const Tensor<S>& w, const Tensor<S>& b) {
    return add(matmul(x, w), bcast_row(b, x.rows()));
}

}  // namespace cdds::nn
