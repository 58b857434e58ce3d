#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model/graphs.hpp"
#include "model/hyperparams.hpp"
#include "nn/params.hpp"
#include "nn/tensor.hpp"

namespace cdds::model {

using nn::Tensor;

enum class Mode { train, eval, explain };

// Per-forward sampling context. Null streams mean "deterministic": the
// gumbel-sigmoid drops its noise term and mask noise follows eval_noise.
// Streams are split by purpose so that toggling one consumer (for example the
// intervention module) never shifts the draws seen by another.
template <class S>
struct RunContext {
    Mode mode = Mode::eval;
    rng::Stream* gumbel = nullptr;
    rng::Stream* noise = nullptr;
    rng::Stream* dropout = nullptr;
    rng::Stream* gumbel_inter = nullptr;
    rng::Stream* permute = nullptr;
};

template <class S>
struct PairForward {
    Tensor<S> yhat;           // prediction head output (probability / raw score)
    Tensor<S> loss_task;      // per-sample task loss vs label (when label given)
    Tensor<S> yind;           // independence head output (when that loss is active)
    Tensor<S> p1, p2;         // per-atom importance columns (N x 1)
    Tensor<S> x1, x2;         // encoder outputs
    Tensor<S> h1, h2;         // interaction-aware representations
    Tensor<S> c1, s1, c2, s2; // masked matrices
    Tensor<S> zc1, zc2, zs1, zs2;
    Tensor<S> zcell;
};

template <class S>
struct BatchLoss {
    Tensor<S> total;
    double suf = 0.0, ind = 0.0, inter = 0.0;  // component values for logging
};

template <class S>
class Model {
public:
    Hyperparams hp;
    Task task = Task::classification;
    nn::ParameterStore<S> store;

    Model() = default;

    static Model build(const Hyperparams& hp, Task task, uint64_t seed) {
        hp.validate();
        Model m;
        m.hp = hp;
        m.task = task;
        m.store = nn::ParameterStore<S>(seed);
        auto& st = m.store;
        int d = hp.d;

        st.add("atom_proj.w", chem::kAtomFeatureDim, d, nn::Init::glorot);
        st.add("atom_proj.b", 1, d, nn::Init::zeros);
        for (int l = 0; l < hp.gin_layers; ++l) {
            std::string p = "gin.l" + std::to_string(l) + ".";
            st.add(p + "edge.w", chem::kBondFeatureDim, d, nn::Init::glorot);
            st.add(p + "edge.b", 1, d, nn::Init::zeros);
            st.add(p + "eps", 1, 1, nn::Init::zeros);
            st.add(p + "mlp.w1", d, d, nn::Init::glorot);
            st.add(p + "mlp.b1", 1, d, nn::Init::zeros);
            st.add(p + "mlp.w2", d, d, nn::Init::glorot);
            st.add(p + "mlp.b2", 1, d, nn::Init::zeros);
        }
        st.add("cell.w", hp.genes, hp.cell_embed, nn::Init::glorot);
        st.add("cell.b", 1, hp.cell_embed, nn::Init::zeros);

        int z_width;  // per-drug readout width fed to the prediction head
        if (hp.use_disentangle) {
            st.add("imp.w1", 2 * d, d, nn::Init::glorot);
            st.add("imp.b1", 1, d, nn::Init::zeros);
            st.add("imp.w2", d, 1, nn::Init::glorot);
            st.add("imp.b2", 1, 1, nn::Init::zeros);
            m.add_set2set("s2s_c", 2 * d);
            m.add_set2set("s2s_s", 2 * d);
            z_width = 4 * d;
        } else {
            m.add_set2set("s2s_x", d);
            z_width = 2 * d;
        }

        int pred_in = 2 * z_width + hp.cell_embed;
        st.add("pred.w1", pred_in, hp.head_hidden1, nn::Init::glorot);
        st.add("pred.b1", 1, hp.head_hidden1, nn::Init::zeros);
        st.add("pred.w2", hp.head_hidden1, hp.head_hidden2, nn::Init::glorot);
        st.add("pred.b2", 1, hp.head_hidden2, nn::Init::zeros);
        st.add("pred.w3", hp.head_hidden2, 1, nn::Init::glorot);
        st.add("pred.b3", 1, 1, nn::Init::zeros);

        if (hp.use_disentangle && hp.loss_independence) {
            int out = task == Task::classification ? 2 : 1;
            st.add("ind.w1", pred_in, hp.head_hidden2, nn::Init::glorot);
            st.add("ind.b1", 1, hp.head_hidden2, nn::Init::zeros);
            st.add("ind.w2", hp.head_hidden2, out, nn::Init::glorot);
            st.add("ind.b2", 1, out, nn::Init::zeros);
        }
        if (hp.use_disentangle && hp.loss_intervention) {
            int in = 2 * z_width + 2 * (2 * d) + hp.cell_embed;
            st.add("inter.w1", in, hp.head_hidden2, nn::Init::glorot);
            st.add("inter.b1", 1, hp.head_hidden2, nn::Init::zeros);
            st.add("inter.w2", hp.head_hidden2, 1, nn::Init::glorot);
            st.add("inter.b2", 1, 1, nn::Init::zeros);
        }
        return m;
    }

    // --- encoder -----------------------------------------------------------

    Tensor<S> encode(const DrugGraph& g) {
        auto feats = to_tensor(g.atom_feat, g.n_atoms, chem::kAtomFeatureDim);
        Tensor<S> h = nn::linear(feats, store.at("atom_proj.w"), store.at("atom_proj.b"));
        Tensor<S> efeat = to_tensor(g.edge_feat, g.n_edges, chem::kBondFeatureDim);
        for (int l = 0; l < hp.gin_layers; ++l) {
            std::string p = "gin.l" + std::to_string(l) + ".";
            Tensor<S> agg;
            if (g.n_edges > 0) {
                Tensor<S> eproj = nn::linear(efeat, store.at(p + "edge.w"), store.at(p + "edge.b"));
                Tensor<S> msg = nn::relu(nn::add(nn::gather_rows(h, g.src), eproj));
                agg = nn::scatter_sum_rows(msg, g.dst, g.n_atoms);
            } else {
                agg = Tensor<S>::zeros(g.n_atoms, hp.d);
            }
            Tensor<S> eps_full =
                nn::bcast_row(nn::bcast_col(store.at(p + "eps"), hp.d), g.n_atoms);
            Tensor<S> pre = nn::add(nn::add(h, nn::mul(eps_full, h)), agg);
            Tensor<S> mid = nn::relu(nn::linear(pre, store.at(p + "mlp.w1"), store.at(p + "mlp.b1")));
            h = nn::relu(nn::linear(mid, store.at(p + "mlp.w2"), store.at(p + "mlp.b2")));
        }
        return h;
    }

    // --- molecular interaction (cosine map, cross embeddings) ---------------

    static Tensor<S> interaction_map(const Tensor<S>& x1, const Tensor<S>& x2) {
        // clamp guards against rounding pushing a cosine past +-1
        return nn::clamp_op(matmul(normalize_rows(x1), transpose(normalize_rows(x2))), -1.0, 1.0);
    }

    static std::pair<Tensor<S>, Tensor<S>> cross_embed_concat(const Tensor<S>& x1,
                                                              const Tensor<S>& x2,
                                                              const Tensor<S>& imap) {
        Tensor<S> e1 = matmul(imap, x2);
        Tensor<S> e2 = matmul(transpose(imap), x1);
        return {concat_cols(x1, e1), concat_cols(x2, e2)};
    }

    // --- causal disentangle --------------------------------------------------

    Tensor<S> importance_scores(const Tensor<S>& h) {
        Tensor<S> mid = nn::relu(nn::linear(h, store.at("imp.w1"), store.at("imp.b1")));
        return nn::sigmoid(nn::linear(mid, store.at("imp.w2"), store.at("imp.b2")));
    }

    // lambda = sigmoid((logit(p) + logit(u)) / t); u empty means noiseless.
    Tensor<S> gumbel_sigmoid(const Tensor<S>& p, const Tensor<S>& u) const {
        Tensor<S> lp = nn::logit(nn::clamp_op(p, 1e-6, 1.0 - 1e-6));
        if (u.defined()) lp = nn::add(lp, nn::logit(nn::clamp_op(u, 1e-6, 1.0 - 1e-6)));
        return nn::sigmoid(nn::scale(lp, 1.0 / hp.temperature));
    }

    // C_i = lam_i H_i + (1-lam_i) eps_i ; S_i = (1-lam_i) H_i.
    // eps is N(mu_H, sigma_H^2) per feature column, reparameterized through the
    // column statistics; z empty selects the deterministic eval replacement.
    std::pair<Tensor<S>, Tensor<S>> disentangle_split(const Tensor<S>& h, const Tensor<S>& lam,
                                                      const Tensor<S>& z, NoiseMode mode) const {
        int n = h.rows(), w = h.cols();
        Tensor<S> eps;
        if (z.defined() || mode == NoiseMode::mean) {
            Tensor<S> mu = nn::col_means(h);
            if (z.defined()) {
                Tensor<S> diff = nn::sub(h, nn::bcast_row(mu, n));
                Tensor<S> sigma = nn::sqrt_op(nn::col_means(nn::mul(diff, diff)));
                eps = nn::add(nn::bcast_row(mu, n), nn::mul(nn::bcast_row(sigma, n), z));
            } else {
                eps = nn::bcast_row(mu, n);
            }
        } else {
            eps = Tensor<S>::zeros(n, w);
        }
        Tensor<S> lam_full = nn::bcast_col(lam, w);
        Tensor<S> inv_full = nn::bcast_col(nn::rsub_scalar(1.0, lam), w);
        Tensor<S> c = nn::add(nn::mul(lam_full, h), nn::mul(inv_full, eps));
        Tensor<S> s = nn::mul(inv_full, h);
        return {c, s};
    }

    // --- Set2Set readout -----------------------------------------------------

    Tensor<S> set2set(const std::string& prefix, const Tensor<S>& m) {
        if (m.rows() < 1) throw std::invalid_argument("set2set: empty matrix");
        int w = m.cols();
        const Tensor<S>& wx = store.at(prefix + ".wx");
        const Tensor<S>& wh = store.at(prefix + ".wh");
        const Tensor<S>& b = store.at(prefix + ".b");
        Tensor<S> qstar = Tensor<S>::zeros(1, 2 * w);
        Tensor<S> hidden = Tensor<S>::zeros(1, w);
        Tensor<S> cell = Tensor<S>::zeros(1, w);
        for (int step = 0; step < hp.set2set_steps; ++step) {
            auto [h2, c2] = lstm_cell(qstar, hidden, cell, wx, wh, b);
            hidden = h2;
            cell = c2;
            Tensor<S> scores = matmul(m, transpose(hidden));              // N x 1
            Tensor<S> alpha = nn::softmax_rows(transpose(scores));       // 1 x N
            Tensor<S> readout = matmul(alpha, m);                        // 1 x w
            qstar = concat_cols(hidden, readout);
        }
        return qstar;
    }

    Tensor<S> mean_pool(const Tensor<S>& m) const { return nn::col_means(m); }

    // --- heads ---------------------------------------------------------------

    Tensor<S> cell_embedding(const std::vector<double>& expr) {
        auto x = to_tensor(expr, 1, int(expr.size()));
        return nn::relu(nn::linear(x, store.at("cell.w"), store.at("cell.b")));
    }

    // Three-layer prediction head with dropout; sigmoid for classification.
    Tensor<S> predict_head(const Tensor<S>& in, RunContext<S>& ctx) {
        Tensor<S> h = nn::relu(nn::linear(in, store.at("pred.w1"), store.at("pred.b1")));
        if (ctx.mode == Mode::train && ctx.dropout) h = nn::dropout(h, hp.dropout, *ctx.dropout);
        h = nn::relu(nn::linear(h, store.at("pred.w2"), store.at("pred.b2")));
        if (ctx.mode == Mode::train && ctx.dropout) h = nn::dropout(h, hp.dropout, *ctx.dropout);
        Tensor<S> out = nn::linear(h, store.at("pred.w3"), store.at("pred.b3"));
        return task == Task::classification ? nn::sigmoid(out) : out;
    }

    Tensor<S> independence_head(const Tensor<S>& in) {
        Tensor<S> h = nn::relu(nn::linear(in, store.at("ind.w1"), store.at("ind.b1")));
        Tensor<S> out = nn::linear(h, store.at("ind.w2"), store.at("ind.b2"));
        return task == Task::classification ? nn::softmax_rows(out) : out;
    }

    Tensor<S> intervention_head(const Tensor<S>& in) {
        Tensor<S> h = nn::relu(nn::linear(in, store.at("inter.w1"), store.at("inter.b1")));
        Tensor<S> out = nn::linear(h, store.at("inter.w2"), store.at("inter.b2"));
        return task == Task::classification ? nn::sigmoid(out) : out;
    }

    // --- losses --------------------------------------------------------------

    // Per-sample task loss: binary cross-entropy on probabilities, or squared
    // error for regression.
    Tensor<S> task_loss(const Tensor<S>& yhat, double label) const {
        if (task == Task::classification) {
            Tensor<S> lp = nn::log_op(yhat);
            Tensor<S> lq = nn::log_op(nn::rsub_scalar(1.0, yhat));
            return nn::scale(nn::add(nn::scale(lp, label), nn::scale(lq, 1.0 - label)), -1.0);
        }
        Tensor<S> diff = nn::add_scalar(yhat, -label);
        return nn::mul(diff, diff);
    }

    // KL(p || U) over two classes, clamped.
    Tensor<S> kl_from_uniform(const Tensor<S>& probs) const {
        Tensor<S> lr = nn::add_scalar(nn::log_op(probs), std::log(2.0));
        return nn::sum_all(nn::mul(probs, lr));
    }

    // --- full pair forward ---------------------------------------------------

    PairForward<S> forward_pair(const DrugGraph& a, const DrugGraph& b,
                                const std::vector<double>& cell_expr,
                                std::optional<double> label, RunContext<S>& ctx) {
        PairForward<S> out;
        out.x1 = encode(a);
        out.x2 = encode(b);
        Tensor<S> zcell = cell_embedding(cell_expr);

        Tensor<S> z1, z2;
        if (hp.use_disentangle) {
            Tensor<S> imap = interaction_map(out.x1, out.x2);
            auto [h1, h2] = cross_embed_concat(out.x1, out.x2, imap);
            out.h1 = h1;
            out.h2 = h2;
            out.p1 = importance_scores(h1);
            out.p2 = importance_scores(h2);
            Tensor<S> lam1 = gumbel_sigmoid(out.p1, draw_uniform(a.n_atoms, ctx.gumbel, ctx));
            Tensor<S> lam2 = gumbel_sigmoid(out.p2, draw_uniform(b.n_atoms, ctx.gumbel, ctx));
            auto [c1, s1] = disentangle_split(h1, lam1, draw_gauss(a.n_atoms, 2 * hp.d, ctx.noise, ctx),
                                              hp.eval_noise);
            auto [c2, s2] = disentangle_split(h2, lam2, draw_gauss(b.n_atoms, 2 * hp.d, ctx.noise, ctx),
                                              hp.eval_noise);
            out.c1 = c1;
            out.s1 = s1;
            out.c2 = c2;
            out.s2 = s2;
            out.zc1 = set2set("s2s_c", c1);
            out.zc2 = set2set("s2s_c", c2);
            out.zs1 = set2set("s2s_s", s1);
            out.zs2 = set2set("s2s_s", s2);
            z1 = out.zc1;
            z2 = out.zc2;
        } else {
            out.zc1 = set2set("s2s_x", out.x1);
            out.zc2 = set2set("s2s_x", out.x2);
            z1 = out.zc1;
            z2 = out.zc2;
        }

        out.zcell = zcell;
        out.yhat = predict_head(concat_cols(concat_cols(z1, z2), zcell), ctx);
        if (label) out.loss_task = task_loss(out.yhat, *label);

        if (hp.use_disentangle && hp.loss_independence && store.has("ind.w1"))
            out.yind = independence_head(concat_cols(concat_cols(out.zs1, out.zs2), zcell));
        return out;
    }

    // --- helpers -------------------------------------------------------------

    Tensor<S> to_tensor(const std::vector<double>& v, int r, int c) const {
        std::vector<S> cast(v.size());
        for (size_t i = 0; i < v.size(); ++i) cast[i] = S(v[i]);
        return Tensor<S>::from(r, c, std::move(cast));
    }

    static Tensor<S> normalize_rows(const Tensor<S>& x) {
        Tensor<S> norm = nn::sqrt_op(nn::row_sums(nn::mul(x, x)));
        return nn::div(x, nn::bcast_col(norm, x.cols()));
    }

    static std::pair<Tensor<S>, Tensor<S>> lstm_cell(const Tensor<S>& x, const Tensor<S>& h,
                                                     const Tensor<S>& c, const Tensor<S>& wx,
                                                     const Tensor<S>& wh, const Tensor<S>& b) {
        int hw = h.cols();
        Tensor<S> gates = nn::add(nn::add(matmul(x, wx), matmul(h, wh)), b);
        Tensor<S> ig = nn::sigmoid(nn::slice_cols(gates, 0, hw));
        Tensor<S> fg = nn::sigmoid(nn::slice_cols(gates, hw, 2 * hw));
        Tensor<S> gg = nn::tanh_op(nn::slice_cols(gates, 2 * hw, 3 * hw));
        Tensor<S> og = nn::sigmoid(nn::slice_cols(gates, 3 * hw, 4 * hw));
        Tensor<S> c2 = nn::add(nn::mul(fg, c), nn::mul(ig, gg));
        Tensor<S> h2 = nn::mul(og, nn::tanh_op(c2));
        return {h2, c2};
    }

private:
    void add_set2set(const std::string& prefix, int w) {
        store.add(prefix + ".wx", 2 * w, 4 * w, nn::Init::glorot);
        store.add(prefix + ".wh", w, 4 * w, nn::Init::glorot);
        auto& b = store.add(prefix + ".b", 1, 4 * w, nn::Init::zeros);
        for (int j = w; j < 2 * w; ++j) b.values()[size_t(j)] = S(1);  // forget gate bias
    }

    // Uniform (0,1) column, or an empty tensor in deterministic mode.
    Tensor<S> draw_uniform(int n, rng::Stream* stream, const RunContext<S>& ctx) const {
        if (ctx.mode != Mode::train || !stream) return Tensor<S>();
        std::vector<S> u(static_cast<size_t>(n));
        for (S& x : u) x = S(stream->next_open01());
        return Tensor<S>::from(n, 1, std::move(u));
    }

    // Standard normal matrix, or empty for eval modes.
    Tensor<S> draw_gauss(int r, int c, rng::Stream* stream, const RunContext<S>& ctx) const {
        if (ctx.mode != Mode::train || !stream) return Tensor<S>();
        std::vector<S> z(static_cast<size_t>(r) * static_cast<size_t>(c));
        for (S& x : z) x = S(stream->next_gaussian());
        return Tensor<S>::from(r, c, std::move(z));
    }
};

}  // namespace cdds::model
