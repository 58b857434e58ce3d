#pragma once

#include <vector>

#include "model/model.hpp"

namespace cdds::model {

struct BatchSample {
    const DrugGraph* drug_a = nullptr;
    const DrugGraph* drug_b = nullptr;
    const std::vector<double>* cell = nullptr;
    double label = 0.0;  // binary label or raw score depending on task
};

template <class S>
struct InterventionResult {
    std::vector<Tensor<S>> zs1, zs2;  // pooled spurious readouts per (perm, sample)
    Tensor<S> loss;                   // undefined when K == 0
};

template <class S>
Tensor<S> draw_u(int n, RunContext<S>& ctx) {
    if (ctx.mode != Mode::train || !ctx.gumbel_inter) return Tensor<S>();
    std::vector<S> u(static_cast<size_t>(n));
    for (S& x : u) x = S(ctx.gumbel_inter->next_open01());
    return Tensor<S>::from(n, 1, std::move(u));
}

// Conditional causal intervention: for each of K permutations, re-pairs drug A
// of sample i with drug B of sample pi(i), extracts the spurious matrices of
// the re-paired run, mean-pools them and asks a separate head to still predict
// the original label from (z_C1, z_C2, z_S~1, z_S~2, z_cell).
template <class S>
InterventionResult<S> intervention_batch(Model<S>& model, const std::vector<BatchSample>& batch,
                                         const std::vector<PairForward<S>>& outs,
                                         RunContext<S>& ctx) {
    InterventionResult<S> res;
    int k = model.hp.intervention_k;
    if (k <= 0 || !ctx.permute) return res;
    size_t b = batch.size();
    std::vector<Tensor<S>> losses;
    losses.reserve(b * size_t(k));
    for (int perm_i = 0; perm_i < k; ++perm_i) {
        std::vector<int> perm(b);
        for (size_t i = 0; i < b; ++i) perm[i] = int(i);
        ctx.permute->shuffle(perm);
        for (size_t i = 0; i < b; ++i) {
            const PairForward<S>& self = outs[i];
            const PairForward<S>& mate = outs[size_t(perm[i])];
            Tensor<S> imap = Model<S>::interaction_map(self.x1, mate.x2);
            auto [h1, h2] = Model<S>::cross_embed_concat(self.x1, mate.x2, imap);
            Tensor<S> lam1 = model.gumbel_sigmoid(model.importance_scores(h1),
                                                  draw_u(h1.rows(), ctx));
            Tensor<S> lam2 = model.gumbel_sigmoid(model.importance_scores(h2),
                                                  draw_u(h2.rows(), ctx));
            Tensor<S> s1 = nn::mul(nn::bcast_col(nn::rsub_scalar(1.0, lam1), h1.cols()), h1);
            Tensor<S> s2 = nn::mul(nn::bcast_col(nn::rsub_scalar(1.0, lam2), h2.cols()), h2);
            Tensor<S> zs1 = model.mean_pool(s1);
            Tensor<S> zs2 = model.mean_pool(s2);
            Tensor<S> in = concat_cols(
                concat_cols(concat_cols(self.zc1, self.zc2), concat_cols(zs1, zs2)), self.zcell);
            Tensor<S> yhat = model.intervention_head(in);
            losses.push_back(model.task_loss(yhat, batch[i].label));
            res.zs1.push_back(zs1);
            res.zs2.push_back(zs2);
        }
    }
    res.loss = nn::mean_of(std::move(losses));
    return res;
}

template <class S>
struct BatchLosses {
    Tensor<S> total;
    double suf = 0.0, ind = 0.0, inter = 0.0;
    std::vector<PairForward<S>> outs;
};

// Runs the batch forward and assembles L_tol = L_suf + L_ind + L_inter with
// toggles; a disabled term contributes exactly zero and builds no graph.
template <class S>
BatchLosses<S> batch_losses(Model<S>& model, const std::vector<BatchSample>& batch,
                            RunContext<S>& ctx) {
    if (batch.empty()) throw std::invalid_argument("batch_losses: empty batch");
    BatchLosses<S> res;
    res.outs.reserve(batch.size());
    std::vector<Tensor<S>> task_terms, ind_terms;
    double label_mean = 0.0;
    for (const BatchSample& s : batch) label_mean += s.label;
    label_mean /= double(batch.size());

    for (const BatchSample& s : batch) {
        PairForward<S> out =
            model.forward_pair(*s.drug_a, *s.drug_b, *s.cell, s.label, ctx);
        if (model.hp.loss_sufficiency) task_terms.push_back(out.loss_task);
        if (out.yind.defined()) {
            if (model.task == Task::classification) {
                ind_terms.push_back(model.kl_from_uniform(out.yind));
            } else {
                // Regression analogue of "predict the uniform distribution":
                // pull the spurious head to the batch-mean constant predictor.
                Tensor<S> diff = nn::add_scalar(out.yind, -label_mean);
                ind_terms.push_back(nn::mul(diff, diff));
            }
        }
        res.outs.push_back(std::move(out));
    }

    Tensor<S> total = Tensor<S>::scalar(S(0));
    if (!task_terms.empty()) {
        Tensor<S> l = nn::mean_of(std::move(task_terms));
        res.suf = double(l.item());
        total = nn::add(total, l);
    }
    if (!ind_terms.empty()) {
        Tensor<S> l = nn::mean_of(std::move(ind_terms));
        res.ind = double(l.item());
        total = nn::add(total, l);
    }
    if (model.hp.loss_intervention && ctx.mode == Mode::train) {
        InterventionResult<S> iv = intervention_batch(model, batch, res.outs, ctx);
        if (iv.loss.defined()) {
            res.inter = double(iv.loss.item());
            total = nn::add(total, iv.loss);
        }
    }
    res.total = total;
    return res;
}

}  // namespace cdds::model
