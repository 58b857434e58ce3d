#include "run/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "io/checkpoint.hpp"
#include "nn/params.hpp"

namespace cdds::run {

namespace fs = std::filesystem;

const std::vector<double>& CellCache::get(const data::Dataset& ds, const std::string& cell_id) {
    auto it = norm.find(cell_id);
    if (it != norm.end()) return it->second;
    auto [ins, _] = norm.emplace(cell_id, data::normalize_expression(ds.raw_expression(cell_id), stats));
    return ins->second;
}

double predict_pair(model::Model<float>& m, const model::DrugGraph& a, const model::DrugGraph& b,
                    const std::vector<double>& cell_norm, bool symmetrize) {
    model::RunContext<float> ctx;
    ctx.mode = model::Mode::eval;
    double yab = double(m.forward_pair(a, b, cell_norm, std::nullopt, ctx).yhat.item());
    if (!symmetrize) return yab;
    double yba = double(m.forward_pair(b, a, cell_norm, std::nullopt, ctx).yhat.item());
    return 0.5 * (yab + yba);
}

EvalOutput evaluate_model(model::Model<float>& m, const data::Dataset& ds, CellCache& cells,
                          const std::vector<size_t>& idx, const RunConfig& rc) {
    EvalOutput out;
    out.scores.reserve(idx.size());
    for (size_t i : idx) {
        const data::SynergySample& s = ds.samples[i];
        const auto& ga = ds.drug(s.drug_a).graph;
        const auto& gb = ds.drug(s.drug_b).graph;
        double y = predict_pair(m, ga, gb, cells.get(ds, s.cell), m.hp.symmetrize_pairs);
        out.scores.push_back(y);
        out.labels.push_back(s.label);
        out.targets.push_back(s.score);
    }
    if (rc.task == model::Task::classification)
        out.report = metrics::classification_metrics(out.scores, out.labels, rc.metric_threshold);
    else
        out.report = metrics::regression_metrics(out.scores, out.targets);
    return out;
}

namespace {

void append_metrics_row(std::ofstream& f, int epoch, const char* split,
                        const metrics::EvalReport& r) {
    char buf[256];
    auto items = r.items();
    std::snprintf(buf, sizeof buf, "%d,%s,%.6f,%.6f,%.6f,%.6f\n", epoch, split,
                  items[0].second, items[1].second, items[2].second, items[3].second);
    f << buf;
}

bool better(const metrics::EvalReport& cand, const metrics::EvalReport& best, model::Task task) {
    if (task == model::Task::classification) return cand.auc > best.auc;
    return cand.rmse < best.rmse;
}

}  // namespace

TrainArtifacts train_model(const RunConfig& rc, const data::Dataset& ds,
                           const std::vector<size_t>& train_idx,
                           const std::vector<size_t>& val_idx, const std::string& run_dir,
                           const std::string& tag) {
    if (train_idx.empty()) throw DataError("training selection is empty");
    fs::create_directories(run_dir);

    auto m = model::Model<float>::build(rc.hp, rc.task, rc.seed);

    CellCache cells;
    cells.stats = data::compute_norm_stats(ds, train_idx);

    std::string suffix = tag.empty() ? "" : "." + tag;
    auto gumbel = rng::named_stream(rc.seed, "gumbel.main" + suffix);
    auto noise = rng::named_stream(rc.seed, "noise.main" + suffix);
    auto dropout = rng::named_stream(rc.seed, "dropout" + suffix);
    auto gumbel_inter = rng::named_stream(rc.seed, "gumbel.inter" + suffix);
    auto permute = rng::named_stream(rc.seed, "permute" + suffix);

    std::ofstream log(fs::path(run_dir) / "train_log.csv");
    log << "epoch,step,l_tol,l_suf,l_ind,l_inter\n";
    std::ofstream mlog(fs::path(run_dir) / "metrics.csv");
    mlog << (rc.task == model::Task::classification ? "epoch,split,auc,aupr,kappa,f1\n"
                                                    : "epoch,split,rmse,mae,pcc,r2\n");

    TrainArtifacts art;
    art.best_checkpoint = (fs::path(run_dir) / "best.ckpt").string();
    art.last_checkpoint = (fs::path(run_dir) / "last.ckpt").string();

    const std::string config_text = rc.canonical_text();
    int64_t step = 0;
    char buf[256];
    for (int epoch = 0; epoch < rc.epochs; ++epoch) {
        auto batches = data::make_batches(train_idx, rc.batch_size, rc.seed, epoch, true);
        for (size_t bi = 0; bi < batches.size(); ++bi) {
            std::vector<model::BatchSample> batch;
            batch.reserve(batches[bi].size() * (rc.hp.symmetrize_pairs ? 2 : 1));
            for (size_t si : batches[bi]) {
                const data::SynergySample& s = ds.samples[si];
                double label = rc.task == model::Task::classification ? double(s.label) : s.score;
                const auto& cell = cells.get(ds, s.cell);
                batch.push_back({&ds.drug(s.drug_a).graph, &ds.drug(s.drug_b).graph, &cell, label});
                if (rc.hp.symmetrize_pairs)
                    batch.push_back(
                        {&ds.drug(s.drug_b).graph, &ds.drug(s.drug_a).graph, &cell, label});
            }
            model::RunContext<float> ctx;
            ctx.mode = model::Mode::train;
            ctx.gumbel = &gumbel;
            ctx.noise = &noise;
            ctx.dropout = &dropout;
            ctx.gumbel_inter = &gumbel_inter;
            ctx.permute = &permute;

            auto losses = model::batch_losses(m, batch, ctx);
            double total = double(losses.total.item());
            if (!std::isfinite(total))
                throw NumericError("non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch " + std::to_string(bi));
            m.store.zero_grads();
            nn::backward(losses.total);
            auto grads = m.store.collect_grads();
            nn::adam_step(m.store, grads, rc.lr, rc.beta1, rc.beta2, rc.eps_opt);

            std::snprintf(buf, sizeof buf, "%d,%lld,%.6f,%.6f,%.6f,%.6f\n", epoch,
                          (long long)step, total, losses.suf, losses.ind, losses.inter);
            log << buf;
            ++step;
        }

        EvalOutput train_eval = evaluate_model(m, ds, cells, train_idx, rc);
        append_metrics_row(mlog, epoch, "train", train_eval.report);
        if (!val_idx.empty()) {
            EvalOutput val_eval = evaluate_model(m, ds, cells, val_idx, rc);
            append_metrics_row(mlog, epoch, "val", val_eval.report);
            if (art.best_epoch < 0 || better(val_eval.report, art.best_val, rc.task)) {
                art.best_val = val_eval.report;
                art.best_epoch = epoch;
                io::save_checkpoint(art.best_checkpoint, m.store, cells.stats, config_text);
            }
        }
    }
    io::save_checkpoint(art.last_checkpoint, m.store, cells.stats, config_text);
    if (val_idx.empty()) {
        art.best_epoch = rc.epochs - 1;
        io::save_checkpoint(art.best_checkpoint, m.store, cells.stats, config_text);
    }
    return art;
}

}  // namespace cdds::run
