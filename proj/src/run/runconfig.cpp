#include "run/runconfig.hpp"

namespace cdds::run {

RunConfig RunConfig::from_config(const cfg::Config& c) {
    RunConfig rc;
    rc.raw = c;
    rc.drugs_csv = c.require_str("dataset.drugs");
    rc.cells_csv = c.require_str("dataset.cells");
    rc.samples_csv = c.require_str("dataset.samples");
    rc.genes_path = c.require_str("dataset.genes");

    rc.task = model::task_from_string(c.get_str("task.task", "classification"));
    rc.protocol = data::protocol_from_string(c.get_str("protocol.protocol", "warm"));
    rc.k = int(c.get_int("protocol.k", 5));
    rc.seed = uint64_t(c.get_int("run.seed", 0));

    model::Hyperparams& hp = rc.hp;
    hp.d = int(c.get_int("model.d", 64));
    hp.gin_layers = int(c.get_int("model.gin_layers", 3));
    hp.temperature = c.get_double("model.temperature", 1.0);
    hp.set2set_steps = int(c.get_int("model.set2set_steps", 3));
    hp.dropout = c.get_double("model.dropout", 0.2);
    hp.intervention_k = int(c.get_int("model.intervention_k", 1));
    hp.cell_embed = int(c.get_int("model.cell_embed", 128));
    hp.head_hidden1 = int(c.get_int("model.head_hidden1", 512));
    hp.head_hidden2 = int(c.get_int("model.head_hidden2", 128));
    hp.use_disentangle = c.get_bool("loss.disentangle", true);
    hp.loss_sufficiency = c.get_bool("loss.sufficiency", true);
    hp.loss_independence = c.get_bool("loss.independence", true);
    hp.loss_intervention = c.get_bool("loss.intervention", true);
    hp.symmetrize_pairs = c.get_bool("model.symmetrize_pairs", false);
    hp.eval_noise = model::noise_mode_from_string(c.get_str("model.eval_noise", "mean"));
    if (!hp.use_disentangle) {
        // the ablation variant has no spurious representations to regularize
        hp.loss_independence = false;
        hp.loss_intervention = false;
    }

    rc.epochs = int(c.get_int("train.epochs", 30));
    rc.batch_size = int(c.get_int("train.batch_size", 128));
    rc.lr = c.get_double("train.lr", 1e-3);
    rc.beta1 = c.get_double("train.beta1", 0.9);
    rc.beta2 = c.get_double("train.beta2", 0.999);
    rc.eps_opt = c.get_double("train.eps", 1e-8);

    rc.explain_threshold = c.get_double("explain.threshold", 0.7);
    rc.metric_threshold = c.get_double("task.threshold", 0.5);

    hp.validate();
    if (rc.epochs < 1 || rc.batch_size < 1) throw std::invalid_argument("bad train settings");
    return rc;
}

}  // namespace cdds::run
