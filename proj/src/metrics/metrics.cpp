#include "metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace cdds::metrics {

std::vector<std::pair<std::string, double>> EvalReport::items() const {
    if (classification)
        return {{"auc", auc}, {"aupr", aupr}, {"kappa", kappa}, {"f1", f1}};
    return {{"rmse", rmse}, {"mae", mae}, {"pcc", pcc}, {"r2", r2}};
}

std::string EvalReport::to_csv() const {
    std::string out = "metric,value\n";
    char buf[64];
    for (const auto& [k, v] : items()) {
        std::snprintf(buf, sizeof buf, "%s,%.6f\n", k.c_str(), v);
        out += buf;
    }
    return out;
}

std::string EvalReport::to_kv() const {
    std::string out;
    char buf[64];
    for (const auto& [k, v] : items()) {
        std::snprintf(buf, sizeof buf, "%s = %.6f\n", k.c_str(), v);
        out += buf;
    }
    return out;
}

EvalReport classification_metrics(const std::vector<double>& scores,
                                  const std::vector<int>& labels, double threshold) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("LengthMismatch: scores vs labels");
    size_t n = scores.size();
    if (n < 2) throw std::invalid_argument("LengthMismatch: need at least 2 samples");
    size_t n_pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0/1");
        n_pos += size_t(y);
    }
    size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("SingleClass: AUC/AUPR undefined with one class");

    EvalReport r;
    r.classification = true;
    r.n = n;
    r.threshold = threshold;

    // AUC: average ranks over ties, then the Mann-Whitney statistic.
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });
    std::vector<double> rank(n);
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        double avg = 0.5 * (double(i + 1) + double(j));  // ranks are 1-based
        for (size_t t = i; t < j; ++t) rank[idx[t]] = avg;
        i = j;
    }
    double rank_pos = 0;
    for (size_t i = 0; i < n; ++i)
        if (labels[i] == 1) rank_pos += rank[i];
    r.auc = (rank_pos - double(n_pos) * double(n_pos + 1) / 2.0) / (double(n_pos) * double(n_neg));

    // AUPR: average precision over distinct-score groups, descending.
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return scores[a] > scores[b]; });
    double tp = 0, fp = 0, prev_recall = 0, ap = 0;
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        for (size_t t = i; t < j; ++t) {
            if (labels[idx[t]] == 1) tp += 1;
            else fp += 1;
        }
        double precision = tp / (tp + fp);
        double recall = tp / double(n_pos);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    r.aupr = ap;

    // Thresholded confusion counts for kappa and F1.
    double tp2 = 0, fp2 = 0, fn2 = 0, tn2 = 0;
    for (size_t i = 0; i < n; ++i) {
        bool pred = scores[i] > threshold;
        if (pred && labels[i] == 1) tp2 += 1;
        else if (pred) fp2 += 1;
        else if (labels[i] == 1) fn2 += 1;
        else tn2 += 1;
    }
    double nn = double(n);
    double po = (tp2 + tn2) / nn;
    double pe = ((tp2 + fp2) * (tp2 + fn2) + (fn2 + tn2) * (fp2 + tn2)) / (nn * nn);
    r.kappa = pe >= 1.0 ? 0.0 : (po - pe) / (1.0 - pe);
    double f1_den = 2 * tp2 + fp2 + fn2;
    r.f1 = f1_den == 0 ? 0.0 : 2 * tp2 / f1_den;
    return r;
}

EvalReport regression_metrics(const std::vector<double>& preds,
                              const std::vector<double>& targets) {
    if (preds.size() != targets.size())
        throw std::invalid_argument("LengthMismatch: preds vs targets");
    size_t n = preds.size();
    if (n < 2) throw std::invalid_argument("LengthMismatch: need at least 2 samples");

    double mean_t = 0, mean_p = 0;
    for (size_t i = 0; i < n; ++i) {
        mean_t += targets[i];
        mean_p += preds[i];
    }
    mean_t /= double(n);
    mean_p /= double(n);

    double ss_res = 0, abs_err = 0, ss_tot = 0, cov = 0, var_p = 0;
    for (size_t i = 0; i < n; ++i) {
        double d = preds[i] - targets[i];
        ss_res += d * d;
        abs_err += std::abs(d);
        double dt = targets[i] - mean_t;
        double dp = preds[i] - mean_p;
        ss_tot += dt * dt;
        cov += dp * dt;
        var_p += dp * dp;
    }
    if (ss_tot == 0) throw std::invalid_argument("ZeroVariance: constant targets");

    EvalReport r;
    r.classification = false;
    r.n = n;
    r.rmse = std::sqrt(ss_res / double(n));
    r.mae = abs_err / double(n);
    r.pcc = var_p == 0 ? 0.0 : cov / std::sqrt(var_p * ss_tot);
    r.r2 = 1.0 - ss_res / ss_tot;
    return r;
}

}  // namespace cdds::metrics
