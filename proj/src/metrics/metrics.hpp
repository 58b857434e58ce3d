#pragma once

#include <string>
#include <vector>

namespace cdds::metrics {

struct EvalReport {
    bool classification = true;
    double auc = 0, aupr = 0, kappa = 0, f1 = 0;    // classification
    double rmse = 0, mae = 0, pcc = 0, r2 = 0;      // regression
    size_t n = 0;
    double threshold = 0.5;

    // metric,value CSV rows and a key-value block for run logs
    std::string to_csv() const;
    std::string to_kv() const;
    std::vector<std::pair<std::string, double>> items() const;
};

// AUC via Mann-Whitney with tie correction, AUPR as average precision, kappa
// and F1 on scores thresholded at `threshold` (positive class = 1).
// Throws "SingleClass" when labels are all equal, "LengthMismatch" otherwise.
EvalReport classification_metrics(const std::vector<double>& scores,
                                  const std::vector<int>& labels, double threshold = 0.5);

// Throws "ZeroVariance" when targets are all identical.
EvalReport regression_metrics(const std::vector<double>& preds,
                              const std::vector<double>& targets);

}  // namespace cdds::metrics
