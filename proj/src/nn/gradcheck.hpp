#pragma once

#include <functional>
#include <vector>

#include "nn/tensor.hpp"
#include "util/rng.hpp"

namespace cdds::nn {

struct InputSpec {
    int rows = 1;
    int cols = 1;
    double lo = -1.0;
    double hi = 1.0;
};

using CheckFn = std::function<Tensor<double>(const std::vector<Tensor<double>>&)>;

// Compares reverse-mode gradients against central finite differences in
// 64-bit. The checked scalar is sum(f(x) * w) with fixed random weights w, so
// every output coordinate contributes. Returns the maximum relative error
// |ad - fd| / max(|ad|, |fd|, 1) over all input coordinates. The function
// must be deterministic; any sampling it does has to be frozen.
inline double gradient_check(const CheckFn& f, const std::vector<InputSpec>& specs, uint64_t seed,
                             double step = 1e-5) {
    std::vector<std::vector<double>> base(specs.size());
    {
        auto in_stream = rng::named_stream(seed, "gradcheck.inputs");
        for (size_t k = 0; k < specs.size(); ++k) {
            const auto& sp = specs[k];
            base[k].resize(size_t(sp.rows) * size_t(sp.cols));
            for (double& x : base[k]) x = sp.lo + in_stream.next_double() * (sp.hi - sp.lo);
        }
    }

    auto build_inputs = [&](bool requires_grad) {
        std::vector<Tensor<double>> ins;
        for (size_t k = 0; k < specs.size(); ++k)
            ins.push_back(Tensor<double>::from(specs[k].rows, specs[k].cols, base[k], requires_grad));
        return ins;
    };

    auto inputs = build_inputs(true);
    Tensor<double> out = f(inputs);

    std::vector<double> w(out.size());
    {
        auto w_stream = rng::named_stream(seed, "gradcheck.weights");
        for (double& x : w) x = 0.5 + w_stream.next_double();
    }

    auto weighted = [&](const Tensor<double>& o) {
        double acc = 0;
        for (size_t i = 0; i < o.size(); ++i) acc += o.values()[i] * w[i];
        return acc;
    };

    // Analytic pass: loss = sum(out * w).
    Tensor<double> wt = Tensor<double>::from(out.rows(), out.cols(), w);
    backward(sum_all(mul(out, wt)));

    double max_err = 0;
    for (size_t k = 0; k < specs.size(); ++k) {
        const auto& analytic = inputs[k].grad();
        for (size_t i = 0; i < base[k].size(); ++i) {
            double saved = base[k][i];
            base[k][i] = saved + step;
            double lp = weighted(f(build_inputs(false)));
            base[k][i] = saved - step;
            double lm = weighted(f(build_inputs(false)));
            base[k][i] = saved;
            double fd = (lp - lm) / (2.0 * step);
            double ad = analytic.empty() ? 0.0 : analytic[i];
            double err = std::abs(ad - fd) / std::max({std::abs(ad), std::abs(fd), 1.0});
            max_err = std::max(max_err, err);
        }
    }
    return max_err;
}

}  // namespace cdds::nn
