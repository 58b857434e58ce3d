#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "nn/tensor.hpp"
#include "util/rng.hpp"

namespace cdds::nn {

enum class Init { zeros, glorot };

// Named trainable tensors plus Adam moment buffers. Initialization draws from
// a stream keyed by (seed, "init.<name>"), so adding or removing parameters
// never shifts another parameter's initial values.
template <class S>
class ParameterStore {
public:
    uint64_t seed = 0;
    int64_t step = 0;

    explicit ParameterStore(uint64_t seed_ = 0) : seed(seed_) {}

    Tensor<S>& add(const std::string& name, int rows, int cols, Init init) {
        if (params_.count(name)) throw std::invalid_argument("parameter exists: " + name);
        Tensor<S> t = Tensor<S>::zeros(rows, cols, true);
        if (init == Init::glorot) {
            auto stream = rng::named_stream(seed, "init." + name);
            double a = std::sqrt(6.0 / double(rows + cols));
            for (S& x : t.values()) x = S((stream.next_double() * 2.0 - 1.0) * a);
        }
        auto [it, _] = params_.emplace(name, std::move(t));
        return it->second;
    }

    Tensor<S>& at(const std::string& name) {
        auto it = params_.find(name);
        if (it == params_.end()) throw std::invalid_argument("no such parameter: " + name);
        return it->second;
    }
    const Tensor<S>& at(const std::string& name) const {
        auto it = params_.find(name);
        if (it == params_.end()) throw std::invalid_argument("no such parameter: " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return params_.count(name) > 0; }

    std::map<std::string, Tensor<S>>& params() { return params_; }
    const std::map<std::string, Tensor<S>>& params() const { return params_; }

    void zero_grads() {
        for (auto& [name, t] : params_) t.zero_grad();
    }

    // Gradients harvested after a backward pass, one entry per parameter.
    std::map<std::string, std::vector<S>> collect_grads() const {
        std::map<std::string, std::vector<S>> out;
        for (const auto& [name, t] : params_) {
            if (t.grad().empty())
                throw std::runtime_error("missing gradient for parameter: " + name);
            out[name] = t.grad();
        }
        return out;
    }

    std::map<std::string, std::vector<double>> adam_m, adam_v;

private:
    std::map<std::string, Tensor<S>> params_;
};

// Bias-corrected Adam. Moment math runs in double regardless of S.
template <class S>
void adam_step(ParameterStore<S>& store, const std::map<std::string, std::vector<S>>& grads,
               double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8) {
    int64_t t = store.step + 1;
    double bc1 = 1.0 - std::pow(beta1, double(t));
    double bc2 = 1.0 - std::pow(beta2, double(t));
    for (auto& [name, param] : store.params()) {
        auto git = grads.find(name);
        if (git == grads.end())
            throw std::runtime_error("adam_step: missing gradient for parameter: " + name);
        const auto& g = git->second;
        if (g.size() != param.size())
            throw std::runtime_error("adam_step: gradient shape mismatch for " + name);
        auto& m = store.adam_m[name];
        auto& v = store.adam_v[name];
        if (m.empty()) m.assign(g.size(), 0.0);
        if (v.empty()) v.assign(g.size(), 0.0);
        auto& p = param.values();
        for (size_t i = 0; i < g.size(); ++i) {
            double gi = double(g[i]);
            m[i] = beta1 * m[i] + (1.0 - beta1) * gi;
            v[i] = beta2 * v[i] + (1.0 - beta2) * gi * gi;
            double mhat = m[i] / bc1;
            double vhat = v[i] / bc2;
            p[i] = S(double(p[i]) - lr * mhat / (std::sqrt(vhat) + eps));
        }
    }
    store.step = t;
}

}  // namespace cdds::nn
