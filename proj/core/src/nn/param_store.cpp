#include "smigan/nn/param_store.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smigan::nn {

Param& ParamStore::add(const std::string& name, std::vector<std::size_t> shape) {
  if (index_.count(name)) throw std::logic_error("duplicate parameter: " + name);
  auto p = std::make_unique<Param>();
  p->name = name;
  p->value = Tensor(shape);
  p->grad = Tensor(shape);
  p->m = Tensor(shape);
  p->v = Tensor(std::move(shape));
  params_.push_back(std::move(p));
  index_[name] = params_.back().get();
  return *params_.back();
}

Param& ParamStore::at(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("no parameter named " + name);
  return *it->second;
}

const Param& ParamStore::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("no parameter named " + name);
  return *it->second;
}

void ParamStore::zero_grad() {
  for (auto& p : params_) p->grad.fill(0.0);
}

void ParamStore::clip_gradients(double lo, double hi) {
  for (auto& p : params_) {
    double* g = p->grad.data();
    for (std::size_t i = 0; i < p->grad.numel(); ++i) g[i] = std::clamp(g[i], lo, hi);
  }
}

void ParamStore::adam_update(const AdamConfig& cfg) {
  ++step_;
  const double t = static_cast<double>(step_);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (auto& p : params_) {
    double* w = p->value.data();
    const double* g = p->grad.data();
    double* m = p->m.data();
    double* v = p->v.data();
    for (std::size_t i = 0; i < p->value.numel(); ++i) {
      double grad = g[i] + cfg.weight_decay * w[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grad * grad;
      double m_hat = m[i] / bc1;
      double v_hat = v[i] / bc2;
      w[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
  }
}

double ParamStore::value_l2_squared() const {
  double sum = 0.0;
  for (const auto& p : params_) {
    const double* w = p->value.data();
    for (std::size_t i = 0; i < p->value.numel(); ++i) sum += w[i] * w[i];
  }
  return sum;
}

void ParamStore::check_finite(const std::string& context) const {
  for (const auto& p : params_) {
    if (!p->value.all_finite() || !p->grad.all_finite())
      throw DivergenceError("non-finite values in " + p->name + " during " + context);
  }
}

}  // namespace smigan::nn
