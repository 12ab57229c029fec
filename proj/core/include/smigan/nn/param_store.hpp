#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "smigan/nn/tensor.hpp"

namespace smigan::nn {

/// Named parameter with its gradient accumulator and Adam moments.
struct Param {
  std::string name;
  Tensor value;
  Tensor grad;
  Tensor m;
  Tensor v;
};

struct AdamConfig {
  double lr = 5e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;  // L2: adds weight_decay * param to the gradient
};

/// Owns model parameters in insertion order (serialization order) with an
/// Adam step counter shared across the store.
class ParamStore {
 public:
  Param& add(const std::string& name, std::vector<std::size_t> shape);
  Param& at(const std::string& name);
  const Param& at(const std::string& name) const;

  const std::vector<std::unique_ptr<Param>>& params() const { return params_; }
  std::vector<std::unique_ptr<Param>>& params() { return params_; }

  std::int64_t step() const { return step_; }
  void set_step(std::int64_t s) { step_ = s; }

  void zero_grad();

  /// Clamps every gradient component into [lo, hi].
  void clip_gradients(double lo = -0.1, double hi = 0.1);

  /// Bias-corrected Adam; the L2 term is applied to the gradient before
  /// the moment updates.
  void adam_update(const AdamConfig& cfg);

  /// Sum of squared parameter values (for reporting the L2 penalty).
  double value_l2_squared() const;

  /// Throws DivergenceError if any value or gradient is non-finite.
  void check_finite(const std::string& context) const;

 private:
  std::vector<std::unique_ptr<Param>> params_;
  std::unordered_map<std::string, Param*> index_;
  std::int64_t step_ = 0;
};

/// Raised when training produces non-finite numbers.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace smigan::nn
