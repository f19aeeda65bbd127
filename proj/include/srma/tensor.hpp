#pragma once

#include <cstdint>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace srma {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

namespace detail {
inline bool& grad_flag() {
  thread_local bool enabled = true;
  return enabled;
}
}  // namespace detail

inline bool grad_enabled() { return detail::grad_flag(); }

// Disables graph construction for the current scope (used for evaluation and
// for the frozen complement encoder's forward passes).
struct NoGradGuard {
  bool prev;
  NoGradGuard() : prev(detail::grad_flag()) { detail::grad_flag() = false; }
  ~NoGradGuard() { detail::grad_flag() = prev; }
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;
};

template <class T>
struct TensorT;

template <class T>
struct NodeT {
  std::vector<TensorT<T>> parents;
  std::function<void(TensorT<T>&)> backward;
};

// Dense n-dimensional value array with optional gradient buffer. Copies are
// shallow: they share the value, gradient and graph buffers. Ops never mutate
// their inputs' value arrays.
template <class T>
struct TensorT {
  std::vector<int64_t> shape;
  std::shared_ptr<std::vector<T>> data;
  std::shared_ptr<std::vector<T>> grad;
  std::shared_ptr<NodeT<T>> node;
  bool requires_grad = false;

  TensorT() = default;

  static TensorT zeros(std::vector<int64_t> shape, bool requires_grad = false) {
    TensorT t;
    t.shape = std::move(shape);
    int64_t n = 1;
    for (int64_t d : t.shape) {
      require(d > 0, "tensor dimensions must be positive");
      n *= d;
    }
    t.data = std::make_shared<std::vector<T>>(static_cast<size_t>(n), T(0));
    if (requires_grad) {
      t.requires_grad = true;
      t.grad = std::make_shared<std::vector<T>>(static_cast<size_t>(n), T(0));
    }
    return t;
  }

  static TensorT from(std::vector<int64_t> shape, std::vector<T> values,
                      bool requires_grad = false) {
    TensorT t = zeros(std::move(shape), requires_grad);
    require(values.size() == t.data->size(), "value count does not match shape");
    *t.data = std::move(values);
    return t;
  }

  static TensorT scalar(T v, bool requires_grad = false) {
    return from({1}, {v}, requires_grad);
  }

  int64_t numel() const { return static_cast<int64_t>(data ? data->size() : 0); }

  int64_t rank() const { return static_cast<int64_t>(shape.size()); }

  // Row-wise ops treat a rank-1 tensor as a single row.
  int64_t rows() const {
    require(rank() >= 1, "rows(): tensor has no shape");
    return rank() == 1 ? 1 : shape[0];
  }
  int64_t cols() const {
    require(rank() >= 1, "cols(): tensor has no shape");
    return rank() == 1 ? shape[0] : shape[rank() - 1];
  }

  T item() const {
    require(numel() == 1, "item(): tensor is not scalar");
    return (*data)[0];
  }

  void zero_grad() {
    if (grad) std::fill(grad->begin(), grad->end(), T(0));
  }

  bool all_finite() const {
    for (T v : *data) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }
};

// Reverse-mode sweep from a scalar root: seeds d(root)/d(root) = 1 and runs
// every node's backward in reverse topological order. Gradients accumulate
// additively into leaf tensors; callers zero them (adam_step does).
template <class T>
void backward(TensorT<T>& root) {
  require(root.numel() == 1, "backward(): root must be a scalar");
  require(root.requires_grad && root.grad != nullptr,
          "backward(): root does not track gradients");
  (*root.grad)[0] += T(1);
  if (!root.node) return;

  struct Frame {
    TensorT<T> t;
    size_t next_parent;
  };
  std::vector<TensorT<T>> order;
  std::unordered_set<const NodeT<T>*> visited;
  std::vector<Frame> stack;
  visited.insert(root.node.get());
  stack.push_back({root, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    const auto& parents = f.t.node->parents;
    bool descended = false;
    while (f.next_parent < parents.size()) {
      const TensorT<T>& p = parents[f.next_parent];
      ++f.next_parent;
      if (p.node && !visited.count(p.node.get())) {
        visited.insert(p.node.get());
        stack.back() = f;
        stack.push_back({p, 0});
        descended = true;
        break;
      }
    }
    if (descended) continue;
    stack.back() = f;
    order.push_back(f.t);
    stack.pop_back();
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    it->node->backward(*it);
  }
}

using Tensor = TensorT<float>;

}  // namespace srma
