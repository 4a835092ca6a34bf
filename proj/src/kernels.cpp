#include "interf/kernels.hpp"

#include <exception>
#include <stdexcept>

namespace interf::kernels {

namespace {

void require_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw std::invalid_argument("batch input and output sizes differ");
}

CoherencyMatrix push(std::span<const Element2> chain, CoherencyMatrix c) {
  for (const Element2& g : chain) c = conjugate(c, g);
  return c;
}

// Exceptions may not cross an OpenMP region; capture the first one and
// rethrow after the loop.
class FirstError {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(interf_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

namespace serial {

void apply(const Transform4& t, std::span<const StokesVector> in, std::span<StokesVector> out) {
  require_sizes(in.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = t * in[i];
}

void lift_all(std::span<const Element2> in, std::span<Transform4> out) {
  require_sizes(in.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = lift(in[i]);
}

void propagate(std::span<const Element2> chain, std::span<const CoherencyMatrix> in,
               std::span<CoherencyMatrix> out) {
  require_sizes(in.size(), out.size());
  for (const Element2& g : chain) require_unimodular(g);
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = push(chain, in[i]);
}

void classify_all(std::span<const StokesVector> in, std::span<StateClass> out, double rel_tol) {
  require_sizes(in.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = classify(in[i], rel_tol);
}

}  // namespace serial

namespace parallel {

void apply(const Transform4& t, std::span<const StokesVector> in, std::span<StokesVector> out) {
  require_sizes(in.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = t * in[i];
}

void lift_all(std::span<const Element2> in, std::span<Transform4> out) {
  require_sizes(in.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) err.run([&] { out[i] = lift(in[i]); });
  err.rethrow();
}

void propagate(std::span<const Element2> chain, std::span<const CoherencyMatrix> in,
               std::span<CoherencyMatrix> out) {
  require_sizes(in.size(), out.size());
  for (const Element2& g : chain) require_unimodular(g);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = push(chain, in[i]);
}

void classify_all(std::span<const StokesVector> in, std::span<StateClass> out, double rel_tol) {
  require_sizes(in.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) err.run([&] { out[i] = classify(in[i], rel_tol); });
  err.rethrow();
}

}  // namespace parallel

}  // namespace interf::kernels
