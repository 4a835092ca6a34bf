#pragma once

// Batch kernels over many independent states or elements. `serial` is the
// reference implementation; `parallel` splits the outer loop with OpenMP and
// must produce bit-identical results (each item is computed by the same
// scalar code path).

#include <span>

#include "interf/little_group.hpp"
#include "interf/stokes.hpp"

namespace interf::kernels {

namespace serial {

void apply(const Transform4& t, std::span<const StokesVector> in, std::span<StokesVector> out);
void lift_all(std::span<const Element2> in, std::span<Transform4> out);

/// Pushes every input through the chain (chain.front() first) by conjugation.
void propagate(std::span<const Element2> chain, std::span<const CoherencyMatrix> in,
               std::span<CoherencyMatrix> out);

void classify_all(std::span<const StokesVector> in, std::span<StateClass> out,
                  double rel_tol = kClassifyTol);

}  // namespace serial

namespace parallel {

void apply(const Transform4& t, std::span<const StokesVector> in, std::span<StokesVector> out);
void lift_all(std::span<const Element2> in, std::span<Transform4> out);
void propagate(std::span<const Element2> chain, std::span<const CoherencyMatrix> in,
               std::span<CoherencyMatrix> out);
void classify_all(std::span<const StokesVector> in, std::span<StateClass> out,
                  double rel_tol = kClassifyTol);

}  // namespace parallel

}  // namespace interf::kernels
