#pragma once

#include <cstdint>
#include <random>

#include "k3lat/embedding.hpp"

namespace k3test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  long nonzero(long bound);

 private:
  std::mt19937_64 engine_;
};

// Nondegenerate symmetric integer Gram with entries in [-bound, bound].
k3lat::Lattice random_form(Rng& rng, std::size_t rank, long bound);

// Same, with even diagonal.
k3lat::Lattice random_even_form(Rng& rng, std::size_t rank, long bound);

// Product of random elementary operations.
k3lat::IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps);

// Rows in [-bound, bound], saturated by primitive_closure; degenerate draws are redrawn.
k3lat::SublatticeEmbedding random_primitive_sublattice(Rng& rng, const k3lat::Lattice& ambient, std::size_t rank,
                                                       long bound);

}  // namespace k3test
