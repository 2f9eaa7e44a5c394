#pragma once

// Deliberate defects for the mutation builds of the engine. The shipped
// library is compiled with PHOTON_LATTICE_MUTATION=0.
//   1: one hopping bond of the reduced Hamiltonian has its sign flipped
//   2: the anticommutator term of the dissipator loses its factor 1/2
//   3: Method-B corner sites get a single escape channel

#ifndef PHOTON_LATTICE_MUTATION
#define PHOTON_LATTICE_MUTATION 0
#endif

namespace photon_lattice::detail {

inline constexpr int kMutation = PHOTON_LATTICE_MUTATION;

inline constexpr double kAnticommutatorWeight = kMutation == 2 ? 1.0 : 0.5;

}  // namespace photon_lattice::detail
