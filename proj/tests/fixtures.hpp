#pragma once

#include <set>
#include <string>
#include <vector>

#include "mlat/mlat.hpp"

namespace fixtures {

using namespace mlat;

inline IntMatrix hex_M1() { return {{-1, 1, 0}, {-1, 0, 0}, {0, 0, -1}}; }
inline IntMatrix hex_M2() { return {{-1, 1, 0}, {0, 1, 0}, {0, 0, 1}}; }

inline GroupPresentation hexagonal() {
  return {3, 1, {{hex_M1(), Permutation({0, 1})}, {hex_M2(), Permutation({0, 1})}}};
}

// n = 1, N = 1, M = [1] with the swap. Not a representation in the strict
// sense (M is the identity while sigma is not), so systems are built from an
// explicit decomposition.
inline GroupPresentation swap_toy() {
  return {1, 1, {{IntMatrix{{1}}, Permutation({1, 0})}}};
}

inline MasterSystem swap_system() {
  GroupPresentation p = swap_toy();
  return build_system(p, smith_decompose(build_master_matrix(p)));
}

inline GroupPresentation cycle3() {
  return {2, 2, {{IntMatrix{{0, -1}, {1, -1}}, Permutation({1, 2, 0})}}};
}

inline GroupPresentation identity_presentation(std::size_t n, std::size_t N) {
  return {n, N, {{IntMatrix::identity(n), Permutation::identity(N + 1)}}};
}

inline IntMatrix hex_L() {
  return {{-2, 1, 0}, {-1, -1, 0}, {0, 0, -2}, {-2, 1, 0}, {0, 0, 0}, {0, 0, 0}};
}

// A hand-computed decomposition hex_L = hex_U D hex_V (U and V are not unique).
inline IntMatrix hex_U() {
  return {{-2, 3, 1, 0, 0, 0}, {-1, 0, 0, 0, 0, 0}, {0, -2, -1, 0, 0, 0},
          {-2, 3, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
}

inline IntMatrix hex_V() { return {{1, 1, 0}, {0, 3, -2}, {0, -1, 1}}; }

inline RatVector rv(std::initializer_list<const char*> xs) {
  RatVector v;
  for (const char* x : xs)
    v.emplace_back(x);
  return v;
}

inline std::set<RatVector> p0_set(const std::vector<SolutionFamily>& fams) {
  std::set<RatVector> s;
  for (const SolutionFamily& f : fams)
    s.insert(flatten(f.P0));
  return s;
}

inline std::set<RatVector> hex_P() {
  return {rv({"2/3", "1/3", "1/2"}), rv({"1/3", "2/3", "0"}), rv({"0", "0", "1/2"}),
          rv({"2/3", "1/3", "0"}), rv({"1/3", "2/3", "1/2"})};
}

} // namespace fixtures
