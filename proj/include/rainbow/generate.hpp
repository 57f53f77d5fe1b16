#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

/// Properly coloured K_n: round-robin 1-factorization for even n, the
/// i+j mod n colouring for odd n.
EdgeColouredGraph generate_kn_proper(int n);

/// K_n with a colouring pushed as close as possible to the requested global
/// bound g and local bound ell; throws InfeasibleParamsError when no colour
/// assignment can respect the caps.
EdgeColouredGraph generate_kn_bounded(int n, int g, int ell, std::uint64_t seed);

/// Seeded G(n, p) with a (g, ell)-bounded colouring.
EdgeColouredGraph generate_gnp_coloured(int n, double p, int g, int ell, std::uint64_t seed);

/// Cyclic Latin square: A[i][j] = (i + j) mod n.
std::vector<std::vector<long long>> generate_latin_cyclic(int n);

/// Cyclic square randomized by intercalate flips plus a row/column/symbol
/// shuffle; stays Latin throughout.
std::vector<std::vector<long long>> generate_latin_random(int n, std::uint64_t seed);

std::vector<std::vector<long long>> read_array_csv(const std::string& path);
void write_array_csv(const std::string& path, const std::vector<std::vector<long long>>& a);

} // namespace rainbow
