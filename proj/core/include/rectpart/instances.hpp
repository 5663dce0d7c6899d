#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rectpart/grid.hpp"

/**
 * @brief Synthetic instance generators and plain-text matrix/partition files.
 *
 * Generators are deterministic functions of their GenSpec. The PRNG is
 * std::mt19937_64 (its output sequence is fixed by the standard), and all
 * draws go through the two helpers below rather than the standard
 * distributions, whose streams are implementation-defined. Cells are drawn
 * in row-major order; gravity reference points are drawn before any cell,
 * x coordinate first.
 */
namespace rectpart {

enum class GenKind { kUniform, kDiagonal, kPeak, kMultiPeak };

const char *to_string(GenKind k);
GenKind gen_kind_from_string(const std::string &s);

struct GenSpec {
    GenKind kind = GenKind::kUniform;
    int n1 = 1, n2 = 1;
    double delta = 1.0;  // uniform only; cells are drawn from [1000, round(1000*delta)]
    int peaks = 3;       // multi-peak only
    std::uint64_t seed = 0;

    std::string describe() const;
};

/// Uniform integer in [lo, hi] by rejection sampling; portable.
std::uint64_t uniform_index(std::mt19937_64 &rng, std::uint64_t lo, std::uint64_t hi);
/// Uniform real in [0, 1) from the top 53 bits; portable.
double uniform_real01(std::mt19937_64 &rng);

/// Every cell an independent draw from [1000, round(1000*delta)]; delta >= 1.
LoadMatrix gen_uniform(const GenSpec &spec);

/**
 * @brief Diagonal / peak / multi-peak: cell = round(U[0, n1*n2] / (d + 0.1))
 * where d is the Euclidean distance to the reference: the closest point of
 * the (1,1)-(n1,n2) diagonal segment, one random point, or the nearest of
 * `peaks` random points. `refs_out`, when given, receives the reference
 * points actually drawn (empty for diagonal).
 */
LoadMatrix gen_gravity(const GenSpec &spec,
                       std::vector<std::pair<int, int>> *refs_out = nullptr);

/// Dispatch on spec.kind.
LoadMatrix generate(const GenSpec &spec);

/**
 * Matrix file: line 1 is "n1 n2", then n1 lines of n2 whitespace-separated
 * non-negative integers; ASCII, newline-terminated. Partition file: line 1
 * is "n1 n2 m", then m lines "x1 x2 y1 y2" (1-based inclusive). Parse errors
 * carry the offending line number.
 */
LoadMatrix read_matrix(std::istream &in);
LoadMatrix read_matrix(const std::string &path);
void write_matrix(const LoadMatrix &matrix, std::ostream &out);
void write_matrix(const LoadMatrix &matrix, const std::string &path);

Partition read_partition(std::istream &in);
Partition read_partition(const std::string &path);
void write_partition(const Partition &p, std::ostream &out);
void write_partition(const Partition &p, const std::string &path);

}  // namespace rectpart
