#pragma once

// Rank kernels. Each kernel has a serial reference version and an OpenMP
// version; the two must return identical ranks on every input, which the
// kernel tests and the benchmark check.

#include "efh/matrix.hpp"

#include <cstddef>

namespace efh::kernels {

/// Gaussian elimination on a dense copy; pivots chosen by smallest bit size.
std::size_t dense_rank_serial(const Matrix& m);
/// Same elimination with the row updates of each step split across threads.
std::size_t dense_rank_parallel(const Matrix& m);

/// Ordered column elimination on sparse columns. Each new column is fully
/// reduced against all earlier pivots; its pivot is the entry of smallest bit
/// size.
std::size_t sparse_rank_serial(const Matrix& m);
/// Columns are reduced in blocks: against the frozen pivot set in parallel,
/// then serially against the pivots found inside the block.
std::size_t sparse_rank_parallel(const Matrix& m, std::size_t block = 256);

/// Fill ratio below which `rank` uses the sparse kernel.
inline constexpr double kSparseThreshold = 0.10;

/// Number of worker threads the OpenMP kernels will use (1 without OpenMP).
int max_threads();

}  // namespace efh::kernels
