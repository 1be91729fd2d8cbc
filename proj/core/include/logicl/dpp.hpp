#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logicl/embedding.hpp"
#include "logicl/log_model.hpp"

namespace logicl {

/// Residuals below this are treated as exactly zero.
inline constexpr double kResidualClampEps = 1e-12;

/// Selection stops early once the best remaining gain falls below this.
inline constexpr double kRankExhaustEps = 1e-10;

/// Result of greedy diverse-subset selection. `indices` point into the input
/// span, in selection order; `gains[r]` is the conditional gain of pick r —
/// the residual d_j^2 at selection time, which equals the determinant ratio
/// det(L_{S+j}) / det(L_S) of the similarity kernel.
struct DppSelection {
  std::vector<std::size_t> indices;
  std::vector<double> gains;
  bool rank_exhausted = false;  // stopped early: remaining gains ~ 0
};

/// Greedily selects up to `k` mutually dissimilar items.
///
/// Works on the cosine kernel L of the normalized embeddings without ever
/// materializing it: kernel rows are dot products computed on demand. The
/// first pick maximizes d_i^2 = L_ii; after picking j, every remaining item i
/// extends its orthogonalization row with e_i = (L_ji - c_j.c_i) / d_j and
/// lowers its residual by e_i^2, and the next pick is the largest remaining
/// residual. Ties go to the lowest index. Residuals are clamped at zero, and
/// selection stops early when every remaining residual is numerically zero
/// (the kernel rank is exhausted). O(k^2 n) coefficient work plus k*n kernel
/// dot products.
///
/// Expects duplicates to have been removed beforehand (see dedup_by_content);
/// throws Errc::invalid_k for k == 0 and Errc::config_error when logs and
/// embeddings are not aligned.
DppSelection sample_candidates(std::span<const LogRecord> logs,
                               std::span<const EmbeddingVector> embeddings,
                               std::size_t k);

/// Reference selector used to cross-check sample_candidates: each round it
/// evaluates det(L_{S+i}) / det(L_S) for every remaining item by explicit
/// determinants. Same tie and early-stop policy. Intended for small kernels.
/// Throws Errc::kernel_not_psd when a conditional gain falls below -1e-8 and
/// Errc::config_error for a non-square kernel.
DppSelection greedy_by_determinant(const std::vector<std::vector<double>>& kernel,
                                   std::size_t k);

/// Pairwise cosine Gram matrix of the embeddings, unit diagonal for
/// normalized inputs. Input to greedy_by_determinant.
std::vector<std::vector<double>> gram_matrix(std::span<const EmbeddingVector> embeddings);

/// Indices of the first occurrence of each distinct content, comparing
/// whitespace-collapsed text; order-preserving. Duplicates would make the
/// kernel singular and waste candidate budget.
std::vector<std::size_t> dedup_by_content(std::span<const LogRecord> logs);

}  // namespace logicl
