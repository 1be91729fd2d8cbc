#include "logicl/dpp.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "logicl/errors.hpp"

namespace logicl {

namespace {

/// Argmax over unselected items; strict > keeps ties at the lowest index.
std::size_t best_unselected(const std::vector<double>& score, const std::vector<char>& selected) {
  std::size_t best = score.size();
  double best_value = -1.0;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (selected[i]) continue;
    if (best == score.size() || score[i] > best_value) {
      best = i;
      best_value = score[i];
    }
  }
  return best;
}

double determinant(std::vector<double> m, std::size_t n) {
  // Gaussian elimination with partial pivoting; n stays small here.
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(m[row * n + col]) > std::abs(m[pivot * n + col])) pivot = row;
    }
    if (m[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
      det = -det;
    }
    det *= m[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = m[row * n + col] / m[col * n + col];
      for (std::size_t j = col; j < n; ++j) m[row * n + j] -= factor * m[col * n + j];
    }
  }
  return det;
}

}  // namespace

DppSelection sample_candidates(std::span<const LogRecord> logs,
                               std::span<const EmbeddingVector> embeddings,
                               std::size_t k) {
  if (k == 0) raise(Errc::invalid_k, "candidate count must be at least 1");
  if (logs.size() != embeddings.size()) {
    raise(Errc::config_error, "logs (" + std::to_string(logs.size()) + ") and embeddings (" +
                                  std::to_string(embeddings.size()) + ") are not aligned");
  }

  const std::size_t n = embeddings.size();
  DppSelection result;
  if (n == 0) return result;

  const std::size_t target = std::min(k, n);
  // Self-cosine is exactly one, so the kernel has a unit diagonal; computing
  // it as a dot product would leave rounding noise that breaks the
  // lowest-index tie policy of the first pick.
  std::vector<double> residual(n, 1.0);

  // Orthogonalization coefficients, row per item, one column per completed
  // round. Flat n x target block.
  std::vector<double> coeff(n * target, 0.0);
  std::vector<char> selected(n, 0);

  result.indices.reserve(target);
  result.gains.reserve(target);
  while (result.indices.size() < target) {
    const std::size_t j = best_unselected(residual, selected);
    if (residual[j] < kRankExhaustEps) {
      result.rank_exhausted = true;
      break;
    }
    result.indices.push_back(j);
    result.gains.push_back(residual[j]);
    selected[j] = 1;
    if (result.indices.size() == target) break;

    const std::size_t round = result.indices.size() - 1;  // columns 0..round-1 are filled
    const double dj = std::sqrt(residual[j]);
    const double* cj = &coeff[j * target];
    for (std::size_t i = 0; i < n; ++i) {
      if (selected[i]) continue;
      const double lji = embeddings[j].dot(embeddings[i]);
      double proj = 0.0;
      const double* ci = &coeff[i * target];
      for (std::size_t r = 0; r < round; ++r) proj += cj[r] * ci[r];
      const double e = (lji - proj) / dj;
      coeff[i * target + round] = e;
      residual[i] -= e * e;
      if (residual[i] < kResidualClampEps) residual[i] = 0.0;
    }
  }
  return result;
}

DppSelection greedy_by_determinant(const std::vector<std::vector<double>>& kernel,
                                   std::size_t k) {
  if (k == 0) raise(Errc::invalid_k, "candidate count must be at least 1");
  const std::size_t n = kernel.size();
  for (const auto& row : kernel) {
    if (row.size() != n) raise(Errc::config_error, "kernel matrix is not square");
  }

  DppSelection result;
  if (n == 0) return result;

  const std::size_t target = std::min(k, n);
  std::vector<std::size_t> chosen;
  double det_selected = 1.0;  // det of the empty submatrix

  while (chosen.size() < target) {
    const std::size_t m = chosen.size() + 1;
    std::vector<double> sub(m * m);
    double best_gain = -1.0;
    std::size_t best = n;
    std::unordered_set<std::size_t> used(chosen.begin(), chosen.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (used.contains(i)) continue;
      for (std::size_t r = 0; r < m; ++r) {
        const std::size_t a = r + 1 == m ? i : chosen[r];
        for (std::size_t c = 0; c < m; ++c) {
          const std::size_t b = c + 1 == m ? i : chosen[c];
          sub[r * m + c] = kernel[a][b];
        }
      }
      const double gain = determinant(sub, m) / det_selected;
      if (gain < -1e-8) {
        raise(Errc::kernel_not_psd, "conditional gain " + std::to_string(gain) + " for item " +
                                        std::to_string(i));
      }
      if (best == n || gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best_gain < kRankExhaustEps) {
      result.rank_exhausted = true;
      break;
    }
    chosen.push_back(best);
    result.indices.push_back(best);
    result.gains.push_back(best_gain);
    // Recompute the selected-set determinant directly rather than chaining
    // ratios, so each round's gain stays an honest determinant quotient.
    const std::size_t s = chosen.size();
    std::vector<double> sel(s * s);
    for (std::size_t r = 0; r < s; ++r) {
      for (std::size_t c = 0; c < s; ++c) sel[r * s + c] = kernel[chosen[r]][chosen[c]];
    }
    det_selected = determinant(sel, s);
    if (det_selected <= 0.0) {
      result.rank_exhausted = true;
      break;
    }
  }
  return result;
}

std::vector<std::vector<double>> gram_matrix(std::span<const EmbeddingVector> embeddings) {
  const std::size_t n = embeddings.size();
  std::vector<std::vector<double>> kernel(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    kernel[i][i] = 1.0;  // cosine of a vector with itself
    for (std::size_t j = i + 1; j < n; ++j) {
      // Inputs are unit length, so the dot product is the cosine.
      const double value = embeddings[i].dot(embeddings[j]);
      kernel[i][j] = value;
      kernel[j][i] = value;
    }
  }
  return kernel;
}

std::vector<std::size_t> dedup_by_content(std::span<const LogRecord> logs) {
  std::vector<std::size_t> kept;
  kept.reserve(logs.size());
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (seen.insert(collapse_whitespace(logs[i].content)).second) {
      kept.push_back(i);
    }
  }
  return kept;
}

}  // namespace logicl
