#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "logicl/dpp.hpp"
#include "logicl/errors.hpp"

using namespace logicl;

namespace {

std::vector<LogRecord> dummy_logs(std::size_t count) {
  std::vector<LogRecord> logs(count);
  for (std::size_t i = 0; i < count; ++i) {
    logs[i].line_id = i;
    logs[i].content = "log " + std::to_string(i);
  }
  return logs;
}

std::vector<EmbeddingVector> random_unit_vectors(std::size_t count, std::size_t dim,
                                                 std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<EmbeddingVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> values(dim);
    for (auto& v : values) v = gauss(rng);
    out.push_back(EmbeddingVector::normalized(std::move(values)));
  }
  return out;
}

}  // namespace

TEST_SUITE("dpp") {

TEST_CASE("duplicate pair plus orthogonal item: the second pick is the outlier") {
  const std::vector<EmbeddingVector> embeddings = {
      EmbeddingVector::normalized({1, 0}),
      EmbeddingVector::normalized({1, 0}),
      EmbeddingVector::normalized({0, 1}),
  };
  const auto logs = dummy_logs(3);
  const auto incremental = sample_candidates(logs, embeddings, 2);
  REQUIRE(incremental.indices.size() == 2);
  CHECK(incremental.indices[0] == 0);  // residual tie resolved to the lowest index
  CHECK(incremental.indices[1] == 2);

  const auto by_det = greedy_by_determinant(gram_matrix(embeddings), 2);
  CHECK(by_det.indices == incremental.indices);
}

TEST_CASE("single pick lands on the lowest index when all residuals tie") {
  std::mt19937_64 rng(3);
  const auto embeddings = random_unit_vectors(6, 8, rng);
  const auto selection = sample_candidates(dummy_logs(6), embeddings, 1);
  REQUIRE(selection.indices.size() == 1);
  CHECK(selection.indices[0] == 0);
  CHECK(selection.gains[0] == doctest::Approx(1.0));
}

TEST_CASE("full-rank kernel with k = n returns a permutation of everything") {
  std::mt19937_64 rng(5);
  const std::size_t n = 12;
  const auto embeddings = random_unit_vectors(n, 16, rng);
  const auto selection = sample_candidates(dummy_logs(n), embeddings, n);
  REQUIRE(selection.indices.size() == n);
  CHECK_FALSE(selection.rank_exhausted);
  std::vector<std::size_t> sorted = selection.indices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expected(n);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);
}

TEST_CASE("identity kernel: all gains equal, ties resolve to lowest indices") {
  std::vector<std::vector<double>> kernel(5, std::vector<double>(5, 0.0));
  for (std::size_t i = 0; i < 5; ++i) kernel[i][i] = 1.0;
  const auto selection = greedy_by_determinant(kernel, 3);
  CHECK(selection.indices == std::vector<std::size_t>{0, 1, 2});
  for (double gain : selection.gains) CHECK(gain == doctest::Approx(1.0));
}

TEST_CASE("rank-1 kernel exhausts after one pick") {
  // Identical unit vectors: the kernel is all ones.
  const std::vector<EmbeddingVector> embeddings = {
      EmbeddingVector::normalized({2, 0}),
      EmbeddingVector::normalized({5, 0}),
      EmbeddingVector::normalized({1, 0}),
  };
  const auto incremental = sample_candidates(dummy_logs(3), embeddings, 2);
  CHECK(incremental.indices == std::vector<std::size_t>{0});
  CHECK(incremental.rank_exhausted);

  const auto by_det = greedy_by_determinant(gram_matrix(embeddings), 2);
  CHECK(by_det.indices == std::vector<std::size_t>{0});
  CHECK(by_det.rank_exhausted);
}

TEST_CASE("zero k is rejected") {
  try {
    sample_candidates({}, {}, 0);
    FAIL("expected an error");
  } catch (const Error& error) {
    CHECK(error.code() == Errc::invalid_k);
  }
  CHECK_THROWS_AS(greedy_by_determinant({{1.0}}, 0), Error);
}

TEST_CASE("misaligned inputs are rejected") {
  const std::vector<EmbeddingVector> embeddings = {EmbeddingVector::normalized({1, 0})};
  try {
    sample_candidates(dummy_logs(2), embeddings, 1);
    FAIL("expected an error");
  } catch (const Error& error) {
    CHECK(error.code() == Errc::config_error);
  }
}

TEST_CASE("indefinite kernels are reported") {
  // Eigenvalues 3 and -1.
  const std::vector<std::vector<double>> kernel = {{1.0, 2.0}, {2.0, 1.0}};
  try {
    greedy_by_determinant(kernel, 2);
    FAIL("expected an error");
  } catch (const Error& error) {
    CHECK(error.code() == Errc::kernel_not_psd);
  }
}

TEST_CASE("incremental updates agree with explicit determinant ratios") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng() % 28;
    const std::size_t dim = 4 + rng() % 12;
    const std::size_t k = 1 + rng() % 8;
    const auto embeddings = random_unit_vectors(n, dim, rng);
    const auto logs = dummy_logs(n);

    const auto fast = sample_candidates(logs, embeddings, k);
    const auto slow = greedy_by_determinant(gram_matrix(embeddings), k);

    REQUIRE_MESSAGE(fast.indices == slow.indices, "n=", n, " dim=", dim, " k=", k);
    REQUIRE(fast.gains.size() == slow.gains.size());
    for (std::size_t r = 0; r < fast.gains.size(); ++r) {
      CHECK(fast.gains[r] ==
            doctest::Approx(slow.gains[r]).epsilon(1e-6));
    }
  }
}

TEST_CASE("gains never increase across rounds") {
  std::mt19937_64 rng(31);
  const auto embeddings = random_unit_vectors(40, 8, rng);
  const auto selection = sample_candidates(dummy_logs(40), embeddings, 12);
  for (std::size_t r = 1; r < selection.gains.size(); ++r) {
    CHECK(selection.gains[r] <= selection.gains[r - 1] + 1e-12);
  }
}

TEST_CASE("selection is deterministic") {
  std::mt19937_64 rng(37);
  const auto embeddings = random_unit_vectors(30, 8, rng);
  const auto logs = dummy_logs(30);
  const auto first = sample_candidates(logs, embeddings, 10);
  const auto second = sample_candidates(logs, embeddings, 10);
  CHECK(first.indices == second.indices);
  CHECK(first.gains == second.gains);
}

TEST_CASE("dedup keeps first occurrences, whitespace-insensitive") {
  std::vector<LogRecord> logs(4);
  logs[0].content = "alpha beta";
  logs[1].content = "alpha  beta ";
  logs[2].content = "gamma";
  logs[3].content = "alpha beta";
  CHECK(dedup_by_content(logs) == std::vector<std::size_t>{0, 2});
}

}  // TEST_SUITE
