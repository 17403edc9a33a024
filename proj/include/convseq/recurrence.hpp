#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convseq/sequences.hpp"

namespace convseq {

/// a_n = sum_{j=0}^{n+m} b_{n+m-j} a_j solved forward for indices 0..N.
struct RecurrenceProblem {
  SequenceSpec b;
  int m = 1;
  std::size_t N = 0;

  /// PreconditionError unless m >= 1 and N >= m.
  void validate() const;
};

enum class AlphaRoute { Direct, Series };

/// alpha_k(n) for k = 0..m-1 and n = 0..N.
struct AlphaTable {
  int m = 1;
  std::vector<std::vector<Coefficient>> rows;
  AlphaRoute route = AlphaRoute::Direct;

  std::size_t length() const { return rows.empty() ? 0 : rows.front().size(); }
  const Coefficient& at(int k, std::size_t n) const { return rows.at(static_cast<std::size_t>(k)).at(n); }
};

/// The m basis sequences: Kronecker block for n < m, then
/// alpha_k(n) = (alpha_k(n-m) - sum_{j<n} b_{n-j} alpha_k(j)) / b_0.
AlphaTable compute_alpha(const RecurrenceProblem& problem);

/// a_0..a_N from the m initial values.
std::vector<Coefficient> compute_a(const RecurrenceProblem& problem, std::span<const Coefficient> initials);

/// a_n = sum_k alpha_k(n) a_k.
std::vector<Coefficient> reconstruct_a(const AlphaTable& alpha, std::span<const Coefficient> initials);

}  // namespace convseq
