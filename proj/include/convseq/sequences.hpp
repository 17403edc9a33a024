#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convseq/numeric.hpp"

namespace convseq {

enum class SequenceKind { Finite, Catalog, SelfRecurrent };

std::string to_string(SequenceKind kind);

using CatalogParams = std::map<std::string, Coefficient>;

/// Produces b_n from the already evaluated prefix b_0..b_{n-1}. Closed-form
/// kernels ignore the prefix; self-recurrent ones read it.
class TermGenerator {
 public:
  virtual ~TermGenerator() = default;
  virtual Coefficient term(std::size_t n, std::span<const Coefficient> prefix) const = 0;
};

/// The known sequence b. Immutable after construction apart from an
/// internally synchronized memo of evaluated terms; copies share the memo.
class SequenceSpec {
 public:
  /// Finite vector with an implicit zero tail. ConstructionError if empty
  /// or if b_0 is zero.
  static SequenceSpec finite(std::vector<Coefficient> values);

  /// Generated sequence (closed form or self-recurrent). The generator is
  /// evaluated in index order and memoized.
  static SequenceSpec generated(SequenceKind kind, std::string name, CatalogParams params,
                                std::shared_ptr<const TermGenerator> generator);

  /// Attaches catalog provenance to a finite spec (used by famous(id)).
  SequenceSpec with_provenance(std::string name, CatalogParams params) const;

  Coefficient at(std::size_t n) const;
  /// b_0..b_{count-1}.
  std::vector<Coefficient> prefix(std::size_t count) const;

  SequenceKind kind() const;
  /// Catalog name, empty for plain finite vectors.
  const std::string& name() const;
  const CatalogParams& params() const;
  /// Number of stored terms for Finite specs; nullopt for infinite ones.
  std::optional<std::size_t> finite_length() const;
  bool is_finite() const { return finite_length().has_value(); }

 private:
  struct State;
  explicit SequenceSpec(std::shared_ptr<State> state);
  std::shared_ptr<State> state_;
};

Coefficient eval_b(const SequenceSpec& spec, std::size_t n);

/// Sum of b_0..b_N.
Coefficient partial_b_sum(const SequenceSpec& spec, std::size_t N);

/// Moebius function by trial division; DomainError for n < 1.
int mobius(long long n);

/// Registered catalog kernels:
///   zeta_direct(a), zeta_mobius(a), zeta_hasse(a), leibniz_pi, exp_e,
///   euler_identity, arcsin_central, fibonacci_geometric, catalan_prob,
///   fibonacci_phi, sine, famous(id[, k]).
/// `a` selects exact arithmetic when it is an exact integer and complex
/// binary64 otherwise.
SequenceSpec catalog_b(const std::string& name, const CatalogParams& params = {});

/// Names accepted by catalog_b.
std::vector<std::string> catalog_names();

/// Catalog entries whose terms sum to one (for valid parameters).
bool catalog_sums_to_one(const std::string& name);

}  // namespace convseq
