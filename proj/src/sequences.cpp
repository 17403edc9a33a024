#include "convseq/sequences.hpp"

#include <algorithm>
#include <mutex>

namespace convseq {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Finite: return "finite";
    case SequenceKind::Catalog: return "catalog";
    case SequenceKind::SelfRecurrent: return "self_recurrent";
  }
  return "unknown";
}

struct SequenceSpec::State {
  SequenceKind kind = SequenceKind::Finite;
  std::string name;
  CatalogParams params;
  std::vector<Coefficient> values;  // Finite only
  std::shared_ptr<const TermGenerator> generator;

  mutable std::mutex mutex;
  mutable std::vector<Coefficient> memo;

  // Caller holds the mutex.
  void extend(std::size_t count) const {
    while (memo.size() < count) {
      const std::size_t n = memo.size();
      memo.push_back(generator->term(n, std::span<const Coefficient>(memo.data(), n)));
    }
  }
};

SequenceSpec::SequenceSpec(std::shared_ptr<State> state) : state_(std::move(state)) {}

SequenceSpec SequenceSpec::finite(std::vector<Coefficient> values) {
  if (values.empty()) throw ConstructionError("finite sequence needs at least b0");
  if (values.front().is_zero()) throw ConstructionError("b0 must be nonzero");
  auto state = std::make_shared<State>();
  state->kind = SequenceKind::Finite;
  state->values = std::move(values);
  return SequenceSpec(std::move(state));
}

SequenceSpec SequenceSpec::generated(SequenceKind kind, std::string name, CatalogParams params,
                                     std::shared_ptr<const TermGenerator> generator) {
  if (kind == SequenceKind::Finite) throw ConstructionError("generated sequence cannot be Finite");
  auto state = std::make_shared<State>();
  state->kind = kind;
  state->name = std::move(name);
  state->params = std::move(params);
  state->generator = std::move(generator);
  state->extend(1);
  if (state->memo.front().is_zero()) throw ConstructionError("b0 must be nonzero");
  return SequenceSpec(std::move(state));
}

SequenceSpec SequenceSpec::with_provenance(std::string name, CatalogParams params) const {
  auto state = std::make_shared<State>();
  state->kind = state_->kind;
  state->name = std::move(name);
  state->params = std::move(params);
  state->values = state_->values;
  state->generator = state_->generator;
  {
    std::lock_guard lock(state_->mutex);
    state->memo = state_->memo;
  }
  return SequenceSpec(std::move(state));
}

Coefficient SequenceSpec::at(std::size_t n) const {
  if (state_->kind == SequenceKind::Finite) {
    return n < state_->values.size() ? state_->values[n] : Coefficient(0);
  }
  std::lock_guard lock(state_->mutex);
  state_->extend(n + 1);
  return state_->memo[n];
}

std::vector<Coefficient> SequenceSpec::prefix(std::size_t count) const {
  if (state_->kind == SequenceKind::Finite) {
    std::vector<Coefficient> out(count, Coefficient(0));
    const std::size_t stored = std::min(count, state_->values.size());
    std::copy_n(state_->values.begin(), stored, out.begin());
    return out;
  }
  std::lock_guard lock(state_->mutex);
  state_->extend(count);
  return {state_->memo.begin(), state_->memo.begin() + static_cast<std::ptrdiff_t>(count)};
}

SequenceKind SequenceSpec::kind() const { return state_->kind; }
const std::string& SequenceSpec::name() const { return state_->name; }
const CatalogParams& SequenceSpec::params() const { return state_->params; }

std::optional<std::size_t> SequenceSpec::finite_length() const {
  if (state_->kind != SequenceKind::Finite) return std::nullopt;
  return state_->values.size();
}

Coefficient eval_b(const SequenceSpec& spec, std::size_t n) { return spec.at(n); }

Coefficient partial_b_sum(const SequenceSpec& spec, std::size_t N) {
  Accumulator acc;
  for (const auto& term : spec.prefix(N + 1)) acc.add(term);
  return acc.value();
}

int mobius(long long n) {
  if (n < 1) throw DomainError("mobius(n) requires n >= 1");
  int result = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace convseq
