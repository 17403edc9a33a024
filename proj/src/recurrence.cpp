#include "convseq/recurrence.hpp"

#include <algorithm>
#include <string>

namespace convseq {

namespace {

bool all_exact(std::span<const Coefficient> xs) {
  return std::all_of(xs.begin(), xs.end(), [](const Coefficient& x) { return x.is_exact(); });
}

// Fills seq[m..N] in place; seq[0..m-1] hold the initial block.
void iterate(std::vector<Coefficient>& seq, std::span<const Coefficient> b, int m,
             std::size_t support) {
  const auto shift = static_cast<std::size_t>(m);
  const auto kernel = b.first(std::min(support, b.size()));
  if (all_exact(kernel) && all_exact(std::span(seq).first(shift))) {
    ScaledRationals bs, ss;
    for (const auto& x : kernel) bs.push_back(x.exact());
    for (std::size_t n = 0; n < shift; ++n) ss.push_back(seq[n].exact());
    const Rational inv_b0 = 1 / kernel[0].exact();
    for (std::size_t n = shift; n < seq.size(); ++n) {
      // Only b_1..b_{support-1} can be nonzero.
      const std::size_t top = std::min(n, kernel.size() - 1);
      Rational conv = top >= 1 ? convolve_at(bs, ss, n, 1, top) : Rational(0);
      Rational next = (seq[n - shift].exact() - conv) * inv_b0;
      ss.push_back(next);
      seq[n] = Coefficient(std::move(next));
    }
    return;
  }
  const Coefficient inv_b0 = Coefficient(1) / b[0];
  for (std::size_t n = shift; n < seq.size(); ++n) {
    Accumulator convolution;
    const std::size_t top = std::min(n, support - 1);
    for (std::size_t i = 1; i <= top; ++i) {
      if (b[i].is_zero()) continue;
      convolution.add_product(b[i], seq[n - i]);
    }
    seq[n] = (seq[n - shift] - convolution.value()) * inv_b0;
  }
}

std::size_t kernel_support(const RecurrenceProblem& problem) {
  const auto len = problem.b.finite_length();
  return len ? std::max<std::size_t>(*len, 1) : problem.N + 1;
}

}  // namespace

void RecurrenceProblem::validate() const {
  if (m < 1) throw PreconditionError("m must be >= 1, got " + std::to_string(m));
  if (N < static_cast<std::size_t>(m)) {
    throw PreconditionError("N must be >= m (N=" + std::to_string(N) + ", m=" + std::to_string(m) + ")");
  }
}

AlphaTable compute_alpha(const RecurrenceProblem& problem) {
  problem.validate();
  const auto b = problem.b.prefix(problem.N + 1);
  const std::size_t support = kernel_support(problem);
  AlphaTable table;
  table.m = problem.m;
  table.route = AlphaRoute::Direct;
  table.rows.reserve(static_cast<std::size_t>(problem.m));
  for (int k = 0; k < problem.m; ++k) {
    std::vector<Coefficient> row(problem.N + 1, Coefficient(0));
    row[static_cast<std::size_t>(k)] = 1;
    iterate(row, b, problem.m, support);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<Coefficient> compute_a(const RecurrenceProblem& problem, std::span<const Coefficient> initials) {
  problem.validate();
  if (initials.size() != static_cast<std::size_t>(problem.m)) {
    throw ArityError("expected " + std::to_string(problem.m) + " initial values, got " +
                     std::to_string(initials.size()));
  }
  const auto b = problem.b.prefix(problem.N + 1);
  std::vector<Coefficient> seq(problem.N + 1, Coefficient(0));
  std::copy(initials.begin(), initials.end(), seq.begin());
  iterate(seq, b, problem.m, kernel_support(problem));
  return seq;
}

std::vector<Coefficient> reconstruct_a(const AlphaTable& alpha, std::span<const Coefficient> initials) {
  if (initials.size() != static_cast<std::size_t>(alpha.m)) {
    throw ArityError("expected " + std::to_string(alpha.m) + " initial values, got " +
                     std::to_string(initials.size()));
  }
  std::vector<Coefficient> out;
  out.reserve(alpha.length());
  for (std::size_t n = 0; n < alpha.length(); ++n) {
    Accumulator acc;
    for (int k = 0; k < alpha.m; ++k) acc.add_product(alpha.at(k, n), initials[static_cast<std::size_t>(k)]);
    out.push_back(acc.value());
  }
  return out;
}

}  // namespace convseq
