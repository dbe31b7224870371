#include "pickfam/semigroup.hpp"

#include <algorithm>
#include <numeric>

#include "pickfam/errors.hpp"

namespace pickfam {

namespace {

// DP membership table on [0, limit).
std::vector<bool> membership(const std::vector<int>& gens, long limit) {
  std::vector<bool> in(static_cast<std::size_t>(limit), false);
  if (limit > 0) in[0] = true;
  for (long n = 1; n < limit; ++n)
    for (int g : gens)
      if (g <= n && in[static_cast<std::size_t>(n - g)]) {
        in[static_cast<std::size_t>(n)] = true;
        break;
      }
  return in;
}

}  // namespace

NumericalSemigroup::NumericalSemigroup(std::vector<int> generators) {
  if (generators.empty()) throw InvalidArgument("a numerical semigroup needs at least one generator");
  for (int g : generators)
    if (g <= 0) throw InvalidArgument("semigroup generators must be positive");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  int g = 0;
  for (int a : generators) g = std::gcd(g, a);
  if (g != 1) throw InvalidArgument("semigroup generators must have gcd 1");

  // Drop generators representable by the smaller ones.
  std::vector<int> minimal;
  for (int a : generators) {
    auto table = membership(minimal, a + 1);
    if (minimal.empty() || !table[static_cast<std::size_t>(a)]) minimal.push_back(a);
  }
  generators_ = std::move(minimal);

  // The conductor starts the first run of a_1 consecutive members; every
  // later integer is reached by adding a_1. Schur's bound limits the search.
  const long a1 = generators_.front();
  const long ar = generators_.back();
  const long limit = (a1 - 1) * (ar - 1) + a1 + 1;
  auto table = membership(generators_, limit);
  long run = 0;
  long start = 0;
  for (long n = 0; n < limit; ++n) {
    if (table[static_cast<std::size_t>(n)]) {
      if (run == 0) start = n;
      if (++run == a1) break;
    } else {
      run = 0;
    }
  }
  conductor_ = static_cast<int>(start);
  member_.assign(table.begin(), table.begin() + start);
}

bool NumericalSemigroup::contains(long n) const {
  if (n < 0) return false;
  if (n >= conductor_) return true;
  return member_[static_cast<std::size_t>(n)];
}

std::vector<int> NumericalSemigroup::subalgebra_basis_mod_conductor() const {
  std::vector<int> basis;
  for (int n = 0; n < conductor_; ++n)
    if (member_[static_cast<std::size_t>(n)]) basis.push_back(n);
  return basis;
}

std::vector<int> NumericalSemigroup::gaps() const {
  std::vector<int> out;
  for (int n = 0; n < conductor_; ++n)
    if (!member_[static_cast<std::size_t>(n)]) out.push_back(n);
  return out;
}

}  // namespace pickfam
