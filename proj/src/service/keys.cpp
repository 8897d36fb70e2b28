#include "unienv/service/keys.hpp"

#include <array>
#include <numeric>
#include <string>
#include <utility>

#include "unienv/error.hpp"

namespace unienv::service {

KeyMapping assign_keys(Rng& rng, int n_actions) {
  if (n_actions < 1 || n_actions > 9) {
    throw Error(ErrorCode::TooManyActions, "cannot map " + std::to_string(n_actions) + " actions onto digits 1-9");
  }
  std::array<int, 9> digits;
  std::iota(digits.begin(), digits.end(), 1);
  // Partial Fisher-Yates: the first n slots are a uniform ordered sample.
  for (int i = 0; i < n_actions; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(9 - i)));
    std::swap(digits[i], digits[j]);
  }
  KeyMapping m;
  m.n_actions = n_actions;
  for (int a = 0; a < n_actions; ++a) m.entries[digits[a]] = a;
  return m;
}

}  // namespace unienv::service
