#include "beliefkit/random.hpp"

#include <algorithm>

#include "beliefkit/errors.hpp"

namespace beliefkit {

std::vector<double> dirichlet(Rng& rng, std::size_t k, double alpha) {
  std::gamma_distribution<double> g(alpha, 1.0);
  std::vector<double> w(k);
  double s = 0.0;
  for (auto& x : w) {
    x = g(rng);
    s += x;
  }
  if (s <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k));
    return w;
  }
  for (auto& x : w) x /= s;
  return w;
}

MassFunction random_full_mass(const Frame& frame, Rng& rng) {
  const std::size_t count = frame.power_set_size() - 1;
  auto w = dirichlet(rng, count);
  std::vector<MassFunction::Entry> e;
  e.reserve(count);
  for (std::size_t a = 1; a <= count; ++a) e.emplace_back(static_cast<Mask>(a), w[a - 1]);
  return MassFunction(frame, e);
}

MassFunction random_mass(const Frame& frame, Rng& rng, std::size_t focal_count) {
  const std::size_t subsets = frame.power_set_size() - 1;
  if (focal_count == 0 || focal_count > subsets) {
    throw DomainError("focal count out of range for the frame");
  }
  std::vector<Mask> pool(subsets);
  for (std::size_t a = 0; a < subsets; ++a) pool[a] = static_cast<Mask>(a + 1);
  // Partial Fisher-Yates with an explicit uniform draw keeps the sequence
  // independent of the standard library's shuffle implementation.
  for (std::size_t i = 0; i < focal_count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, subsets - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  auto w = dirichlet(rng, focal_count);
  std::vector<MassFunction::Entry> e;
  for (std::size_t i = 0; i < focal_count; ++i) e.emplace_back(pool[i], w[i]);
  return MassFunction(frame, e);
}

MassFunction random_bayesian(const Frame& frame, Rng& rng) {
  return MassFunction::bayesian(frame, dirichlet(rng, frame.size()));
}

}  // namespace beliefkit
