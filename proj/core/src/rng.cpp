#include "qsep/rng.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsep/algorithms.hpp"

namespace qsep {

GammaSpec random_gamma_spec(int n, std::uint64_t seed) {
  if (n < 4 || n % 2) throw SpecError("random_gamma_spec: n must be even and >= 4");
  SplitMix64 rng(seed ^ (std::uint64_t(n) * 0x9e3779b97f4a7c15ULL));
  int l1 = n / 4, l2 = (n + 3) / 4;
  GammaSpec spec;
  spec.n = n;
  for (int i = 1; i <= l1; ++i) spec.y_hat.push_back(i);
  for (int i = l1 + 1; i <= n / 2; ++i) spec.z_hat.push_back(i);
  for (int i = n / 2 + 1; i <= n / 2 + l1; ++i) spec.y_tilde.push_back(i);
  for (int i = n / 2 + l1 + 1; i <= n; ++i) spec.z_tilde.push_back(i);
  spec.phi1 = random_permutation(std::size_t(1) << l1, rng);
  spec.phi2 = random_permutation(std::size_t(1) << l2, rng);

  int cap = (n + 7) / 8;
  int cap_y = cap, cap_z = cap;
  if (n % 4) {
    // Stay clear of the kick path: only as many x' variables per half as
    // the merge schedule keeps in shared storage.
    int extras = int(mm_budget(n)) - 2 * l2;
    cap_y = std::min(cap, extras);
    cap_z = std::min(cap, extras + 1);
  }
  int m1 = int(rng.below(cap_y + 1));
  int m2 = int(rng.below(cap_z + 1));
  std::vector<int> ys = spec.y_hat, zs = spec.z_hat;
  shuffle(ys, rng);
  shuffle(zs, rng);
  spec.x_prime.assign(ys.begin(), ys.begin() + m1);
  spec.x_prime.insert(spec.x_prime.end(), zs.begin(), zs.begin() + m2);
  if (!spec.x_prime.empty()) {
    TruthTable g(int(spec.x_prime.size()));
    for (Input a = 0; a < g.size(); ++a) g.set(a, rng.next() & 1u);
    spec.g = g;
  }
  spec.validate();
  return spec;
}

PdspSpec random_pdsp_spec(int n, int l, int q, std::uint64_t seed) {
  if (q < 1 || l < q * q || l > n)
    throw SpecError("random_pdsp_spec: need q >= 1 and q*q <= l <= n");
  SplitMix64 rng(seed ^ (std::uint64_t(n) << 32) ^ (std::uint64_t(l) << 8) ^ std::uint64_t(q));
  std::vector<int> vars(n);
  std::iota(vars.begin(), vars.end(), 1);
  shuffle(vars, rng);
  PdspSpec spec;
  spec.n = n;
  spec.hat_vars.assign(vars.begin(), vars.begin() + l);
  spec.tilde_vars.assign(vars.begin() + l, vars.end());
  // Monomial sizes: q each, the remainder spread from the front.
  std::vector<int> sizes(q, q);
  for (int extra = l - q * q, i = 0; extra > 0; ++i) {
    int add = int(rng.below(extra + 1));
    if (i == q - 1) add = extra;
    sizes[i] += add;
    extra -= add;
  }
  auto it = spec.hat_vars.begin();
  for (int i = 0; i < q; ++i) {
    spec.monomials.emplace_back(it, it + sizes[i]);
    it += sizes[i];
  }
  spec.normalize();
  spec.validate();
  return spec;
}

}  // namespace qsep
