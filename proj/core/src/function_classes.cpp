#include "qsep/function_classes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qsep {

namespace {

std::uint32_t mask_of(const std::vector<int>& vars, int n) {
  std::uint32_t m = 0;
  for (int v : vars) {
    if (v < 1 || v > n) throw SpecError("variable index out of range [1, n]");
    m |= 1u << (v - 1);
  }
  return m;
}

bool is_permutation_table(const std::vector<std::uint32_t>& t) {
  std::vector<bool> seen(t.size(), false);
  for (std::uint32_t v : t) {
    if (v >= t.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

BigInt factorial(std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

BigInt binomial(long long a, long long b) {
  if (b < 0 || a < 0 || a < b) return 0;
  BigInt num = 1, den = 1;
  for (long long i = 0; i < b; ++i) {
    num *= (a - i);
    den *= (i + 1);
  }
  return num / den;
}

// Pattern of the listed variables under assignment x: bit t of the result
// is the value of vars[t].
std::uint32_t extract(Input x, const std::vector<int>& vars) {
  std::uint32_t p = 0;
  for (std::size_t t = 0; t < vars.size(); ++t)
    p |= std::uint32_t(bit_of(x, vars[t])) << t;
  return p;
}

}  // namespace

void PdspSpec::validate() const {
  if (n < 1 || n > kMaxVars) throw SpecError("pdsp: n must be in [1, 24]");
  std::uint32_t hat = mask_of(hat_vars, n), tilde = mask_of(tilde_vars, n);
  if (int(hat_vars.size()) != popcount(hat) || int(tilde_vars.size()) != popcount(tilde))
    throw SpecError("pdsp: duplicate variable in hat or tilde list");
  if (hat & tilde) throw SpecError("pdsp: hat and tilde variables must be disjoint");
  if ((hat | tilde) != range_mask(1, n))
    throw SpecError("pdsp: hat and tilde variables must cover [n]");
  if (monomials.empty()) throw SpecError("pdsp: f1 needs at least one monomial");
  std::uint32_t covered = 0;
  for (const auto& m : monomials) {
    std::uint32_t mm = mask_of(m, n);
    if (int(m.size()) != popcount(mm)) throw SpecError("pdsp: duplicate variable in a monomial");
    if (mm & ~hat) throw SpecError("pdsp: monomial uses a non-hat variable");
    if (mm & covered)
      throw SpecError("pdsp: each variable must appear in exactly one monomial");
    covered |= mm;
    if (int(m.size()) < q())
      throw SpecError("pdsp: each monomial consists of at least q variables");
  }
  if (covered != hat)
    throw SpecError("pdsp: monomials must partition the hat variables");
}

void PdspSpec::normalize() {
  std::sort(hat_vars.begin(), hat_vars.end());
  std::sort(tilde_vars.begin(), tilde_vars.end());
  for (auto& m : monomials) std::sort(m.begin(), m.end());
  std::sort(monomials.begin(), monomials.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

TruthTable make_pdsp(const PdspSpec& spec) {
  spec.validate();
  TruthTable tt(spec.n);
  std::vector<std::uint32_t> mono_masks;
  for (const auto& m : spec.monomials) mono_masks.push_back(mask_of(m, spec.n));
  std::uint32_t tilde = mask_of(spec.tilde_vars, spec.n);
  for (Input x = 0; x < tt.size(); ++x) {
    int f1 = 0;
    for (std::uint32_t mm : mono_masks) f1 ^= ((x & mm) == mm);
    int f2 = ((x & tilde) == tilde);
    tt.set(x, f1 & f2);
  }
  return tt;
}

void MainFamilySpec::validate() const {
  if (n < 4 || n % 2) throw SpecError("main family: n must be even and >= 4");
  if (n > kMaxVars) throw SpecError("main family: n exceeds 24");
  if (t < 1) throw SpecError("main family: t must be >= 1");
  if (int(g_partition.size()) != t)
    throw SpecError("main family: g must consist of exactly t monomials");
  int lo = 3 * n / 4 + 1;
  std::uint32_t range = range_mask(lo, n), covered = 0;
  for (const auto& block : g_partition) {
    std::uint32_t bm = mask_of(block, n);
    if (int(block.size()) != popcount(bm))
      throw SpecError("main family: duplicate variable in a block");
    if (bm & ~range)
      throw SpecError("main family: g blocks must use only x' variables");
    if (bm & covered) throw SpecError("main family: g blocks must be disjoint");
    covered |= bm;
    if (int(block.size()) < t + 1)
      throw SpecError("main family: each g block needs at least t+1 variables");
  }
  if (covered != range)
    throw SpecError("main family: g blocks must partition the x' variables");
}

std::pair<TruthTable, PdspSpec> make_main_family(const MainFamilySpec& spec) {
  spec.validate();
  PdspSpec p;
  p.n = spec.n;
  std::vector<int> lead;
  for (int i = 1; i <= spec.n / 2; ++i) lead.push_back(i);
  p.monomials.push_back(lead);
  for (const auto& block : spec.g_partition) p.monomials.push_back(block);
  for (const auto& m : p.monomials)
    p.hat_vars.insert(p.hat_vars.end(), m.begin(), m.end());
  for (int j = spec.n / 2 + 1; j <= 3 * spec.n / 4; ++j) p.tilde_vars.push_back(j);
  p.normalize();
  p.validate();
  return {make_pdsp(p), p};
}

BigInt count_main_family(int n) {
  if (n < 4) throw SpecError("count: n must be >= 4");
  long long quarter = (n + 3) / 4;
  BigInt total = 0;
  for (long long t = 1; t * t <= quarter - 1; ++t)
    total += binomial(quarter - t * t - t - 1, t - 1);
  return total;
}

void MmBentSpec::validate() const {
  if (n < 2 || n % 2) throw SpecError("mm: n must be even and >= 2");
  if (n > kMaxVars) throw SpecError("mm: n exceeds 24");
  std::size_t half = std::size_t(1) << (n / 2);
  if (phi.size() != half) throw SpecError("mm: phi table must have length 2^{n/2}");
  if (!is_permutation_table(phi)) throw SpecError("mm: phi must be a bijection");
  if (g && g->n() != n / 2) throw SpecError("mm: g must be a table on n/2 variables");
}

TruthTable make_mm_bent(const MmBentSpec& spec) {
  spec.validate();
  TruthTable tt(spec.n);
  int h = spec.n / 2;
  std::uint32_t half_mask = (1u << h) - 1u;
  for (Input x = 0; x < tt.size(); ++x) {
    std::uint32_t xhat = x & half_mask;
    std::uint32_t xtilde = x >> h;
    int v = parity(spec.phi[xhat] & xtilde);
    if (spec.g) v ^= spec.g->get(xhat);
    tt.set(x, v);
  }
  return tt;
}

TruthTable make_f_id(int n) {
  MmBentSpec spec;
  spec.n = n;
  if (n < 2 || n % 2) throw SpecError("f_id: n must be even and >= 2");
  spec.phi.resize(std::size_t(1) << (n / 2));
  std::iota(spec.phi.begin(), spec.phi.end(), 0u);
  return make_mm_bent(spec);
}

bool GammaSpec::canonical_split() const {
  int l1 = n / 4, l2 = (n + 3) / 4;
  auto is_range = [](const std::vector<int>& v, int first, int count) {
    if (int(v.size()) != count) return false;
    std::vector<int> s = v;
    std::sort(s.begin(), s.end());
    for (int i = 0; i < count; ++i)
      if (s[i] != first + i) return false;
    return true;
  };
  return is_range(y_hat, 1, l1) && is_range(z_hat, l1 + 1, l2) &&
         is_range(y_tilde, n / 2 + 1, l1) && is_range(z_tilde, n / 2 + l1 + 1, l2);
}

void GammaSpec::validate() const {
  if (n < 4 || n % 2) throw SpecError("gamma: n must be even and >= 4");
  if (n > kMaxVars) throw SpecError("gamma: n exceeds 24");
  int l1 = n / 4, l2 = (n + 3) / 4;
  if (phi1.size() != (std::size_t(1) << l1) || !is_permutation_table(phi1))
    throw SpecError("gamma constraint 1: phi1 must be a bijection on 2^{floor(n/4)} points");
  if (phi2.size() != (std::size_t(1) << l2) || !is_permutation_table(phi2))
    throw SpecError("gamma constraint 1: phi2 must be a bijection on 2^{ceil(n/4)} points");
  if (int(y_hat.size()) != l1 || int(y_tilde.size()) != l1)
    throw SpecError("gamma constraint 2: |y_hat| and |y_tilde| must equal floor(n/4)");
  if (int(z_hat.size()) != l2 || int(z_tilde.size()) != l2)
    throw SpecError("gamma constraint 2: |z_hat| and |z_tilde| must equal ceil(n/4)");
  std::uint32_t my = mask_of(y_hat, n), mz = mask_of(z_hat, n);
  std::uint32_t ty = mask_of(y_tilde, n), tz = mask_of(z_tilde, n);
  if (popcount(my) != l1 || popcount(mz) != l2 || popcount(ty) != l1 || popcount(tz) != l2)
    throw SpecError("gamma constraint 2: index lists must not repeat variables");
  if ((my & mz) || (my & ty) || (my & tz) || (mz & ty) || (mz & tz) || (ty & tz))
    throw SpecError("gamma constraint 2: the four variable sets must be disjoint");
  if ((my | mz | ty | tz) != range_mask(1, n))
    throw SpecError("gamma constraint 3: the four sets must cover all n variables");
  std::uint32_t xp = mask_of(x_prime, n);
  if (popcount(xp) != int(x_prime.size()))
    throw SpecError("gamma constraint 4: x' must not repeat variables");
  if (xp & ~(my | mz))
    throw SpecError("gamma constraint 4: x' must be a subset of the hat variables");
  int cap = (n + 7) / 8;
  if (popcount(xp & my) > cap)
    throw SpecError("gamma constraint 4: |x' intersect y_hat| exceeds ceil(n/8)");
  if (popcount(xp & mz) > cap)
    throw SpecError("gamma constraint 4: |x' intersect z_hat| exceeds ceil(n/8)");
  if (x_prime.empty()) {
    if (g) throw SpecError("gamma: g given but x' is empty");
  } else {
    if (!g || g->n() != int(x_prime.size()))
      throw SpecError("gamma: g must be a table on the x' variables");
  }
}

TruthTable make_gamma(const GammaSpec& spec, MmBentSpec* equivalent_mm) {
  spec.validate();
  TruthTable tt(spec.n);
  for (Input x = 0; x < tt.size(); ++x) {
    int v = parity(spec.phi1[extract(x, spec.y_hat)] & extract(x, spec.y_tilde)) ^
            parity(spec.phi2[extract(x, spec.z_hat)] & extract(x, spec.z_tilde));
    if (spec.g) v ^= spec.g->get(extract(x, spec.x_prime));
    tt.set(x, v);
  }
  if (equivalent_mm && spec.canonical_split()) {
    int l1 = spec.n / 4, h = spec.n / 2;
    MmBentSpec mm;
    mm.n = spec.n;
    mm.phi.resize(std::size_t(1) << h);
    for (std::uint32_t p = 0; p < mm.phi.size(); ++p)
      mm.phi[p] = spec.phi1[p & ((1u << l1) - 1u)] | (spec.phi2[p >> l1] << l1);
    if (spec.g) {
      TruthTable gm(h);
      for (std::uint32_t p = 0; p < gm.size(); ++p) {
        Input x = p;  // hat variables are 1..n/2 in the canonical split
        gm.set(p, spec.g->get(extract(x, spec.x_prime)));
      }
      mm.g = gm;
    }
    *equivalent_mm = mm;
  }
  return tt;
}

std::pair<BigInt, BigInt> count_gamma_raw(int n) {
  if (n < 4 || n % 2 || n > 40) throw SpecError("count: n must be even, 4 <= n <= 40");
  BigInt raw = factorial(1ull << (n / 4)) * factorial(1ull << ((n + 3) / 4));
  raw *= BigInt(1) << (1ull << (n / 2));
  BigInt quotient = raw / (factorial(n) * (BigInt(1) << (n + 1)));
  return {raw, quotient};
}

bool pnp_equivalent(const TruthTable& f, const TruthTable& g) {
  if (f.n() != g.n()) throw SpecError("pnp: tables must have the same n");
  int n = f.n();
  if (n > 5) throw SpecError("pnp: brute force limited to n <= 5");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (Input flips = 0; flips < (1u << n); ++flips) {
      for (int comp = 0; comp < 2; ++comp) {
        bool ok = true;
        for (Input a = 0; a < f.size() && ok; ++a) {
          Input b = 0;
          for (int j = 0; j < n; ++j)
            b |= Input(((a >> perm[j]) ^ (flips >> j)) & 1u) << j;
          ok = (int(f.get(b)) ^ comp) == int(g.get(a));
        }
        if (ok) return true;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace qsep
