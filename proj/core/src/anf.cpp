#include "qsep/anf.hpp"

#include <cctype>
#include <stdexcept>

namespace qsep {

std::string Anf::str() const {
  if (monomials_.empty()) return "0";
  std::string out;
  for (std::uint32_t m : monomials_) {
    if (!out.empty()) out += " + ";
    if (m == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    for (int i = 1; i <= n_; ++i)
      if ((m >> (i - 1)) & 1u) {
        if (!first) out += "*";
        out += "x" + std::to_string(i);
        first = false;
      }
  }
  return out;
}

Anf Anf::parse(std::string_view text) {
  std::set<std::uint32_t> monomials;
  int max_var = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("ANF parse error at position " +
                                std::to_string(i) + ": " + msg);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  skip_ws();
  if (i == text.size()) fail("empty input");
  bool expect_term = true;
  while (expect_term) {
    skip_ws();
    std::uint32_t mask = 0;
    bool saw_factor = false;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == '1' && !saw_factor) {
        ++i;
        saw_factor = true;
      } else if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected variable index after 'x'");
        int var = std::stoi(std::string(text.substr(start, i - start)));
        if (var == 0) fail("indices are 1-based");
        if (var > kMaxVars) fail("variable index exceeds 24");
        mask |= 1u << (var - 1);
        max_var = std::max(max_var, var);
        saw_factor = true;
      } else if (!saw_factor) {
        fail("expected 'x<i>' or '1'");
      } else {
        break;
      }
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) continue;  // juxtaposed
      break;
    }
    // XOR semantics: repeated monomials cancel.
    if (monomials.count(mask))
      monomials.erase(mask);
    else
      monomials.insert(mask);
    skip_ws();
    if (i < text.size() && text[i] == '+') {
      ++i;
      expect_term = true;
    } else if (i < text.size()) {
      fail(std::string("unexpected character '") + text[i] + "'");
    } else {
      expect_term = false;
    }
  }
  return Anf(std::max(max_var, 1), std::move(monomials));
}

TruthTable anf_to_truth_table(const Anf& anf) {
  TruthTable tt(anf.n());
  for (Input a = 0; a < tt.size(); ++a) {
    int v = 0;
    for (std::uint32_t m : anf.monomials())
      if ((a & m) == m) v ^= 1;
    tt.set(a, v);
  }
  return tt;
}

Anf truth_table_to_anf(const TruthTable& tt) {
  // Binary Moebius transform, in place over a copy of the table.
  std::uint32_t sz = tt.size();
  std::vector<std::uint8_t> a(sz);
  for (std::uint32_t i = 0; i < sz; ++i) a[i] = tt.get(i);
  for (int b = 0; b < tt.n(); ++b) {
    std::uint32_t bit = 1u << b;
    for (std::uint32_t x = 0; x < sz; ++x)
      if (x & bit) a[x] ^= a[x ^ bit];
  }
  Anf anf(tt.n());
  for (std::uint32_t m = 0; m < sz; ++m)
    if (a[m]) anf.toggle(m);
  return anf;
}

}  // namespace qsep
