#include "sepsys/nordrob.hpp"

#include <algorithm>
#include <array>

namespace sepsys::nordrob {
namespace {

// Gray map on Z4, Lee-weight preserving.
constexpr std::array<std::array<uint32_t, 2>, 4> kGray = {{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};

std::vector<std::array<uint8_t, 8>> octacode() {
  // cyclic code of length 7 over Z4 generated by g(x) = 3 + x + 2x^2 + x^3
  // (the Hensel lift of x^3 + x + 1), extended so each word sums to 0 mod 4
  constexpr std::array<uint8_t, 4> g = {3, 1, 2, 1};
  std::vector<std::array<uint8_t, 8>> words;
  words.reserve(256);
  for (uint32_t msg = 0; msg < 256; ++msg) {
    std::array<uint8_t, 8> c{};
    for (uint32_t i = 0; i < 4; ++i) {
      const uint32_t mi = (msg >> (2 * i)) & 3;
      if (mi == 0) continue;
      for (uint32_t j = 0; j < 4; ++j) c[(i + j) % 7] = (c[(i + j) % 7] + mi * g[j]) % 4;
    }
    uint32_t sum = 0;
    for (uint32_t i = 0; i < 7; ++i) sum += c[i];
    c[7] = static_cast<uint8_t>((4 - sum % 4) % 4);
    words.push_back(c);
  }
  return words;
}

}  // namespace

codes::Code build_nr16() {
  std::vector<std::vector<uint32_t>> words;
  words.reserve(256);
  for (const auto& oc : octacode()) {
    std::vector<uint32_t> w;
    w.reserve(16);
    for (uint8_t s : oc) {
      w.push_back(kGray[s][0]);
      w.push_back(kGray[s][1]);
    }
    words.push_back(std::move(w));
  }
  std::sort(words.begin(), words.end());
  return codes::Code::listed(gf::Field(2, 1), 16, std::move(words));
}

codes::Code one_shorten(const codes::Code& c, size_t position) {
  if (position >= c.length()) throw std::invalid_argument("one_shorten: position out of range");
  std::vector<std::vector<uint32_t>> kept;
  for (const auto& w : c.words()) {
    if (w[position] != 0) continue;
    std::vector<uint32_t> s;
    s.reserve(w.size() - 1);
    for (size_t i = 0; i < w.size(); ++i)
      if (i != position) s.push_back(w[i]);
    kept.push_back(std::move(s));
  }
  if (kept.empty()) throw std::invalid_argument("one_shorten: no codeword has 0 at position");
  return codes::Code::listed(c.field(), c.length() - 1, std::move(kept));
}

codes::Code subcode_first(const codes::Code& c, size_t m) {
  if (m > c.words().size()) throw std::invalid_argument("subcode_first: m exceeds code size");
  if (m == 0) throw std::invalid_argument("subcode_first: m must be >= 1");
  auto sorted = c.words();
  std::sort(sorted.begin(), sorted.end());
  sorted.resize(m);
  return codes::Code::listed(c.field(), c.length(), std::move(sorted));
}

}  // namespace sepsys::nordrob
