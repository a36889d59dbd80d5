#pragma once

// Shared test helpers and independent oracles. These deliberately avoid the
// library's checker/construction code paths: brute-force loops and direct
// constructions only, so they can arbitrate witnesses and results.

#include <set>
#include <vector>

#include "sepsys/codes.hpp"
#include "sepsys/gf.hpp"
#include "sepsys/linalg.hpp"

namespace support {

// Vandermonde generator of the [q, m+1] Reed-Solomon code on the affine
// line: rows (a^i) for i = 0..m over all a in GF(q).
inline sepsys::linalg::Mat rs_vandermonde(const sepsys::gf::Field& f, uint32_t m) {
  sepsys::linalg::Mat rows;
  for (uint32_t i = 0; i <= m; ++i) {
    std::vector<uint32_t> row(f.q());
    for (uint32_t a = 0; a < f.q(); ++a) row[a] = f.pow(a, static_cast<int64_t>(i));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Brute-force (2,1)-separation over an explicit word list: returns false and
// the violating triple (x, middle, z) on failure.
struct BruteTriple {
  size_t x = 0, y = 0, z = 0;
};

inline bool brute_force_sep21(const std::vector<std::vector<uint32_t>>& words,
                              BruteTriple* out = nullptr) {
  const size_t m = words.size();
  for (size_t y = 0; y < m; ++y)
    for (size_t x = 0; x < m; ++x) {
      if (x == y) continue;
      for (size_t z = x + 1; z < m; ++z) {
        if (z == y) continue;
        bool separated = false;
        for (size_t i = 0; i < words[y].size() && !separated; ++i)
          separated = words[y][i] != words[x][i] && words[y][i] != words[z][i];
        if (!separated) {
          if (out) *out = {x, y, z};
          return false;
        }
      }
    }
  return true;
}

// All nonzero codewords of a small linear code, by direct message
// enumeration (no projective reduction).
inline std::vector<std::vector<uint32_t>> all_nonzero_codewords(const sepsys::codes::Code& c) {
  std::vector<std::vector<uint32_t>> out;
  const uint64_t total = c.size();
  for (uint64_t i = 1; i < total; ++i) out.push_back(c.codeword_at(i));
  return out;
}

inline bool brute_force_intersecting(const sepsys::codes::Code& c) {
  auto words = all_nonzero_codewords(c);
  for (size_t i = 0; i < words.size(); ++i)
    for (size_t j = i; j < words.size(); ++j) {
      bool meet = false;
      for (size_t t = 0; t < words[i].size() && !meet; ++t)
        meet = words[i][t] != 0 && words[j][t] != 0;
      if (!meet) return false;
    }
  return true;
}

inline int weight(const std::vector<uint32_t>& w) {
  int c = 0;
  for (uint32_t s : w) c += s != 0;
  return c;
}

}  // namespace support
