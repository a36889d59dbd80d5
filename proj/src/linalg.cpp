#include "sepsys/linalg.hpp"

#include <algorithm>

namespace sepsys::linalg {

void add_scaled(const gf::Field& f, std::vector<uint32_t>& c,
                const std::vector<uint32_t>& row, uint32_t s) {
  if (s == 0) return;
  for (size_t i = 0; i < c.size(); ++i) c[i] = f.add(c[i], f.mul(s, row[i]));
}

std::vector<size_t> rref(const gf::Field& f, Mat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t ncols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < m.size(); ++c) {
    size_t pr = r;
    while (pr < m.size() && m[pr][c] == 0) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[r], m[pr]);
    const uint32_t iv = f.inv(m[r][c]);
    for (auto& x : m[r]) x = f.mul(x, iv);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const uint32_t s = f.neg(m[i][c]);
      add_scaled(f, m[i], m[r], s);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(const gf::Field& f, Mat m) { return rref(f, m).size(); }

Mat kernel_basis(const gf::Field& f, const Mat& m, size_t ncols) {
  Mat red = m;
  for (auto& row : red) row.resize(ncols, 0);
  std::vector<size_t> pivots = rref(f, red);

  std::vector<bool> is_pivot(ncols, false);
  for (size_t c : pivots) is_pivot[c] = true;

  Mat basis;
  for (size_t fc = 0; fc < ncols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<uint32_t> v(ncols, 0);
    v[fc] = 1;
    for (size_t ri = 0; ri < pivots.size(); ++ri) v[pivots[ri]] = f.neg(red[ri][fc]);
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat row_space_basis(const gf::Field& f, Mat m) {
  rref(f, m);
  Mat out;
  for (auto& row : m)
    if (std::any_of(row.begin(), row.end(), [](uint32_t x) { return x != 0; }))
      out.push_back(std::move(row));
  return out;
}

bool row_space_equal(const gf::Field& f, const Mat& a, const Mat& b) {
  return row_space_basis(f, a) == row_space_basis(f, b);
}

}  // namespace sepsys::linalg
