#pragma once

#include <cstdint>
#include <vector>

#include "sepsys/gf.hpp"

namespace sepsys::linalg {

// Rows of integer-encoded field elements. All routines are exact.
using Mat = std::vector<std::vector<uint32_t>>;

// Reduce in place to reduced row echelon form; returns the pivot columns.
std::vector<size_t> rref(const gf::Field& f, Mat& m);

size_t rank(const gf::Field& f, Mat m);

// Basis of the right null space of m (ncols columns), deterministic: one
// vector per free column, in increasing column order.
Mat kernel_basis(const gf::Field& f, const Mat& m, size_t ncols);

// Nonzero rows of the RREF; a canonical basis of the row space.
Mat row_space_basis(const gf::Field& f, Mat m);

bool row_space_equal(const gf::Field& f, const Mat& a, const Mat& b);

// c += s * row
void add_scaled(const gf::Field& f, std::vector<uint32_t>& c,
                const std::vector<uint32_t>& row, uint32_t s);

}  // namespace sepsys::linalg
