#pragma once

#include <span>

#include "sepsys/codes.hpp"
#include "sepsys/curves.hpp"

namespace sepsys::ag {

// Data of a generalized Goppa evaluation code C(G, D): an ordered sequence
// of distinct rational points G = P_1 + ... + P_n (multiplicity-free) and a
// divisor D whose support may overlap G. Local parameters are the curves
// module's canonical ones, fixed once per point independently of D.
struct EvalCodeSpec {
  curves::Curve curve;
  std::vector<size_t> g_points;  // canonical point indices, pairwise distinct
  curves::Divisor d;
};

EvalCodeSpec make_spec(curves::Curve curve, std::vector<size_t> g_points, curves::Divisor d);

// Twisted evaluation of f in L(D): coordinate i is the coefficient of
// t^(-v_i) in the expansion of f at P_i, where v_i = v_{P_i}(D) — that is,
// the value of t_i^{v_i} f at P_i. Linear in f. Throws if an expansion shows
// f outside L(D).
std::vector<uint32_t> evaluate_phi(const EvalCodeSpec& spec, const curves::FunctionRep& f);

// The evaluation code as a linear code: images of a Riemann-Roch basis of
// L(D), row-reduced (which quotients out the kernel L(D-G)).
codes::Code build_code(const EvalCodeSpec& spec);

struct XingCertificate {
  bool certified = false;  // l(2D - G) == 0
  int l_2d_minus_g = -1;
  int deg_2d_minus_g = 0;
  int deg_d = 0;
};

// Intersecting-code certificate: deg(D) < n and l(2D - G) = 0 force C(G, D)
// to be self-intersecting of dimension l(D).
XingCertificate xing_check(const EvalCodeSpec& spec);

// First point P in candidate order with l(A + P) = 0. Requires l(A) = 0 and
// deg(A) <= g - 2; at most g points can fail, so a scan over more than g
// candidates must succeed.
size_t find_point_simple(const curves::Curve& c, const curves::Divisor& a,
                         std::span<const size_t> candidates);

// First point P with l(A + 2P) = 0. Requires l(A) = 0 and deg(A) <= g - 3;
// at most 4g points can fail.
size_t find_point_double(const curves::Curve& c, const curves::Divisor& a,
                         std::span<const size_t> candidates);

enum class BadPointMode { Single, Double };

// Exact number of rational points P with l(A + P) > 0 (Single) or
// l(A + 2P) > 0 (Double), by full enumeration.
size_t count_bad_points(const curves::Curve& c, const curves::Divisor& a, BadPointMode mode);

struct MutualPair {
  codes::Code c;
  codes::Code c_prime;
  curves::Divisor d;
  curves::Divisor d_prime;
};

// Mutually intersecting pair: D = m P_0; D' grows from (n-1-m) P_0 by g
// rounds of find_point_simple applied to A = D + D' - G, ending with
// deg(D') = n + g - 1 - m and l(D + D' - G) = 0.
MutualPair construct_pair(const curves::Curve& c, std::span<const size_t> g_points, int m);

// Divisor search: from D_0 = floor((n-1)/2) P_0, append one point per round
// via find_point_double on A = 2 D_i - G until deg(D) = floor((n+g-1)/2);
// the result satisfies l(2D - G) = 0. p0 is the canonical start point index.
curves::Divisor main_divisor_search(const curves::Curve& c, std::span<const size_t> g_points,
                                    size_t p0 = 0);

struct BuiltCode {
  codes::Code code;
  EvalCodeSpec spec;
  XingCertificate cert;
};

// End-to-end: G = first n points in canonical order, D from the divisor
// search, C = C(G, D); dim C >= floor((n+g-1)/2) + 1 - g and the Xing
// certificate holds. Requires |X(K)| > 4g and g < n <= |X(K)|.
BuiltCode build_intersecting(const curves::Curve& c, size_t n, size_t p0 = 0);

}  // namespace sepsys::ag
