#include "sepsys/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "parallel.hpp"
#include "sepsys/rng.hpp"

namespace sepsys::codes {
namespace {

using Words = std::vector<std::vector<uint32_t>>;

// Access to the full codeword list: borrowed for Listed codes, materialized
// for Linear ones.
struct WordView {
  const Words* ref = nullptr;
  Words owned;
  const Words& get() const { return ref ? *ref : owned; }
};

__int128 triple_count(uint64_t m) {
  if (m < 3) return 0;
  return static_cast<__int128>(m) * (m - 1) * (m - 2) / 2;  // middles * unordered pairs
}

__int128 pair_count(uint64_t m) {
  if (m < 2) return 0;
  return static_cast<__int128>(m) * (m - 1) / 2;
}

WordView materialize(const Code& c, uint64_t max_words) {
  WordView v;
  if (c.kind() == CodeKind::Listed) {
    v.ref = &c.words();
    return v;
  }
  if (!c.size_fits_u64() || c.size() > max_words)
    throw CapExceeded("codeword enumeration exceeds cap");
  const uint64_t m = c.size();
  v.owned.reserve(m);
  for (uint64_t i = 0; i < m; ++i) v.owned.push_back(c.codeword_at(i));
  return v;
}

// Bit-packed rows for the binary fast paths.
struct Masks {
  size_t stride;
  std::vector<uint64_t> bits;
  const uint64_t* row(size_t i) const { return bits.data() + i * stride; }
};

Masks pack_binary(const Words& words, size_t n) {
  Masks m;
  m.stride = (n + 63) / 64;
  m.bits.assign(words.size() * m.stride, 0);
  for (size_t i = 0; i < words.size(); ++i) {
    uint64_t* row = m.bits.data() + i * m.stride;
    for (size_t j = 0; j < n; ++j)
      if (words[i][j]) row[j / 64] |= uint64_t{1} << (j % 64);
  }
  return m;
}

Masks pack_supports(const Words& words, size_t n) {
  Masks m;
  m.stride = (n + 63) / 64;
  m.bits.assign(words.size() * m.stride, 0);
  for (size_t i = 0; i < words.size(); ++i) {
    uint64_t* row = m.bits.data() + i * m.stride;
    for (size_t j = 0; j < n; ++j)
      if (words[i][j] != 0) row[j / 64] |= uint64_t{1} << (j % 64);
  }
  return m;
}

bool masks_disjoint(const uint64_t* a, const uint64_t* b, size_t stride) {
  for (size_t w = 0; w < stride; ++w)
    if (a[w] & b[w]) return false;
  return true;
}

// Middle test, bitset form: y lies between x and z iff (x^y)&(y^z) == 0.
bool binary_middle(const uint64_t* x, const uint64_t* y, const uint64_t* z, size_t stride) {
  for (size_t w = 0; w < stride; ++w)
    if ((x[w] ^ y[w]) & (y[w] ^ z[w])) return false;
  return true;
}

struct TripleHit {
  uint64_t x, z;  // middle is the chunk unit
};

}  // namespace

int hamming_distance(const Word& a, const Word& b) {
  if (a.field != b.field) throw gf::FieldError("hamming_distance: field mismatch");
  if (a.symbols.size() != b.symbols.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (size_t i = 0; i < a.symbols.size(); ++i) d += a.symbols[i] != b.symbols[i];
  return d;
}

Code Code::listed(gf::Field f, size_t n, std::vector<std::vector<uint32_t>> words) {
  if (n < 1) throw std::invalid_argument("listed code: length must be >= 1");
  if (words.empty()) throw std::invalid_argument("listed code: needs at least one codeword");
  for (const auto& w : words) {
    if (w.size() != n) throw std::invalid_argument("listed code: ragged codeword length");
    for (uint32_t s : w)
      if (s >= f.q()) throw std::invalid_argument("listed code: symbol out of field range");
  }
  {
    auto sorted = words;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("listed code: duplicate codewords");
  }
  Code c(CodeKind::Listed, std::move(f), n);
  c.words_ = std::move(words);
  return c;
}

Code Code::linear(gf::Field f, size_t n, linalg::Mat generator) {
  if (n < 1) throw std::invalid_argument("linear code: length must be >= 1");
  for (const auto& row : generator) {
    if (row.size() != n) throw std::invalid_argument("linear code: generator row length != n");
    for (uint32_t s : row)
      if (s >= f.q()) throw std::invalid_argument("linear code: entry out of field range");
  }
  if (linalg::rank(f, generator) != generator.size())
    throw std::invalid_argument("linear code: generator rows are dependent");
  Code c(CodeKind::Linear, std::move(f), n);
  c.gen_ = std::move(generator);
  return c;
}

const Words& Code::words() const {
  if (kind_ != CodeKind::Listed) throw std::logic_error("words(): not a listed code");
  return words_;
}

const linalg::Mat& Code::generator() const {
  if (kind_ != CodeKind::Linear) throw std::logic_error("generator(): not a linear code");
  return gen_;
}

size_t Code::dim() const {
  if (kind_ != CodeKind::Linear) throw std::logic_error("dim(): not a linear code");
  return gen_.size();
}

bool Code::size_fits_u64() const {
  if (kind_ == CodeKind::Listed) return true;
  return dim() * std::log2(double(field_.q())) < 62.5;
}

uint64_t Code::size() const {
  if (kind_ == CodeKind::Listed) return words_.size();
  if (!size_fits_u64()) throw CapExceeded("code size exceeds 2^62");
  uint64_t s = 1;
  for (size_t i = 0; i < gen_.size(); ++i) s *= field_.q();
  return s;
}

double Code::size_log2() const {
  if (kind_ == CodeKind::Listed) return std::log2(double(words_.size()));
  return double(gen_.size()) * std::log2(double(field_.q()));
}

std::vector<uint32_t> Code::codeword_at(uint64_t index) const {
  if (kind_ == CodeKind::Listed) return words_.at(index);
  std::vector<uint32_t> msg(gen_.size());
  for (size_t i = 0; i < gen_.size(); ++i) {
    msg[i] = static_cast<uint32_t>(index % field_.q());
    index /= field_.q();
  }
  if (index != 0) throw std::out_of_range("codeword_at: index beyond code size");
  return codeword_of(msg);
}

std::vector<uint32_t> Code::codeword_of(std::span<const uint32_t> message) const {
  if (kind_ != CodeKind::Linear) throw std::logic_error("codeword_of(): not a linear code");
  if (message.size() != gen_.size())
    throw std::invalid_argument("codeword_of(): message length != k");
  std::vector<uint32_t> c(n_, 0);
  for (size_t i = 0; i < gen_.size(); ++i) linalg::add_scaled(field_, c, gen_[i], message[i]);
  return c;
}

bool is_middle_word(std::span<const uint32_t> x, std::span<const uint32_t> y,
                    std::span<const uint32_t> z) {
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] != x[i] && y[i] != z[i]) return false;
  return true;
}

bool supports_disjoint(std::span<const uint32_t> a, std::span<const uint32_t> b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

SepResult check_sep21(const Code& c, const CheckLimits& lim) {
  const uint64_t m = c.size_fits_u64() ? c.size() : ~uint64_t{0};
  if (m == ~uint64_t{0} || triple_count(m) > lim.triple_cap)
    throw CapExceeded("check_sep21: triple enumeration exceeds cap; use the sampled variant");
  WordView view = materialize(c, m);
  const Words& words = view.get();
  const uint64_t total = static_cast<uint64_t>(triple_count(m));
  if (m < 3) return {Verdict::Pass, std::nullopt, total};

  std::optional<std::pair<uint64_t, TripleHit>> hit;
  if (c.field().q() == 2) {
    Masks masks = pack_binary(words, c.length());
    hit = detail::chunked_first_hit<TripleHit>(
        m, 8,
        [&](uint64_t yb, uint64_t ye,
            std::atomic<uint64_t>& best) -> std::optional<std::pair<uint64_t, TripleHit>> {
          const size_t stride = masks.stride;
          for (uint64_t y = yb; y < ye; ++y) {
            if (best.load(std::memory_order_relaxed) < y) return std::nullopt;
            const uint64_t* my = masks.row(y);
            for (uint64_t x = 0; x + 1 < m; ++x) {
              if (x == y) continue;
              const uint64_t* mx = masks.row(x);
              for (uint64_t z = x + 1; z < m; ++z) {
                if (z == y) continue;
                if (binary_middle(mx, my, masks.row(z), stride))
                  return std::make_pair(y, TripleHit{x, z});
              }
            }
          }
          return std::nullopt;
        });
  } else {
    hit = detail::chunked_first_hit<TripleHit>(
        m, 8,
        [&](uint64_t yb, uint64_t ye,
            std::atomic<uint64_t>& best) -> std::optional<std::pair<uint64_t, TripleHit>> {
          for (uint64_t y = yb; y < ye; ++y) {
            if (best.load(std::memory_order_relaxed) < y) return std::nullopt;
            const auto& wy = words[y];
            for (uint64_t x = 0; x + 1 < m; ++x) {
              if (x == y) continue;
              for (uint64_t z = x + 1; z < m; ++z) {
                if (z == y) continue;
                if (is_middle_word(words[x], wy, words[z]))
                  return std::make_pair(y, TripleHit{x, z});
              }
            }
          }
          return std::nullopt;
        });
  }

  if (!hit) return {Verdict::Pass, std::nullopt, total};
  TripleWitness w;
  w.y_index = hit->first;
  w.x_index = hit->second.x;
  w.z_index = hit->second.z;
  w.x = words[w.x_index];
  w.y = words[w.y_index];
  w.z = words[w.z_index];
  return {Verdict::Fail, std::move(w), total};
}

SepResult check_sep21_sampled(const Code& c, uint64_t trials, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_sep21_sampled: trials must be >= 1");
  rng::SplitMix64 prng(seed);
  const bool indexable = c.size_fits_u64();
  const uint64_t m = indexable ? c.size() : 0;
  if (indexable && m < 3) return {Verdict::PassSampled, std::nullopt, 0};

  uint64_t tested = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    std::vector<uint32_t> x, y, z;
    uint64_t ix = 0, iy = 0, iz = 0;
    if (indexable) {
      ix = prng.below(m);
      do {
        iy = prng.below(m);
      } while (iy == ix);
      do {
        iz = prng.below(m);
      } while (iz == ix || iz == iy);
      x = c.codeword_at(ix);
      y = c.codeword_at(iy);
      z = c.codeword_at(iz);
    } else {
      // message-sampled path for codes too large to index
      const auto& gen = c.generator();
      auto sample = [&] {
        std::vector<uint32_t> msg(gen.size());
        for (auto& d : msg) d = prng.below32(c.field().q());
        return c.codeword_of(msg);
      };
      x = sample();
      do {
        y = sample();
      } while (y == x);
      do {
        z = sample();
      } while (z == x || z == y);
    }
    ++tested;
    if (is_middle_word(x, y, z)) {
      TripleWitness w{std::move(x), std::move(y), std::move(z), ix, iy, iz};
      return {Verdict::Fail, std::move(w), tested};
    }
  }
  return {Verdict::PassSampled, std::nullopt, tested};
}

SepResult check_set_system(const Code& c, const CheckLimits& lim) {
  if (c.field().q() != 2)
    throw std::invalid_argument("check_set_system: binary alphabet required");
  const uint64_t m = c.size();
  if (triple_count(m) > lim.triple_cap)
    throw CapExceeded("check_set_system: triple enumeration exceeds cap");
  WordView view = materialize(c, m);
  const Words& words = view.get();
  const uint64_t total = static_cast<uint64_t>(triple_count(m));
  if (m < 3) return {Verdict::Pass, std::nullopt, total};

  Masks masks = pack_binary(words, c.length());
  auto hit = detail::chunked_first_hit<TripleHit>(
      m, 8,
      [&](uint64_t cb, uint64_t ce,
          std::atomic<uint64_t>& best) -> std::optional<std::pair<uint64_t, TripleHit>> {
        const size_t stride = masks.stride;
        for (uint64_t ci = cb; ci < ce; ++ci) {
          if (best.load(std::memory_order_relaxed) < ci) return std::nullopt;
          const uint64_t* mc = masks.row(ci);
          for (uint64_t a = 0; a + 1 < m; ++a) {
            if (a == ci) continue;
            const uint64_t* ma = masks.row(a);
            for (uint64_t b = a + 1; b < m; ++b) {
              if (b == ci) continue;
              const uint64_t* mb = masks.row(b);
              bool contains = true;
              for (size_t w = 0; w < stride; ++w) {
                // A∩B ⊆ C and C ⊆ A∪B, wordwise
                if ((ma[w] & mb[w] & ~mc[w]) || (mc[w] & ~(ma[w] | mb[w]))) {
                  contains = false;
                  break;
                }
              }
              if (contains) return std::make_pair(ci, TripleHit{a, b});
            }
          }
        }
        return std::nullopt;
      });

  if (!hit) return {Verdict::Pass, std::nullopt, total};
  TripleWitness w;
  w.y_index = hit->first;  // C is the middle set
  w.x_index = hit->second.x;
  w.z_index = hit->second.z;
  w.x = words[w.x_index];
  w.y = words[w.y_index];
  w.z = words[w.z_index];
  return {Verdict::Fail, std::move(w), total};
}

namespace {

// Projective representatives of a linear code: one codeword per scalar class
// of nonzero messages (first nonzero digit = 1), in message counting order.
struct Reps {
  Words codewords;
};

uint64_t rep_count(uint32_t q, size_t k) {
  // (q^k - 1) / (q - 1), guarded against overflow by the caller's cap math
  uint64_t total = 0, power = 1;
  for (size_t l = 0; l < k; ++l) {
    total += power;
    power *= q;
  }
  return total;
}

Reps projective_reps(const Code& c, uint64_t cap) {
  const auto& gen = c.generator();
  const uint32_t q = c.field().q();
  const size_t k = gen.size();
  if (k * std::log2(double(q)) > 62 || rep_count(q, k) > cap)
    throw CapExceeded("projective representative enumeration exceeds cap");
  Reps reps;
  reps.codewords.reserve(rep_count(q, k));
  std::vector<uint32_t> msg(k, 0);
  for (size_t lead = 0; lead < k; ++lead) {
    // messages: 0..0, 1 at position `lead`, free digits above
    std::fill(msg.begin(), msg.end(), 0);
    msg[lead] = 1;
    uint64_t free_count = 1;
    for (size_t i = lead + 1; i < k; ++i) free_count *= q;
    for (uint64_t idx = 0; idx < free_count; ++idx) {
      uint64_t t = idx;
      for (size_t i = lead + 1; i < k; ++i) {
        msg[i] = static_cast<uint32_t>(t % q);
        t /= q;
      }
      reps.codewords.push_back(c.codeword_of(msg));
    }
  }
  return reps;
}

IntersectResult cross_intersect(const gf::Field&, const Words& wa, const Words& wb, size_t n,
                                bool same_code, uint64_t cap) {
  const __int128 pairs = same_code ? pair_count(wa.size())
                                   : static_cast<__int128>(wa.size()) * wb.size();
  if (pairs > cap) throw CapExceeded("pair enumeration exceeds cap");
  const uint64_t total = static_cast<uint64_t>(pairs);
  Masks ma = pack_supports(wa, n);
  Masks mb = same_code ? Masks{} : pack_supports(wb, n);
  const Masks& mbr = same_code ? ma : mb;
  const Words& wbr = same_code ? wa : wb;

  auto hit = detail::chunked_first_hit<uint64_t>(
      wa.size(), 4,
      [&](uint64_t ib, uint64_t ie,
          std::atomic<uint64_t>& best) -> std::optional<std::pair<uint64_t, uint64_t>> {
        for (uint64_t i = ib; i < ie; ++i) {
          if (best.load(std::memory_order_relaxed) < i) return std::nullopt;
          const uint64_t* ra = ma.row(i);
          const uint64_t jb = same_code ? i + 1 : 0;
          for (uint64_t j = jb; j < wbr.size(); ++j) {
            if (masks_disjoint(ra, mbr.row(j), ma.stride)) return std::make_pair(i, j);
          }
        }
        return std::nullopt;
      });

  if (!hit) return {Verdict::Pass, std::nullopt, total};
  PairWitness w{wa[hit->first], wbr[hit->second]};
  return {Verdict::Fail, std::move(w), total};
}

std::vector<uint32_t> random_nonzero_codeword(const Code& c, rng::SplitMix64& prng) {
  const auto& gen = c.generator();
  while (true) {
    std::vector<uint32_t> msg(gen.size());
    bool nonzero = false;
    for (auto& d : msg) {
      d = prng.below32(c.field().q());
      nonzero |= d != 0;
    }
    if (nonzero) return c.codeword_of(msg);
  }
}

void require_linear(const Code& c, const char* who) {
  if (c.kind() != CodeKind::Linear)
    throw std::invalid_argument(std::string(who) + ": linear code required");
}

}  // namespace

IntersectResult check_intersecting(const Code& c, const CheckLimits& lim) {
  require_linear(c, "check_intersecting");
  if (c.dim() == 0) return {Verdict::Pass, std::nullopt, 0};  // no nonzero codewords
  Reps reps = projective_reps(c, lim.pair_cap);
  return cross_intersect(c.field(), reps.codewords, reps.codewords, c.length(), true,
                         lim.pair_cap);
}

IntersectResult check_intersecting_sampled(const Code& c, uint64_t trials, uint64_t seed) {
  require_linear(c, "check_intersecting_sampled");
  if (c.dim() == 0) return {Verdict::PassSampled, std::nullopt, 0};
  rng::SplitMix64 prng(seed);
  for (uint64_t t = 0; t < trials; ++t) {
    auto a = random_nonzero_codeword(c, prng);
    auto b = random_nonzero_codeword(c, prng);
    if (supports_disjoint(a, b))
      return {Verdict::Fail, PairWitness{std::move(a), std::move(b)}, t + 1};
  }
  return {Verdict::PassSampled, std::nullopt, trials};
}

IntersectResult check_mutually_intersecting(const Code& a, const Code& b,
                                            const CheckLimits& lim) {
  require_linear(a, "check_mutually_intersecting");
  require_linear(b, "check_mutually_intersecting");
  if (a.field() != b.field() || a.length() != b.length())
    throw std::invalid_argument("check_mutually_intersecting: codes must share field and length");
  if (a.dim() == 0 || b.dim() == 0) return {Verdict::Pass, std::nullopt, 0};
  Reps ra = projective_reps(a, lim.pair_cap);
  Reps rb = projective_reps(b, lim.pair_cap);
  return cross_intersect(a.field(), ra.codewords, rb.codewords, a.length(), false,
                         lim.pair_cap);
}

IntersectResult check_mutually_intersecting_sampled(const Code& a, const Code& b,
                                                    uint64_t trials, uint64_t seed) {
  require_linear(a, "check_mutually_intersecting_sampled");
  require_linear(b, "check_mutually_intersecting_sampled");
  if (a.field() != b.field() || a.length() != b.length())
    throw std::invalid_argument("check_mutually_intersecting: codes must share field and length");
  if (a.dim() == 0 || b.dim() == 0) return {Verdict::PassSampled, std::nullopt, 0};
  rng::SplitMix64 prng(seed);
  for (uint64_t t = 0; t < trials; ++t) {
    auto wa = random_nonzero_codeword(a, prng);
    auto wb = random_nonzero_codeword(b, prng);
    if (supports_disjoint(wa, wb))
      return {Verdict::Fail, PairWitness{std::move(wa), std::move(wb)}, t + 1};
  }
  return {Verdict::PassSampled, std::nullopt, trials};
}

std::set<int> distance_set(const Code& c, const CheckLimits& lim) {
  const uint64_t m = c.size_fits_u64() ? c.size() : ~uint64_t{0};
  if (m == ~uint64_t{0} || pair_count(m) > lim.pair_cap)
    throw CapExceeded("distance_set: pair enumeration exceeds cap");
  WordView view = materialize(c, m);
  const Words& words = view.get();
  std::set<int> out;
  if (c.field().q() == 2) {
    Masks masks = pack_binary(words, c.length());
    for (uint64_t i = 0; i < m; ++i) {
      const uint64_t* ri = masks.row(i);
      for (uint64_t j = i + 1; j < m; ++j) {
        const uint64_t* rj = masks.row(j);
        int d = 0;
        for (size_t w = 0; w < masks.stride; ++w) d += std::popcount(ri[w] ^ rj[w]);
        out.insert(d);
      }
    }
  } else {
    for (uint64_t i = 0; i < m; ++i)
      for (uint64_t j = i + 1; j < m; ++j) {
        int d = 0;
        for (size_t s = 0; s < c.length(); ++s) d += words[i][s] != words[j][s];
        out.insert(d);
      }
  }
  return out;
}

double rate_bits(const Code& c) { return c.size_log2() / double(c.length()); }

double rate_q(const Code& c) {
  if (c.kind() == CodeKind::Linear) return double(c.dim()) / double(c.length());
  return c.size_log2() / (std::log2(double(c.field().q())) * double(c.length()));
}

std::pair<uint64_t, uint64_t> rate_q_ratio(const Code& c) {
  if (c.kind() != CodeKind::Linear)
    throw std::invalid_argument("rate_q_ratio: linear code required");
  return {c.dim(), c.length()};
}

}  // namespace sepsys::codes
