#include "sepsys/gf.hpp"

#include <algorithm>

namespace sepsys::gf {
namespace {

constexpr uint32_t kMaxQ = 1u << 16;
constexpr uint32_t kTableLimit = 512;  // build full op tables up to this q

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct ModulusEntry {
  uint32_t p, k;
  std::vector<uint32_t> coeffs;  // ascending, monic
};

// Fixed modulus table for the supported extension fields. Each entry is
// validated by exhaustive trial division at construction time.
const std::vector<ModulusEntry>& modulus_table() {
  static const std::vector<ModulusEntry> table = {
      {2, 2, {1, 1, 1}},     // t^2 + t + 1
      {2, 3, {1, 1, 0, 1}},  // t^3 + t + 1
      {2, 4, {1, 1, 0, 0, 1}},
      {3, 2, {1, 0, 1}},  // t^2 + 1
      {3, 3, {1, 2, 0, 1}},
      {5, 2, {1, 1, 1}},
      {7, 2, {3, 1, 1}},
      {11, 2, {2, 7, 1}},  // t^2 + 7t + 2
      {13, 2, {2, 1, 1}},
  };
  return table;
}

// Polynomial helpers over GF(p) on plain coefficient vectors, used only for
// table construction and modulus validation.
std::vector<uint32_t> poly_mod(std::vector<uint32_t> a,
                               const std::vector<uint32_t>& m, uint32_t p) {
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    uint32_t lead = a.back();
    a.pop_back();
    if (lead == 0) continue;
    for (size_t i = 0; i < dm; ++i) {
      size_t pos = a.size() - dm + i;
      a[pos] = static_cast<uint32_t>((a[pos] + p - (uint64_t{lead} * m[i]) % p) % p);
    }
  }
  return a;
}

std::vector<uint32_t> poly_mul_mod(const std::vector<uint32_t>& a,
                                   const std::vector<uint32_t>& b,
                                   const std::vector<uint32_t>& m, uint32_t p) {
  std::vector<uint32_t> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(prod), m, p);
}

// Trial division by every monic polynomial of degree 1..k/2. Exhaustive and
// cheap at the table's sizes; subsumes the root check for k <= 3.
bool is_irreducible(const std::vector<uint32_t>& m, uint32_t p) {
  const size_t k = m.size() - 1;
  for (size_t d = 1; 2 * d <= k; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      std::vector<uint32_t> div(d + 1, 0);
      uint64_t t = idx;
      for (size_t i = 0; i < d; ++i) {
        div[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      div[d] = 1;
      // remainder of m by div
      std::vector<uint32_t> r = m;
      while (r.size() >= div.size()) {
        uint32_t lead = r.back();
        r.pop_back();
        if (lead == 0) continue;
        for (size_t i = 0; i + 1 < div.size(); ++i) {
          size_t pos = r.size() - (div.size() - 1) + i;
          r[pos] = (r[pos] + p - (lead * div[i]) % p) % p;
        }
      }
      while (!r.empty() && r.back() == 0) r.pop_back();
      if (r.empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(uint32_t p, uint32_t k) {
  if (!is_prime(p)) throw FieldError("field_new: p = " + std::to_string(p) + " is not prime");
  if (k < 1) throw FieldError("field_new: extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxQ) throw FieldError("field_new: p^k exceeds supported range 2^16");
  }

  auto data = std::make_shared<Data>();
  data->p = p;
  data->k = k;
  data->q = static_cast<uint32_t>(q);

  if (k == 1) {
    data->modulus = {0, 1};  // t
  } else {
    const auto& table = modulus_table();
    auto it = std::find_if(table.begin(), table.end(), [&](const ModulusEntry& e) {
      return e.p == p && e.k == k;
    });
    if (it == table.end())
      throw FieldError("field_new: no modulus table entry for GF(" + std::to_string(p) + "^" +
                       std::to_string(k) + ")");
    data->modulus = it->coeffs;
    if (data->modulus.size() != k + 1 || data->modulus.back() != 1)
      throw FieldError("field_new: modulus table entry is not monic of degree k");
    if (!is_irreducible(data->modulus, p))
      throw FieldError("field_new: modulus table entry is reducible");
  }

  if (data->q <= kTableLimit) {
    data->tabled = true;
    const uint32_t Q = data->q;
    data->add_table.resize(size_t{Q} * Q);
    data->mul_table.resize(size_t{Q} * Q);
    data->neg_table.resize(Q);
    data->inv_table.assign(Q, 0);
    d_ = data;  // temporary share so generic helpers see p/k/modulus
    for (uint32_t a = 0; a < Q; ++a) {
      for (uint32_t b = 0; b < Q; ++b) {
        data->add_table[size_t{a} * Q + b] = static_cast<uint16_t>(add_generic(a, b));
        data->mul_table[size_t{a} * Q + b] = static_cast<uint16_t>(mul_generic(a, b));
      }
    }
    for (uint32_t a = 0; a < Q; ++a) {
      for (uint32_t b = 0; b < Q; ++b) {
        if (data->add_table[size_t{a} * Q + b] == 0) {
          data->neg_table[a] = static_cast<uint16_t>(b);
          break;
        }
      }
    }
    for (uint32_t a = 1; a < Q; ++a) {
      uint16_t found = 0;
      for (uint32_t b = 1; b < Q; ++b) {
        if (data->mul_table[size_t{a} * Q + b] == 1) {
          found = static_cast<uint16_t>(b);
          break;
        }
      }
      if (found == 0) throw FieldError("field_new: element without inverse; modulus not irreducible");
      data->inv_table[a] = found;
    }
  }
  d_ = std::move(data);
}

uint32_t Field::add_generic(uint32_t a, uint32_t b) const {
  if (d_->k == 1) return (a + b) % d_->p;
  uint32_t out = 0, mul = 1;
  const uint32_t p = d_->p;
  for (uint32_t i = 0; i < d_->k; ++i) {
    out += ((a % p + b % p) % p) * mul;
    a /= p;
    b /= p;
    mul *= p;
  }
  return out;
}

uint32_t Field::mul_generic(uint32_t a, uint32_t b) const {
  const uint32_t p = d_->p;
  if (d_->k == 1) return static_cast<uint32_t>((uint64_t{a} * b) % p);
  std::vector<uint32_t> ca = decode(a), cb = decode(b);
  std::vector<uint32_t> prod = poly_mul_mod(ca, cb, d_->modulus, p);
  prod.resize(d_->k, 0);
  return encode(prod);
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
  if (d_->tabled) return d_->add_table[size_t{a} * d_->q + b];
  return add_generic(a, b);
}

uint32_t Field::neg(uint32_t a) const {
  if (d_->tabled) return d_->neg_table[a];
  return a == 0 ? 0 : d_->p - a;  // non-tabled fields are prime fields
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  if (d_->tabled) return d_->mul_table[size_t{a} * d_->q + b];
  return mul_generic(a, b);
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw FieldError("division by zero");
  if (d_->tabled) return d_->inv_table[a];
  return pow(a, static_cast<int64_t>(d_->q) - 2);
}

uint32_t Field::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

uint32_t Field::pow(uint32_t a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  uint32_t r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint32_t Field::encode(std::span<const uint32_t> coeffs) const {
  if (coeffs.size() != d_->k) throw FieldError("encode: expected exactly k coefficients");
  uint32_t e = 0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= d_->p) throw FieldError("encode: coefficient out of range");
    e = e * d_->p + coeffs[i];
  }
  return e;
}

std::vector<uint32_t> Field::decode(uint32_t enc) const {
  if (enc >= d_->q) throw FieldError("decode: encoding out of range");
  std::vector<uint32_t> c(d_->k);
  for (uint32_t i = 0; i < d_->k; ++i) {
    c[i] = enc % d_->p;
    enc /= d_->p;
  }
  return c;
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(d_->q);
  for (uint32_t e = 0; e < d_->q; ++e) out.emplace_back(*this, e);
  return out;
}

FieldElement Field::element(uint32_t enc) const { return FieldElement(*this, enc); }

bool Field::operator==(const Field& other) const {
  if (d_ == other.d_) return true;
  return d_->p == other.d_->p && d_->k == other.d_->k && d_->modulus == other.d_->modulus;
}

FieldElement::FieldElement(Field field, uint32_t enc) : field_(std::move(field)), enc_(enc) {
  if (enc_ >= field_.q()) throw FieldError("element encoding out of range");
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (field_ != o.field_) throw FieldError("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.add(enc_, o.enc_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.sub(enc_, o.enc_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.mul(enc_, o.enc_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement(field_, field_.div(enc_, o.enc_));
}

FieldElement FieldElement::operator-() const { return FieldElement(field_, field_.neg(enc_)); }

FieldElement FieldElement::inverse() const { return FieldElement(field_, field_.inv(enc_)); }

FieldElement FieldElement::pow(int64_t e) const { return FieldElement(field_, field_.pow(enc_, e)); }

}  // namespace sepsys::gf
