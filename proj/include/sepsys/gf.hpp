#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepsys::gf {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Field;
class FieldElement;

// Exact arithmetic in GF(p^k), operating on integer-encoded elements.
//
// An element is a polynomial of degree < k over GF(p); its encoding is
// sum coeffs[i] * p^i, a bijection onto [0, q). Encodings 0 and 1 are the
// additive and multiplicative identities. Extension moduli come from a fixed
// table (validated by exhaustive irreducibility check on construction) so
// that encodings are reproducible across runs and platforms.
//
// Immutable after construction; all operations are pure and safe for
// unrestricted concurrent use. Copying a Field is cheap (shared immutable
// state); two Fields compare equal iff they have the same p, k and modulus.
class Field {
 public:
  // Throws FieldError for non-prime p, k = 0, q > 2^16, or a (p, k) pair
  // with k >= 2 that is absent from the modulus table.
  Field(uint32_t p, uint32_t k);

  uint32_t p() const { return d_->p; }
  uint32_t k() const { return d_->k; }
  uint32_t q() const { return d_->q; }

  // Monic modulus polynomial, k+1 coefficients in ascending degree order.
  const std::vector<uint32_t>& modulus() const { return d_->modulus; }

  // Arithmetic on encodings. Inputs must lie in [0, q).
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t inv(uint32_t a) const;  // throws FieldError on 0
  uint32_t div(uint32_t a, uint32_t b) const;
  uint32_t pow(uint32_t a, int64_t e) const;

  uint32_t encode(std::span<const uint32_t> coeffs) const;
  std::vector<uint32_t> decode(uint32_t enc) const;

  // All q elements in increasing encoding order, starting 0, 1, ...
  std::vector<FieldElement> elements() const;
  FieldElement element(uint32_t enc) const;

  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

 private:
  struct Data {
    uint32_t p = 0, k = 0, q = 0;
    std::vector<uint32_t> modulus;
    bool tabled = false;
    std::vector<uint16_t> add_table;  // q*q entries when tabled
    std::vector<uint16_t> mul_table;
    std::vector<uint16_t> neg_table;
    std::vector<uint16_t> inv_table;  // inv_table[0] unused
  };

  uint32_t mul_generic(uint32_t a, uint32_t b) const;
  uint32_t add_generic(uint32_t a, uint32_t b) const;

  std::shared_ptr<const Data> d_;
};

// A field element as a value: owning Field handle plus encoding.
// Mixed-field operations throw FieldError.
class FieldElement {
 public:
  FieldElement(Field field, uint32_t enc);

  const Field& field() const { return field_; }
  uint32_t enc() const { return enc_; }
  std::vector<uint32_t> coeffs() const { return field_.decode(enc_); }
  bool is_zero() const { return enc_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(int64_t e) const;

  bool operator==(const FieldElement& o) const {
    return field_ == o.field_ && enc_ == o.enc_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void require_same_field(const FieldElement& o) const;

  Field field_;
  uint32_t enc_;
};

}  // namespace sepsys::gf
