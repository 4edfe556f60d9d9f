#pragma once

// Exact arithmetic in F_q, q = p^e.
//
// Elements are integers in [0, q). The base-p digits of an element are the
// coefficients of its polynomial representative, constant term in the least
// significant digit. Index 0 is zero, index 1 is one, and indices 0..p-1 are
// the prime subfield.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radproj {

using Elem = std::uint32_t;

/// Largest field cardinality accepted by Field::create.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

/// Fields up to this order use precomputed q x q operation tables.
inline constexpr std::uint32_t kTableFieldOrder = 256;

enum class FieldOp { add, sub, mul, div, neg, inv };

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

/// Monic polynomial irreducibility over F_p by trial division against every
/// monic polynomial of degree 1..deg/2. Coefficients are low-degree first.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

/// Lexicographically smallest (low-degree coefficient compared first) monic
/// irreducible polynomial of degree e over F_p, returned with e+1 coefficients.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t e);

/// Immutable handle to a finite field. Copies share the same tables.
class Field {
 public:
  static Field create(std::uint32_t p, std::uint32_t e = 1);

  std::uint32_t p() const { return impl_->p; }
  std::uint32_t e() const { return impl_->e; }
  std::uint32_t q() const { return impl_->q; }
  bool is_prime_field() const { return impl_->e == 1; }

  /// Modulus coefficients, low degree first, length e+1. For prime fields this
  /// is the polynomial x.
  std::span<const std::uint32_t> modulus() const { return impl_->modulus; }

  /// "p^e", e.g. "3^2".
  std::string label() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  /// Throws FieldError on a == 0.
  Elem inv(Elem a) const;
  /// Throws FieldError on b == 0.
  Elem div(Elem a, Elem b) const;

  /// Dispatch on op; b is ignored for neg and inv.
  Elem apply(FieldOp op, Elem a, Elem b = 0) const;

  /// The p elements of the prime subfield, i.e. indices 0..p-1.
  std::vector<Elem> prime_subfield() const;

  bool valid(Elem a) const { return a < impl_->q; }

  friend bool operator==(const Field& x, const Field& y) {
    return x.impl_ == y.impl_ || (x.impl_->p == y.impl_->p && x.impl_->e == y.impl_->e);
  }

 private:
  struct Impl {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;
    bool tabled = false;
    std::vector<std::uint16_t> add_tab;
    std::vector<std::uint16_t> mul_tab;
    std::vector<std::uint16_t> neg_tab;
    std::vector<std::uint16_t> inv_tab;
  };

  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static Elem poly_add(const Impl& f, Elem a, Elem b);
  static Elem poly_neg(const Impl& f, Elem a);
  static Elem poly_mul(const Impl& f, Elem a, Elem b);
  static Elem pow(const Impl& f, Elem a, std::uint64_t k);
  static Elem slow_inv(const Impl& f, Elem a);

  std::shared_ptr<const Impl> impl_;
};

}  // namespace radproj
