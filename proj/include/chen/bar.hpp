#pragma once

#include "chen/errors.hpp"
#include "chen/forms.hpp"
#include "chen/pathforms.hpp"
#include "chen/random.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chen {

struct Generator {
  std::string name;
  int degree;
  /// Name of d(this), or empty when d(this) = 0.
  std::string d_image;
};

/// Free graded-commutative algebra on named generators with a differential
/// fixed on generators. Every d-image is closed.
class Dga {
 public:
  /// d_image: "" for zero, "fresh" for a new closed generator "d<name>" of
  /// degree+1, or the name of an existing closed generator of degree+1.
  void add(const std::string& name, int degree, const std::string& d_image = "");

  bool has(const std::string& name) const { return gens_.count(name) > 0; }
  const Generator& at(const std::string& name) const;
  int degree(const std::string& name) const { return at(name).degree; }
  const std::map<std::string, Generator>& generators() const { return gens_; }

  /// Parses [{"name": "a", "degree": 2, "d": "b" | 0 | "fresh"}, ...].
  static Dga from_json(std::string_view text);

 private:
  std::map<std::string, Generator> gens_;
};

/// Sorted generator names; equal names may repeat only for even generators.
using Monomial = std::vector<std::string>;

int degree(const Dga& g, const Monomial& m);
/// Sorts names with Koszul signs; returns 0 if an odd generator repeats.
int normalize(const Dga& g, Monomial& m);
/// "1" for the empty monomial, else names joined by "∧".
std::string to_string(const Monomial& m);

class DgaElement {
 public:
  DgaElement() = default;
  static DgaElement one();
  static DgaElement generator(const std::string& name);
  static DgaElement monomial(const Dga& g, Monomial m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Adds c times an already normalized monomial.
  void add(const Monomial& m, const Rational& c);

  DgaElement& operator+=(const DgaElement& o);
  friend DgaElement operator+(DgaElement a, const DgaElement& b) { return a += b; }
  friend DgaElement operator*(const Rational& c, DgaElement a);
  friend bool operator==(const DgaElement& a, const DgaElement& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Monomial, Rational> terms_;
};

DgaElement wedge(const Dga& g, const DgaElement& a, const DgaElement& b);
DgaElement d(const Dga& g, const DgaElement& a);
std::string to_string(const DgaElement& a);

enum class BarVariant { Based, Hochschild };
std::string_view to_string(BarVariant v);
BarVariant parse_variant(std::string_view s);

struct BarKey {
  Monomial left;
  std::vector<Monomial> word;
  Monomial right;
  auto operator<=>(const BarKey&) const = default;
};

/// Formal sum of left[w_1|...|w_k]right with rational coefficients. BASED
/// elements have trivial boundary factors; word entries have degree >= 1.
class BarElement {
 public:
  explicit BarElement(BarVariant v) : variant_(v) {}

  BarVariant variant() const { return variant_; }
  const std::map<BarKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * left[word]right after normalizing every monomial.
  void add(const Dga& g, Monomial left, std::vector<Monomial> word, Monomial right, const Rational& c);
  /// Multilinear expansion of c * left[word]right over sums.
  void add(const Dga& g, const DgaElement& left, const std::vector<DgaElement>& word, const DgaElement& right,
           const Rational& c);

  BarElement& operator+=(const BarElement& o);
  friend bool operator==(const BarElement& a, const BarElement& b) {
    return a.variant_ == b.variant_ && a.terms_ == b.terms_;
  }

 private:
  BarVariant variant_;
  std::map<BarKey, Rational> terms_;
};

/// Path-space degree deg(left) + sum (deg w_i - 1) + deg(right).
int degree(const Dga& g, const BarKey& k);
/// Word length never increases; total degree rises by exactly one.
BarElement bar_differential(const Dga& g, const BarElement& e);
/// bar_differential applied twice; exactly zero for every input.
BarElement certify_d_squared(const Dga& g, const BarElement& e);

/// "a|b*c", "L:x|a|R:y*z"; an empty string is the empty word.
BarElement parse_bar_word(std::string_view text, const Dga& g, BarVariant v);
/// e.g. "-[da|b]", "3/2 x·[a|b]·y".
std::string format_term(const BarKey& k, const Rational& c);
std::vector<std::string> format_terms(const BarElement& e);

using Binding = std::map<std::string, Form>;

/// Sum of coef * phi_0^*(left) ^ int(word) ^ phi_1^*(right). Fresh-style
/// d-images left unbound are bound to d of their source. `degree` is used
/// for the zero element and otherwise must agree with every term.
PathForm realize(const Dga& g, const BarElement& e, Binding binding, QuadratureConfig q = {},
                 std::optional<int> degree = std::nullopt);

/// Random closed-under-d algebra with generators of degree 1..max_degree
/// (plus degree-0 ones for boundary factors).
Dga random_dga(Rng& rng, int max_degree = 3);
/// Random element with 1..3 terms, word length <= max_k.
BarElement random_bar_element(Rng& rng, const Dga& g, BarVariant v, int max_k = 4);

}  // namespace chen
