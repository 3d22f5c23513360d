#pragma once

// Words in the free group <A, B>; C = (BA)^-1 = A^-1 B^-1.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "goldman/pants.hpp"

namespace goldman {

// Letter order A < A^-1 < B < B^-1 defines canonical rotations.
enum class Letter : std::uint8_t { A = 0, Ai = 1, B = 2, Bi = 3 };

inline Letter inverse(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1u); }
inline bool cancels(Letter x, Letter y) { return inverse(x) == y; }

using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word free_reduce(const Word& w);
// Free reduction of x concatenated with y.
Word multiply(const Word& x, const Word& y);
Word power(const Word& w, int k);
std::string format_word(const Word& w);  // e.g. "AB^-1"

// Accepts letters A, B, optionally raised to a nonzero integer power, with
// arbitrary whitespace: "A B^-1", "A^2B^-1", "B^-1 A B".
Word parse_word(std::string_view text);  // throws ParseError

inline const Word& word_C() {
  static const Word w = {Letter::Ai, Letter::Bi};
  return w;
}
inline const Word& word_C_inverse() {
  static const Word w = {Letter::B, Letter::A};
  return w;
}

// Free homotopy class: reduced, cyclically reduced, least rotation.
class CyclicWord {
 public:
  static CyclicWord from_word(const Word& raw);  // throws TrivialWord
  static CyclicWord parse(std::string_view text) { return from_word(parse_word(text)); }

  const Word& letters() const { return w_; }
  std::size_t size() const { return w_.size(); }
  std::string str() const { return format_word(w_); }

  bool primitive() const;  // not a proper power
  // Not conjugate to a power of A, B or C.
  bool typical() const;
  CyclicWord inverse() const { return from_word(goldman::inverse(w_)); }

  friend bool operator==(const CyclicWord& x, const CyclicWord& y) { return x.w_ == y.w_; }
  // Shortlex order.
  friend bool operator<(const CyclicWord& x, const CyclicWord& y);

 private:
  explicit CyclicWord(Word w) : w_(std::move(w)) {}
  Word w_;
};

// Raw word -> reduced, cyclically reduced, canonical letters.
Word cyclic_reduce(const Word& raw);

struct GeneratorMatrices {
  std::array<Mat3, 4> m;  // indexed by Letter

  static GeneratorMatrices from(const HolonomyTriple& h);
  const Mat3& operator[](Letter l) const { return m[static_cast<int>(l)]; }
};

// Shortlex-least element of the coset g<v>.
Word coset_representative(const Word& g, const Word& v);

// Generators of the stabilizers of the ideal vertices a, b, c: A, B, C.
const Word& stabilizer_generator(int vertex_type);

// Product of the letter matrices, left to right.
Mat3 word_matrix(const GeneratorMatrices& g, const Word& w);

}  // namespace goldman
