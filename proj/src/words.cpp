#include "goldman/words.hpp"

#include <algorithm>
#include <cctype>

namespace goldman {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = inverse(l);
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && cancels(out.back(), l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word multiply(const Word& x, const Word& y) {
  Word out = free_reduce(x);
  for (Letter l : y) {
    if (!out.empty() && cancels(out.back(), l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word power(const Word& w, int k) {
  Word base = k >= 0 ? w : inverse(w);
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out = multiply(out, base);
  return out;
}

std::string format_word(const Word& w) {
  std::string s;
  for (Letter l : w) {
    switch (l) {
      case Letter::A: s += "A"; break;
      case Letter::Ai: s += "A^-1"; break;
      case Letter::B: s += "B"; break;
      case Letter::Bi: s += "B^-1"; break;
    }
  }
  return s;
}

Word parse_word(std::string_view text) {
  Word out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw Error(ErrorCode::ParseError, "empty word");
  while (i < text.size()) {
    char c = text[i];
    if (c != 'A' && c != 'B') throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "'");
    Letter base = c == 'A' ? Letter::A : Letter::B;
    ++i;
    skip_ws();
    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      bool negative = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
      std::size_t start = i;
      exponent = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        exponent = exponent * 10 + (text[i] - '0');
        if (exponent > 1000) throw Error(ErrorCode::ParseError, "exponent too large");
        ++i;
      }
      if (i == start) throw Error(ErrorCode::ParseError, "missing exponent after '^'");
      if (exponent == 0) throw Error(ErrorCode::ParseError, "zero exponent");
      if (negative) exponent = -exponent;
    }
    Letter l = exponent > 0 ? base : inverse(base);
    for (long k = 0; k < std::abs(exponent); ++k) out.push_back(l);
    skip_ws();
  }
  return out;
}

Word cyclic_reduce(const Word& raw) {
  Word w = free_reduce(raw);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && cancels(w[lo], w[hi - 1])) ++lo, --hi;
  w = Word(w.begin() + lo, w.begin() + hi);
  if (w.empty()) return w;
  Word best = w;
  Word rot = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

CyclicWord CyclicWord::from_word(const Word& raw) {
  Word w = cyclic_reduce(raw);
  if (w.empty()) throw Error(ErrorCode::TrivialWord, "word reduces to the identity");
  return CyclicWord(std::move(w));
}

namespace {

std::size_t smallest_period(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = 0; i + p < n && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

bool CyclicWord::primitive() const { return smallest_period(w_) == w_.size(); }

bool CyclicWord::typical() const {
  Word root(w_.begin(), w_.begin() + smallest_period(w_));
  static const std::array<Word, 6> peripheral = {
      Word{Letter::A}, Word{Letter::Ai}, Word{Letter::B}, Word{Letter::Bi},
      Word{Letter::A, Letter::B}, Word{Letter::Ai, Letter::Bi}};
  return std::find(peripheral.begin(), peripheral.end(), root) == peripheral.end();
}

bool operator<(const CyclicWord& x, const CyclicWord& y) {
  if (x.w_.size() != y.w_.size()) return x.w_.size() < y.w_.size();
  return x.w_ < y.w_;
}

Word coset_representative(const Word& g, const Word& v) {
  const Word base = free_reduce(g);
  const int reach = static_cast<int>(base.size() / std::max<std::size_t>(v.size(), 1)) + 2;
  Word best = base;
  for (int k = -reach; k <= reach; ++k) {
    if (k == 0) continue;
    Word cand = multiply(base, power(v, k));
    if (cand.size() < best.size() || (cand.size() == best.size() && cand < best)) best = std::move(cand);
  }
  return best;
}

const Word& stabilizer_generator(int vertex_type) {
  static const std::array<Word, 3> gens = {Word{Letter::A}, Word{Letter::B}, word_C()};
  return gens.at(vertex_type);
}

GeneratorMatrices GeneratorMatrices::from(const HolonomyTriple& h) {
  GeneratorMatrices g;
  g.m[static_cast<int>(Letter::A)] = h.A.matrix();
  g.m[static_cast<int>(Letter::Ai)] = h.A.inverse().matrix();
  g.m[static_cast<int>(Letter::B)] = h.B.matrix();
  g.m[static_cast<int>(Letter::Bi)] = h.B.inverse().matrix();
  return g;
}

Mat3 word_matrix(const GeneratorMatrices& g, const Word& w) {
  Mat3 m = Mat3::Identity();
  for (Letter l : w) m = m * g[l];
  return m;
}

}  // namespace goldman
