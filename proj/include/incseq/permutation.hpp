#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "incseq/types.hpp"

namespace incseq {

// A permutation of {1..n} in one-line notation: images[i] = sigma(i+1).
struct Permutation {
  std::vector<int> images;

  Permutation() = default;
  explicit Permutation(std::vector<int> one_line) : images(std::move(one_line)) { validate(); }

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<size_t>(i - 1)]; }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(v));
  }

  static Permutation reversed(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n - i;
    return Permutation(std::move(v));
  }

  // Serialization is comma-separated one-line notation, e.g. "1,3,4,5,2".
  std::string to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < images.size(); ++i) {
      if (i) out << ',';
      out << images[i];
    }
    return out.str();
  }

  static Permutation from_string(const std::string& text) {
    std::vector<int> v;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) v.push_back(std::stoi(tok));
    return Permutation(std::move(v));
  }

 private:
  void validate() const {
    const int n = size();
    if (n < 1) throw std::invalid_argument("Permutation: need n >= 1");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (const int v : images) {
      if (v < 1 || v > n || seen[static_cast<size_t>(v - 1)])
        throw std::invalid_argument("Permutation: not a bijection on 1..n");
      seen[static_cast<size_t>(v - 1)] = 1;
    }
  }
};

// Positions of each value: inverse()[v-1] is the index (1-based) where
// value v sits.
inline std::vector<int> inverse_positions(const Permutation& perm) {
  std::vector<int> pos(static_cast<size_t>(perm.size()));
  for (int i = 1; i <= perm.size(); ++i) pos[static_cast<size_t>(perm(i) - 1)] = i;
  return pos;
}

// Does the value chain v_1 < v_2 < ... appear in increasing position order?
// This is the event B^n_{v_1,...,v_k} of the indicator-sum representation.
inline bool contains_chain(const Permutation& perm, const std::vector<int>& values) {
  const auto pos = inverse_positions(perm);
  int last = 0;
  for (const int v : values) {
    const int p = pos[static_cast<size_t>(v - 1)];
    if (p <= last) return false;
    last = p;
  }
  return true;
}

}  // namespace incseq
