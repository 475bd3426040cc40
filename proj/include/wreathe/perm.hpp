#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "wreathe/rational.hpp"

namespace wreathe {

// Permutation of {0, ..., n-1}, stored as the image vector. Products compose
// left-to-right: (a*b)(x) = b(a(x)), matching right actions.
struct Perm {
  std::vector<int> img;

  static Perm identity(int n) {
    Perm p;
    p.img.resize(n);
    for (int i = 0; i < n; ++i) p.img[i] = i;
    return p;
  }

  int degree() const { return static_cast<int>(img.size()); }
  int operator()(int x) const { return img[x]; }

  friend Perm operator*(const Perm& a, const Perm& b) {
    Perm r;
    r.img.resize(a.img.size());
    for (std::size_t i = 0; i < a.img.size(); ++i) r.img[i] = b.img[a.img[i]];
    return r;
  }
  Perm inverse() const {
    Perm r;
    r.img.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) r.img[img[i]] = static_cast<int>(i);
    return r;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < img.size(); ++i)
      if (img[i] != static_cast<int>(i)) return false;
    return true;
  }
  friend bool operator==(const Perm& a, const Perm& b) { return a.img == b.img; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img < b.img; }

  bool valid() const {
    std::vector<bool> seen(img.size(), false);
    for (int v : img) {
      if (v < 0 || v >= degree() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
};

// Cycle notation, 1-based: "(1,2)(3,4)", "(1,2,3)", "()" or "e" for identity.
inline Perm parse_perm(const std::string& s, int degree) {
  Perm p = Perm::identity(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) return p;
  while (i < s.size()) {
    skip_ws();
    if (i >= s.size()) break;
    if (s[i] != '(') throw error("bad cycle notation: " + s);
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw error("bad cycle notation: " + s);
      int v = std::stoi(s.substr(i, j - i));
      if (v < 1 || v > degree) throw error("cycle point out of range: " + s);
      cyc.push_back(v - 1);
      i = j;
      skip_ws();
      if (i < s.size() && s[i] == ',') ++i;
    }
    for (std::size_t t = 0; t < cyc.size(); ++t) p.img[cyc[t]] = cyc[(t + 1) % cyc.size()];
  }
  if (!p.valid()) throw error("bad cycle notation: " + s);
  return p;
}

inline std::string perm_str(const Perm& p) {
  std::vector<bool> seen(p.degree(), false);
  std::string out;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out += "(";
    int x = i;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ",";
      out += std::to_string(x + 1);
      first = false;
      x = p(x);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace wreathe
