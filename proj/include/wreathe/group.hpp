#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "wreathe/fp.hpp"
#include "wreathe/perm.hpp"

namespace wreathe {

// A finite permutation group, materialized as its full element list in
// canonical order (lexicographic on images; identity comes first since the
// identity image vector is lexicographically minimal). Multiplication is
// tabulated for small groups and composed on the fly above the table bound.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultBound = 10080;
  static constexpr std::size_t kTableBound = 4096;

  static FiniteGroup generate(const std::vector<Perm>& gens, int degree,
                              std::size_t bound = kDefaultBound) {
    for (auto& g : gens)
      if (g.degree() != degree || !g.valid()) throw error("invalid generator");
    FiniteGroup G;
    G.degree_ = degree;
    std::vector<Perm> elems = {Perm::identity(degree)};
    std::map<Perm, int> index = {{elems[0], 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (auto& g : gens) {
        Perm w = elems[head] * g;
        if (index.emplace(w, 0).second) {
          elems.push_back(w);
          if (elems.size() > bound) throw error("group too large");
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    G.elems_ = std::move(elems);
    for (std::size_t i = 0; i < G.elems_.size(); ++i) G.index_[G.elems_[i]] = static_cast<int>(i);
    for (auto& g : gens) G.gen_idx_.push_back(G.index_.at(g));
    if (G.order() <= kTableBound) {
      G.table_.assign(G.order() * G.order(), 0);
      for (std::size_t i = 0; i < G.order(); ++i)
        for (std::size_t j = 0; j < G.order(); ++j)
          G.table_[i * G.order() + j] =
              static_cast<std::uint16_t>(G.index_.at(G.elems_[i] * G.elems_[j]));
    }
    G.inv_.resize(G.order());
    for (std::size_t i = 0; i < G.order(); ++i) G.inv_[i] = G.index_.at(G.elems_[i].inverse());
    return G;
  }

  std::size_t order() const { return elems_.size(); }
  int degree() const { return degree_; }
  const Perm& elem(int i) const { return elems_[i]; }
  int id() const { return index_.at(Perm::identity(degree_)); }
  const std::vector<int>& generator_indices() const { return gen_idx_; }

  int index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw error("not a member");
    return it->second;
  }
  bool contains(const Perm& p) const { return index_.count(p) != 0; }

  int mul(int i, int j) const {
    if (!table_.empty()) return table_[i * order() + j];
    return index_.at(elems_[i] * elems_[j]);
  }
  int inv(int i) const { return inv_[i]; }
  int conj(int x, int by) const { return mul(mul(inv(by), x), by); }  // x^by = by^-1 x by

  long element_order(int i) const {
    long o = 1;
    int x = i;
    while (x != id()) {
      x = mul(x, i);
      ++o;
    }
    return o;
  }

  struct ConjClass {
    int rep;                   // least member in canonical order
    std::vector<int> members;  // sorted
    long centralizer_order;
  };

  std::vector<ConjClass> conjugacy_classes() const {
    std::vector<ConjClass> out;
    std::vector<bool> seen(order(), false);
    for (std::size_t i = 0; i < order(); ++i) {
      if (seen[i]) continue;
      ConjClass c;
      c.rep = static_cast<int>(i);
      for (std::size_t g = 0; g < order(); ++g) {
        int y = conj(static_cast<int>(i), static_cast<int>(g));
        if (!seen[y]) {
          seen[y] = true;
          c.members.push_back(y);
        }
      }
      std::sort(c.members.begin(), c.members.end());
      c.centralizer_order = static_cast<long>(order() / c.members.size());
      out.push_back(std::move(c));
    }
    return out;
  }

  // Representatives of the p'-classes: classes whose element order is coprime
  // to p.
  std::vector<int> p_prime_class_reps(long p) const {
    if (!is_prime_small(p)) throw error("invalid prime");
    std::vector<int> reps;
    for (auto& c : conjugacy_classes())
      if (element_order(c.rep) % p != 0) reps.push_back(c.rep);
    return reps;
  }

  std::vector<int> centralizer(int s) const {
    std::vector<int> out;
    for (std::size_t g = 0; g < order(); ++g)
      if (mul(static_cast<int>(g), s) == mul(s, static_cast<int>(g)))
        out.push_back(static_cast<int>(g));
    return out;
  }

  // Small generating set of a subgroup given by its element list.
  std::vector<int> subgroup_generators(const std::vector<int>& subgroup) const {
    std::vector<int> gens;
    std::vector<bool> in_closure(order(), false);
    std::vector<int> closure = {id()};
    in_closure[id()] = true;
    auto grow = [&]() {
      for (std::size_t head = 0; head < closure.size(); ++head)
        for (int g : gens) {
          int w = mul(closure[head], g);
          if (!in_closure[w]) {
            in_closure[w] = true;
            closure.push_back(w);
          }
        }
    };
    for (int s : subgroup) {
      if (in_closure[s]) continue;
      gens.push_back(s);
      grow();
    }
    return gens;
  }

  std::vector<int> closure_of(std::vector<int> gens) const {
    std::vector<bool> seen(order(), false);
    std::vector<int> close = {id()};
    seen[id()] = true;
    for (std::size_t head = 0; head < close.size(); ++head)
      for (int g : gens) {
        int w = mul(close[head], g);
        if (!seen[w]) {
          seen[w] = true;
          close.push_back(w);
        }
      }
    std::sort(close.begin(), close.end());
    return close;
  }

  // sigma = s*u = u*s with o(s) coprime to p and o(u) a power of p.
  struct PPartSplit {
    int p_regular;    // sigma_s
    int p_singular;   // sigma_u
  };
  PPartSplit p_part_split(int sigma, long p) const {
    long o = element_order(sigma);
    long pk = 1;
    while (o % p == 0) {
      o /= p;
      pk *= p;
    }
    long oprime = o;
    // a = 0 mod pk, a = 1 mod oprime
    long a = 0;
    for (long t = 0; t < oprime; ++t) {
      if ((t * pk) % oprime == 1 % oprime) {
        a = t * pk;
        break;
      }
    }
    long full = oprime * pk;
    long b = ((1 - a) % full + full) % full;
    auto power = [&](long e) {
      int r = id();
      for (long t = 0; t < e; ++t) r = mul(r, sigma);
      return r;
    };
    return {power(a), power(b)};
  }

  // Word for element i in terms of the generators (indices into the
  // generator list), via BFS from the identity.
  std::vector<std::vector<int>> generator_words() const {
    std::vector<std::vector<int>> words(order());
    std::vector<bool> seen(order(), false);
    std::vector<int> queue = {id()};
    seen[id()] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int cur = queue[head];
      for (std::size_t gi = 0; gi < gen_idx_.size(); ++gi) {
        int nxt = mul(cur, gen_idx_[gi]);
        if (!seen[nxt]) {
          seen[nxt] = true;
          words[nxt] = words[cur];
          words[nxt].push_back(static_cast<int>(gi));
          queue.push_back(nxt);
        }
      }
    }
    if (queue.size() != order()) throw error("generators do not generate the group");
    return words;
  }

 private:
  int degree_ = 0;
  std::vector<Perm> elems_;
  std::map<Perm, int> index_;
  std::vector<int> gen_idx_;
  std::vector<int> inv_;
  std::vector<std::uint16_t> table_;
};

}  // namespace wreathe
