#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "wreathe/group.hpp"

using namespace wreathe;

namespace {

// Independent order oracle: orbit-stabilizer recursion (tiny Schreier-Sims).
long group_order_oracle(std::vector<Perm> gens, int degree) {
  if (gens.empty()) return 1;
  int base = -1;
  for (int x = 0; x < degree && base < 0; ++x)
    for (auto& g : gens)
      if (g(x) != x) {
        base = x;
        break;
      }
  if (base < 0) return 1;
  std::map<int, Perm> reps;
  reps[base] = Perm::identity(degree);
  std::vector<int> orbit = {base};
  for (std::size_t h = 0; h < orbit.size(); ++h)
    for (auto& g : gens) {
      int y = g(orbit[h]);
      if (!reps.count(y)) {
        reps[y] = reps[orbit[h]] * g;
        orbit.push_back(y);
      }
    }
  std::vector<Perm> stab_gens;  // Schreier generators
  std::set<Perm> dedup;
  for (int x : orbit)
    for (auto& g : gens) {
      Perm s = reps[x] * g * reps[g(x)].inverse();
      if (!s.is_identity() && dedup.insert(s).second) stab_gens.push_back(s);
    }
  return static_cast<long>(orbit.size()) * group_order_oracle(stab_gens, degree);
}

FiniteGroup S3() {
  return FiniteGroup::generate({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3);
}
FiniteGroup S4() {
  return FiniteGroup::generate({parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 4);
}

}  // namespace

TEST_CASE("cycle notation parse/print") {
  auto p = parse_perm("(1,2)(3,4)", 4);
  CHECK(p(0) == 1);
  CHECK(p(2) == 3);
  CHECK(perm_str(p) == "(1,2)(3,4)");
  CHECK(parse_perm("e", 4).is_identity());
  CHECK_THROWS_AS(parse_perm("(1,5)", 4), error);
}

TEST_CASE("generate with orbit oracle") {
  CHECK(S3().order() == 6);
  CHECK(group_order_oracle({parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 3) == 6);
  CHECK(S4().order() == 24);
  CHECK(group_order_oracle({parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 4) == 24);
  auto trivial = FiniteGroup::generate({}, 3);
  CHECK(trivial.order() == 1);
  CHECK_THROWS_WITH_AS(
      FiniteGroup::generate({parse_perm("(1,2)", 9), parse_perm("(1,2,3,4,5,6,7,8,9)", 9)}, 9,
                            100),
      "group too large", error);
}

TEST_CASE("canonical order puts identity first") {
  auto G = S4();
  CHECK(G.id() == 0);
  for (std::size_t i = 1; i < G.order(); ++i) CHECK(G.elem(i - 1) < G.elem(i));
}

TEST_CASE("conjugacy classes") {
  auto g3 = S3().conjugacy_classes();
  std::multiset<std::size_t> sizes3;
  for (auto& c : g3) sizes3.insert(c.members.size());
  CHECK(sizes3 == std::multiset<std::size_t>{1, 3, 2});

  auto g4 = S4().conjugacy_classes();
  std::multiset<std::size_t> sizes4;
  std::size_t total = 0;
  for (auto& c : g4) {
    sizes4.insert(c.members.size());
    total += c.members.size();
    CHECK(c.members.size() * c.centralizer_order == 24);
    CHECK(24 % c.members.size() == 0);
  }
  CHECK(sizes4 == std::multiset<std::size_t>{1, 6, 3, 8, 6});
  CHECK(total == 24);

  auto t = FiniteGroup::generate({}, 2).conjugacy_classes();
  CHECK(t.size() == 1);
}

TEST_CASE("p_prime_class_reps on S4") {
  auto G = S4();
  auto cycle_type = [&](int r) {
    // partition signature of the permutation, as sorted cycle lengths
    std::multiset<int> t;
    const Perm& p = G.elem(r);
    std::vector<bool> seen(4, false);
    for (int x = 0; x < 4; ++x) {
      if (seen[x]) continue;
      int len = 0, y = x;
      while (!seen[y]) {
        seen[y] = true;
        y = p(y);
        ++len;
      }
      t.insert(len);
    }
    return t;
  };
  auto at = [&](long p) {
    std::multiset<std::multiset<int>> types;
    for (int r : G.p_prime_class_reps(p)) types.insert(cycle_type(r));
    return types;
  };
  using T = std::multiset<int>;
  // classes of e, (1,2), (1,2)(3,4), (1,2,3,4)
  CHECK(at(3) == std::multiset<T>{T{1, 1, 1, 1}, T{2, 1, 1}, T{2, 2}, T{4}});
  CHECK(at(31).size() == 5);
  // classes of e and (1,2,3)
  CHECK(at(2) == std::multiset<T>{T{1, 1, 1, 1}, T{3, 1}});
  CHECK_THROWS_WITH_AS(G.p_prime_class_reps(6), "invalid prime", error);
  // p coprime to |G| keeps every class
  CHECK(at(31).size() == G.conjugacy_classes().size());
}

TEST_CASE("centralizers") {
  auto G = S4();
  CHECK(G.centralizer(G.index_of(parse_perm("(1,2)(3,4)", 4))).size() == 8);
  CHECK(G.centralizer(G.id()).size() == 24);
  auto H = S3();
  CHECK(H.centralizer(H.index_of(parse_perm("(1,2,3)", 3))).size() == 3);
  CHECK_THROWS_WITH_AS(H.index_of(parse_perm("(1,2)(3,4)", 4)), "not a member", error);
}

TEST_CASE("element order and p-part splitting") {
  auto G = FiniteGroup::generate({parse_perm("(1,2,3,4,5,6)", 6)}, 6);
  int s = G.index_of(parse_perm("(1,2,3,4,5,6)", 6));
  CHECK(G.element_order(s) == 6);
  auto sp = G.p_part_split(s, 2);
  CHECK(G.element_order(sp.p_regular) == 3);
  CHECK(G.element_order(sp.p_singular) == 2);
  CHECK(G.mul(sp.p_regular, sp.p_singular) == s);
  CHECK(G.mul(sp.p_singular, sp.p_regular) == s);
  // sigma^4 and sigma^3
  int s4 = G.mul(G.mul(s, s), G.mul(s, s));
  int s3 = G.mul(G.mul(s, s), s);
  CHECK(sp.p_regular == s4);
  CHECK(sp.p_singular == s3);

  auto C4 = FiniteGroup::generate({parse_perm("(1,2,3,4)", 4)}, 4);
  int c = C4.index_of(parse_perm("(1,2,3,4)", 4));
  CHECK(C4.element_order(c) == 4);
  auto cp = C4.p_part_split(c, 2);
  CHECK(cp.p_regular == C4.id());
  CHECK(cp.p_singular == c);

  // property: components commute and multiply back, over all of S4 at 2 and 3
  auto S = S4();
  for (long p : {2L, 3L})
    for (std::size_t i = 0; i < S.order(); ++i) {
      auto ps = S.p_part_split(static_cast<int>(i), p);
      CHECK(S.mul(ps.p_regular, ps.p_singular) == static_cast<int>(i));
      CHECK(S.mul(ps.p_singular, ps.p_regular) == static_cast<int>(i));
      CHECK(S.element_order(ps.p_regular) % p != 0);
      long ou = S.element_order(ps.p_singular);
      while (ou % p == 0) ou /= p;
      CHECK(ou == 1);
      CHECK(S.element_order(ps.p_regular) * S.element_order(ps.p_singular) ==
            S.element_order(static_cast<int>(i)));
    }
}

TEST_CASE("subgroup generators and closure") {
  auto G = S4();
  auto cent = G.centralizer(G.index_of(parse_perm("(1,2)(3,4)", 4)));
  auto gens = G.subgroup_generators(cent);
  CHECK(gens.size() <= 3);
  CHECK(G.closure_of(gens) == cent);
}

TEST_CASE("Q8 as a permutation group") {
  auto i = parse_perm("(1,2,3,4)(5,6,7,8)", 8);
  auto j = parse_perm("(1,5,3,7)(2,8,4,6)", 8);
  auto Q8 = FiniteGroup::generate({i, j}, 8);
  CHECK(Q8.order() == 8);
  int ii = Q8.index_of(i), jj = Q8.index_of(j);
  CHECK(Q8.element_order(ii) == 4);
  CHECK(Q8.element_order(jj) == 4);
  // i^2 = j^2, j^-1 i j = i^-1
  CHECK(Q8.mul(ii, ii) == Q8.mul(jj, jj));
  CHECK(Q8.conj(ii, jj) == Q8.inv(ii));
  // exactly one element of order 2
  int count2 = 0;
  for (std::size_t x = 0; x < 8; ++x)
    if (Q8.element_order(static_cast<int>(x)) == 2) ++count2;
  CHECK(count2 == 1);
}
