#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wreathe/colength.hpp"
#include "wreathe/modular.hpp"

namespace wreathe {

// One Wedderburn block as declared in a scenario file.
struct RepSpec {
  enum class Kind { principal, matrices, idempotent };
  enum class Alg { rational, field, quaternion };
  Kind kind = Kind::principal;
  Alg alg = Alg::rational;
  std::vector<Rational> alg_mu;  // ascending, for Alg::field
  Rational quat_a, quat_b;
  long x = 0;
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> gen_mats;
  std::vector<std::vector<std::string>> gamma_mat;
  std::vector<std::pair<std::string, std::string>> lets;  // for Kind::idempotent

  friend bool operator==(const RepSpec& a, const RepSpec& b) {
    return a.kind == b.kind && a.alg == b.alg && a.alg_mu == b.alg_mu && a.quat_a == b.quat_a &&
           a.quat_b == b.quat_b && a.x == b.x && a.gen_mats == b.gen_mats &&
           a.gamma_mat == b.gamma_mat && a.lets == b.lets;
  }
};

struct BlockSpec {
  long x = 0, d = 1, r = 1, c = 1;
  bool auto_deltaS = true, auto_deltaZS = true;
  std::map<long, long> deltaS, deltaZS;  // per prime, when explicit

  friend bool operator==(const BlockSpec& a, const BlockSpec& b) {
    return a.x == b.x && a.d == b.d && a.r == b.r && a.c == b.c &&
           a.auto_deltaS == b.auto_deltaS && a.auto_deltaZS == b.auto_deltaZS &&
           a.deltaS == b.deltaS && a.deltaZS == b.deltaZS;
  }
};

struct Scenario {
  std::string name;
  int degree = 0;
  std::vector<std::string> gens;
  std::vector<Rational> mu;  // ascending
  std::vector<std::pair<std::string, std::string>> actions;
  std::vector<long> primes;
  std::vector<RepSpec> reps;
  std::vector<BlockSpec> blocks;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.degree == b.degree && a.gens == b.gens && a.mu == b.mu &&
           a.actions == b.actions && a.primes == b.primes && a.reps == b.reps &&
           a.blocks == b.blocks;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Split "[[a,b],[c,d]]" into rows of entry strings (commas at depth 1 split
// rows, at depth 2 split entries; entries may contain spaces).
inline std::vector<std::vector<std::string>> parse_matrix_literal(const std::string& src,
                                                                  const std::string& where) {
  std::vector<std::vector<std::string>> rows;
  long depth = 0;
  std::vector<std::string> cur_row;
  std::string cur;
  bool started = false;
  for (char ch : src) {
    if (ch == '[') {
      ++depth;
      if (depth == 1) started = true;
      if (depth <= 2) continue;
    }
    if (ch == ']') {
      --depth;
      if (depth == 1) {
        cur_row.push_back(trim(cur));
        cur.clear();
        rows.push_back(cur_row);
        cur_row.clear();
      }
      if (depth < 0) throw error("bad matrix literal in " + where);
      if (depth <= 1) continue;
    }
    if (ch == ',' && depth == 1) continue;  // between rows
    if (ch == ',' && depth == 2) {
      cur_row.push_back(trim(cur));
      cur.clear();
      continue;
    }
    if (depth >= 2) cur += ch;
  }
  if (depth != 0 || !started || rows.empty()) throw error("bad matrix literal in " + where);
  std::size_t w = rows[0].size();
  for (auto& r : rows)
    if (r.size() != w) throw error("ragged matrix literal in " + where);
  return rows;
}

inline std::string matrix_literal_str(const std::vector<std::vector<std::string>>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += (i ? ",[" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? "," : "") + m[i][j];
    out += "]";
  }
  return out + "]";
}

}  // namespace detail

inline Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  long lineno = 0;
  long rep_index = -1;
  auto fail = [&](const std::string& msg) {
    throw error("scenario line " + std::to_string(lineno) + " [" +
                (section.empty() ? "header" : section) + "]: " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      if (section.rfind("representation.", 0) == 0) {
        rep_index = std::stol(section.substr(15)) - 1;
        if (rep_index < 0) fail("representation indices are 1-based");
        while (static_cast<long>(sc.reps.size()) <= rep_index) sc.reps.emplace_back();
      }
      continue;
    }
    if (section.empty()) {
      auto toks = detail::split_ws(t);
      if (toks.size() == 2 && toks[0] == "name") {
        sc.name = toks[1];
        continue;
      }
      fail("expected 'name <id>'");
    } else if (section == "group") {
      auto toks = detail::split_ws(t);
      if (toks.size() == 2 && toks[0] == "degree")
        sc.degree = std::stoi(toks[1]);
      else if (toks.size() == 2 && toks[0] == "gen")
        sc.gens.push_back(toks[1]);
      else
        fail("expected 'degree <n>' or 'gen <cycles>'");
    } else if (section == "field") {
      auto toks = detail::split_ws(t);
      if (toks.empty() || toks[0] != "mu") fail("expected 'mu <coeffs ascending>'");
      for (std::size_t i = 1; i < toks.size(); ++i) sc.mu.push_back(Rational::parse(toks[i]));
    } else if (section == "action") {
      auto sp = t.find(' ');
      if (sp == std::string::npos) fail("expected '<cycles> <expression>'");
      sc.actions.emplace_back(t.substr(0, sp), detail::trim(t.substr(sp + 1)));
    } else if (section == "primes") {
      for (auto& tok : detail::split_ws(t)) sc.primes.push_back(std::stol(tok));
    } else if (section.rfind("representation.", 0) == 0) {
      auto& rep = sc.reps[rep_index];
      auto toks = detail::split_ws(t);
      if (toks.empty()) continue;
      if (toks[0] == "kind") {
        if (toks.size() != 2) fail("expected 'kind principal|matrices|idempotent'");
        if (toks[1] == "principal")
          rep.kind = RepSpec::Kind::principal;
        else if (toks[1] == "matrices")
          rep.kind = RepSpec::Kind::matrices;
        else if (toks[1] == "idempotent")
          rep.kind = RepSpec::Kind::idempotent;
        else
          fail("unknown representation kind " + toks[1]);
      } else if (toks[0] == "algebra") {
        if (toks.size() >= 2 && toks[1] == "rational")
          rep.alg = RepSpec::Alg::rational;
        else if (toks.size() >= 3 && toks[1] == "field") {
          rep.alg = RepSpec::Alg::field;
          for (std::size_t i = 2; i < toks.size(); ++i)
            rep.alg_mu.push_back(Rational::parse(toks[i]));
        } else if (toks.size() == 4 && toks[1] == "quaternion") {
          rep.alg = RepSpec::Alg::quaternion;
          rep.quat_a = Rational::parse(toks[2]);
          rep.quat_b = Rational::parse(toks[3]);
        } else {
          fail("expected 'algebra rational|field <coeffs>|quaternion <a> <b>'");
        }
      } else if (toks[0] == "x") {
        if (toks.size() != 2) fail("expected 'x <n>'");
        rep.x = std::stol(toks[1]);
      } else if (toks[0] == "gen") {
        auto rest = detail::trim(t.substr(3));
        auto sp = rest.find(' ');
        if (sp == std::string::npos) fail("expected 'gen <cycles> <matrix>'");
        rep.gen_mats.emplace_back(
            rest.substr(0, sp),
            detail::parse_matrix_literal(detail::trim(rest.substr(sp + 1)), section));
      } else if (toks[0] == "gamma") {
        rep.gamma_mat =
            detail::parse_matrix_literal(detail::trim(t.substr(5)), section);
      } else if (toks[0] == "let") {
        auto eq = t.find('=');
        if (eq == std::string::npos || toks.size() < 3) fail("expected 'let <name> = <expr>'");
        rep.lets.emplace_back(toks[1], detail::trim(t.substr(eq + 1)));
      } else {
        fail("unknown representation attribute " + toks[0]);
      }
    } else if (section == "blocks") {
      auto toks = detail::split_ws(t);
      if (toks.empty() || toks[0] != "block") fail("expected 'block k=v ...'");
      BlockSpec b;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) fail("expected key=value in block line");
        auto key = toks[i].substr(0, eq);
        auto val = toks[i].substr(eq + 1);
        auto parse_deltas = [&](std::map<long, long>& m, bool& auto_flag) {
          if (val == "auto") {
            auto_flag = true;
            return;
          }
          auto_flag = false;
          std::istringstream ds(val);
          std::string pair;
          while (std::getline(ds, pair, ',')) {
            auto colon = pair.find(':');
            if (colon == std::string::npos) fail("expected deltas as p:v,...");
            m[std::stol(pair.substr(0, colon))] = std::stol(pair.substr(colon + 1));
          }
        };
        if (key == "x")
          b.x = std::stol(val);
        else if (key == "d")
          b.d = std::stol(val);
        else if (key == "r")
          b.r = std::stol(val);
        else if (key == "c")
          b.c = std::stol(val);
        else if (key == "deltaS")
          parse_deltas(b.deltaS, b.auto_deltaS);
        else if (key == "deltaZS")
          parse_deltas(b.deltaZS, b.auto_deltaZS);
        else
          fail("unknown block key " + key);
      }
      sc.blocks.push_back(std::move(b));
    } else {
      fail("unknown section");
    }
  }
  if (sc.name.empty()) throw error("scenario missing 'name'");
  if (sc.degree <= 0) throw error("scenario missing [group] degree");
  if (sc.mu.empty()) throw error("scenario missing [field] mu");
  return sc;
}

inline Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

inline std::string print_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "name " << sc.name << "\n";
  out << "[group]\n"
      << "degree " << sc.degree << "\n";
  for (auto& g : sc.gens) out << "gen " << g << "\n";
  out << "[field]\nmu";
  for (auto& c : sc.mu) out << " " << c.str();
  out << "\n[action]\n";
  for (auto& [p, e] : sc.actions) out << p << " " << e << "\n";
  out << "[primes]\n";
  for (std::size_t i = 0; i < sc.primes.size(); ++i)
    out << (i ? " " : "") << sc.primes[i];
  out << "\n";
  for (std::size_t i = 0; i < sc.reps.size(); ++i) {
    const auto& rep = sc.reps[i];
    out << "[representation." << (i + 1) << "]\n";
    out << "kind "
        << (rep.kind == RepSpec::Kind::principal
                ? "principal"
                : rep.kind == RepSpec::Kind::matrices ? "matrices" : "idempotent")
        << "\n";
    if (rep.kind != RepSpec::Kind::principal) {
      if (rep.alg == RepSpec::Alg::rational)
        out << "algebra rational\n";
      else if (rep.alg == RepSpec::Alg::field) {
        out << "algebra field";
        for (auto& c : rep.alg_mu) out << " " << c.str();
        out << "\n";
      } else {
        out << "algebra quaternion " << rep.quat_a.str() << " " << rep.quat_b.str() << "\n";
      }
    }
    if (rep.x > 0) out << "x " << rep.x << "\n";
    for (auto& [p, m] : rep.gen_mats)
      out << "gen " << p << " " << detail::matrix_literal_str(m) << "\n";
    if (!rep.gamma_mat.empty())
      out << "gamma " << detail::matrix_literal_str(rep.gamma_mat) << "\n";
    for (auto& [n, e] : rep.lets) out << "let " << n << " = " << e << "\n";
  }
  if (!sc.blocks.empty()) {
    out << "[blocks]\n";
    for (auto& b : sc.blocks) {
      out << "block x=" << b.x << " d=" << b.d << " r=" << b.r << " c=" << b.c;
      auto emit = [&](const char* key, bool auto_flag, const std::map<long, long>& m) {
        out << " " << key << "=";
        if (auto_flag) {
          out << "auto";
          return;
        }
        bool first = true;
        for (auto& [p, v] : m) {
          out << (first ? "" : ",") << p << ":" << v;
          first = false;
        }
      };
      emit("deltaS", b.auto_deltaS, b.deltaS);
      emit("deltaZS", b.auto_deltaZS, b.deltaZS);
      out << "\n";
    }
  }
  return out.str();
}

// A validated scenario: the number ring, the twisted ring over it, and any
// declared representation data.
struct ScenarioBundle {
  Scenario sc;
  std::unique_ptr<GaloisNumberRing> R;
  std::unique_ptr<TwistedRing> T;
  std::optional<WedderburnData> W;  // present if representations declared

  const GaloisNumberRing& ring() const { return *R; }
  const TwistedRing& twisted() const { return *T; }

  bool wedderburn_complete() const { return W.has_value() && W->complete(*T); }

  // Resolve block invariants at a prime; auto deltas come from the declared
  // coefficient algebras.
  std::vector<BlockInvariants> block_invariants(long p) const {
    std::vector<BlockInvariants> out;
    for (std::size_t i = 0; i < sc.blocks.size(); ++i) {
      const auto& b = sc.blocks[i];
      BlockInvariants inv{b.x, b.d, b.r, b.c, 0, 0};
      auto resolve = [&](bool auto_flag, const std::map<long, long>& m) {
        if (!auto_flag) {
          auto it = m.find(p);
          if (it == m.end()) throw error("missing delta for prime " + std::to_string(p));
          return it->second;
        }
        if (i >= sc.reps.size()) throw error("auto delta requires representation data");
        const auto& rep = sc.reps[i];
        if (rep.kind == RepSpec::Kind::principal || rep.alg == RepSpec::Alg::rational) return 0L;
        if (rep.alg == RepSpec::Alg::field) {
          RationalField Q;
          return delta_for_field(QPoly::from(Q, rep.alg_mu), p);
        }
        throw error("auto delta unavailable for quaternion blocks");
      };
      inv.delta_S = resolve(b.auto_deltaS, b.deltaS);
      inv.delta_ZS = resolve(b.auto_deltaZS, b.deltaZS);
      out.push_back(inv);
    }
    return out;
  }
};

inline KMat parse_kmat(const CoeffAlg& K, const std::vector<std::vector<std::string>>& entries) {
  KMat M(entries.size(), entries[0].size(), K.zero());
  std::map<std::string, CoeffAlg::Elem> env;
  if (K.kind() == CoeffAlg::Kind::number_field && K.nf().degree() > 1) {
    auto w = K.zero();
    w[1] = Rational(1);
    env["w"] = w;
  }
  if (K.kind() == CoeffAlg::Kind::quaternion) {
    env["I"] = CoeffAlg::Elem{Rational(0), Rational(1), Rational(0), Rational(0)};
    env["J"] = CoeffAlg::Elem{Rational(0), Rational(0), Rational(1), Rational(0)};
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries[i].size(); ++j)
      M(i, j) = eval_expr_str(K, entries[i][j], env);
  return M;
}

inline std::unique_ptr<ScenarioBundle> validate_scenario(Scenario sc) {
  auto bundle = std::make_unique<ScenarioBundle>();
  std::vector<Perm> gens;
  for (auto& g : sc.gens) gens.push_back(parse_perm(g, sc.degree));
  auto G = FiniteGroup::generate(gens, sc.degree);
  // order action expressions to match the generator list
  std::vector<std::string> actions(gens.size());
  std::vector<bool> found(gens.size(), false);
  for (auto& [pstr, expr] : sc.actions) {
    auto p = parse_perm(pstr, sc.degree);
    bool matched = false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i] == p) {
        actions[i] = expr;
        found[i] = true;
        matched = true;
      }
    if (!matched) throw error("action given for a non-generator " + pstr);
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!found[i]) throw error("missing action for generator " + sc.gens[i]);
  RationalField Q;
  auto mu = QPoly::from(Q, sc.mu);
  bundle->R = std::make_unique<GaloisNumberRing>(
      GaloisNumberRing::build_and_validate(mu, std::move(G), actions));
  bundle->T = std::make_unique<TwistedRing>(*bundle->R);
  for (long p : sc.primes) {
    if (!is_prime_small(p)) throw error("invalid prime");
    if (!dedekind_pmaximal(mu, p)) throw error("ring not p-maximal");
  }
  // representations
  if (!sc.reps.empty()) {
    WedderburnData W;
    const auto& T = *bundle->T;
    for (auto& rep : sc.reps) {
      if (rep.kind == RepSpec::Kind::principal) {
        W.blocks.push_back(principal_block(T));
      } else if (rep.kind == RepSpec::Kind::matrices) {
        CoeffAlg K = rep.alg == RepSpec::Alg::rational ? CoeffAlg::rationals()
                     : rep.alg == RepSpec::Alg::field
                         ? CoeffAlg::number_field(QPoly::from(Q, rep.alg_mu))
                         : CoeffAlg::quaternion(rep.quat_a, rep.quat_b);
        // order generator matrices to match the group generators
        std::vector<KMat> gmats(gens.size(), KMat());
        std::vector<bool> have(gens.size(), false);
        for (auto& [pstr, entries] : rep.gen_mats) {
          auto p = parse_perm(pstr, sc.degree);
          for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == p) {
              gmats[i] = parse_kmat(K, entries);
              have[i] = true;
            }
        }
        for (std::size_t i = 0; i < gens.size(); ++i)
          if (!have[i]) throw error("missing generator matrix in representation");
        KMat gamma = rep.gamma_mat.empty()
                         ? KMat(rep.x, rep.x, K.zero())
                         : parse_kmat(K, rep.gamma_mat);
        W.blocks.push_back(block_from_generator_matrices(T, K, rep.x, gmats, gamma));
      } else {
        // idempotent-derived quaternion block
        std::map<std::string, TwistedElement> env;
        for (std::size_t i = 0; i < gens.size(); ++i)
          env["g" + std::to_string(i + 1)] =
              T.group_elem(T.group().generator_indices()[i]);
        env["X"] = T.coeff_elem(T.coeff_field().gen());
        TwistedElement e = T.zero(), I = T.zero(), J = T.zero();
        bool have_e = false, have_i = false, have_j = false;
        for (auto& [nm, expr] : rep.lets) {
          auto v = eval_expr_str(T, expr, env);
          env[nm] = v;
          if (nm == "e") {
            e = v;
            have_e = true;
          } else if (nm == "I") {
            I = v;
            have_i = true;
          } else if (nm == "J") {
            J = v;
            have_j = true;
          }
        }
        if (!have_e || !have_i || !have_j)
          throw error("idempotent representation needs let e, let I, let J");
        W.blocks.push_back(block_from_idempotent(T, rep.quat_a, rep.quat_b, e, I, J));
      }
    }
    bundle->W = std::move(W);
  }
  bundle->sc = std::move(sc);
  return bundle;
}

inline std::unique_ptr<ScenarioBundle> load_scenario(const std::string& path) {
  return validate_scenario(parse_scenario(path));
}

}  // namespace wreathe
