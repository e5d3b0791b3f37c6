// Copyright 2026 The mabkcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mabkcert/npa.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mabkcert {

std::string Monomial::str() const {
  if (word.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << ' ';
    const int p = word[i].party;
    if (p < 3) {
      os << "ABC"[p];
    } else {
      os << "P" << p << "_";
    }
    os << int(word[i].input);
  }
  return os.str();
}

Canonical canonicalize(std::span<const OperatorLetter> word) {
  std::vector<OperatorLetter> current(word.begin(), word.end());
  for (;;) {
    std::ranges::stable_sort(current, {}, &OperatorLetter::party);
    std::vector<OperatorLetter> reduced;
    reduced.reserve(current.size());
    for (const OperatorLetter& l : current) {
      if (!reduced.empty() && reduced.back() == l) {
        reduced.pop_back();
      } else {
        reduced.push_back(l);
      }
    }
    if (reduced == current) break;
    current = std::move(reduced);
  }
  return {1, Monomial{std::move(current)}};
}

Monomial adjoint(const Monomial& u) {
  std::vector<OperatorLetter> rev(u.word.rbegin(), u.word.rend());
  return canonicalize(rev).monomial;
}

Scenario Scenario::conference(std::size_t n_parties) {
  if (n_parties < 2) throw std::invalid_argument("Scenario::conference: need n >= 2");
  Scenario s;
  s.inputs_per_party.assign(n_parties, 3);
  s.inputs_per_party[0] = 2;
  return s;
}

std::vector<Monomial> generate_monomials(const Scenario& scenario, int level) {
  if (level < 0) throw std::invalid_argument("generate_monomials: level must be >= 0");
  std::vector<OperatorLetter> letters;
  for (std::size_t p = 0; p < scenario.n_parties(); ++p) {
    for (int x = 0; x < scenario.inputs_per_party[p]; ++x) {
      letters.push_back({static_cast<std::uint8_t>(p), static_cast<std::uint8_t>(x)});
    }
  }
  std::vector<Monomial> out{Monomial{}};
  std::vector<Monomial> layer{Monomial{}};
  for (int len = 1; len <= level; ++len) {
    std::set<Monomial> next;
    for (const Monomial& m : layer) {
      for (const OperatorLetter& l : letters) {
        std::vector<OperatorLetter> w = m.word;
        w.push_back(l);
        Monomial c = canonicalize(w).monomial;
        if (c.length() == static_cast<std::size_t>(len)) next.insert(std::move(c));
      }
    }
    layer.assign(next.begin(), next.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

namespace {

Monomial class_key(const Monomial& w) { return std::min(w, adjoint(w)); }

}  // namespace

int MomentMatrixStructure::find_class(std::span<const OperatorLetter> word) const {
  const auto it = class_index.find(class_key(canonicalize(word).monomial));
  return it == class_index.end() ? -1 : it->second;
}

MomentMatrixStructure build_moment_structure(std::vector<Monomial> monomials) {
  if (std::ranges::find_if(monomials, &Monomial::is_identity) == monomials.end()) {
    throw std::invalid_argument("build_moment_structure: basis must contain the identity");
  }
  MomentMatrixStructure s;
  s.basis = std::move(monomials);
  const std::size_t d = s.basis.size();
  s.class_of.assign(d * d, -1);
  s.class_index.emplace(Monomial{}, 0);
  s.class_representatives.push_back(Monomial{});
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<OperatorLetter> left(s.basis[r].word.rbegin(), s.basis[r].word.rend());
    for (std::size_t c = r; c < d; ++c) {
      std::vector<OperatorLetter> w = left;
      w.insert(w.end(), s.basis[c].word.begin(), s.basis[c].word.end());
      const Monomial key = class_key(canonicalize(w).monomial);
      auto [it, inserted] = s.class_index.emplace(key, static_cast<int>(s.class_representatives.size()));
      if (inserted) s.class_representatives.push_back(key);
      s.class_of[r * d + c] = s.class_of[c * d + r] = it->second;
    }
  }
  return s;
}

MomentFunctional encode_objective(const BellExpression& expr, const MomentMatrixStructure& structure) {
  MomentFunctional f;
  for (const BellTerm& t : expr.terms) {
    std::vector<OperatorLetter> word;
    for (std::size_t p = 0; p < t.inputs.size(); ++p) {
      word.push_back({static_cast<std::uint8_t>(p), t.inputs[p]});
    }
    const int cls = structure.find_class(word);
    if (cls < 0) {
      throw std::invalid_argument("encode_objective: moment " + canonicalize(word).monomial.str() +
                                  " is not in the moment matrix; raise the hierarchy level");
    }
    f.coefficients[cls] += t.coefficient.to_double();
  }
  std::erase_if(f.coefficients, [](const auto& kv) { return kv.second == 0.0; });
  return f;
}

std::map<Monomial, double> expand_agreement_projector(std::span<const OperatorLetter> key_letters) {
  const std::size_t n = key_letters.size();
  const double weight = std::ldexp(1.0, -static_cast<int>(n));
  std::map<Monomial, double> out;
  for (int sign : {1, -1}) {
    for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
      std::vector<OperatorLetter> word;
      int factor = 1;
      for (std::size_t p = 0; p < n; ++p) {
        if (subset >> p & 1U) {
          word.push_back(key_letters[p]);
          factor *= sign;
        }
      }
      out[canonicalize(word).monomial] += factor * weight;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

CorrelationConstraint encode_perfect_correlation(const MomentMatrixStructure& structure) {
  std::size_t n_parties = 0;
  for (const Monomial& m : structure.basis) {
    for (const OperatorLetter& l : m.word) n_parties = std::max<std::size_t>(n_parties, l.party + 1U);
  }
  if (n_parties < 2) throw std::invalid_argument("encode_perfect_correlation: need two parties");
  std::vector<OperatorLetter> key{{0, 0}};
  for (std::size_t p = 1; p < n_parties; ++p) key.push_back({static_cast<std::uint8_t>(p), 2});

  CorrelationConstraint cc;
  cc.projector_expansion = expand_agreement_projector(key);
  // tr(C rho) = c_0 + sum_w c_w <w> = 1 with every c_w > 0, sum c_w = 1 - c_0
  // and <w> <= 1 forces each <w> = 1.
  double total = 0.0;
  for (const auto& [mono, coeff] : cc.projector_expansion) {
    total += coeff;
    if (mono.is_identity()) continue;
    if (!(coeff > 0.0)) throw std::logic_error("encode_perfect_correlation: non-positive correlator weight");
    const int cls = structure.find_class(mono.word);
    if (cls < 0) {
      throw std::invalid_argument("encode_perfect_correlation: " + mono.str() + " not in the moment matrix");
    }
    cc.equalities.push_back({cls, 1.0});
  }
  if (std::abs(total - 1.0) > 1e-15) throw std::logic_error("encode_perfect_correlation: weights do not sum to 1");
  return cc;
}

SdpProblem build_npa_problem(const MomentMatrixStructure& structure, const MomentFunctional& objective,
                             std::span<const MomentEquality> equalities) {
  const int d = static_cast<int>(structure.dim());
  const std::size_t k = structure.n_classes();
  SdpProblem p;
  p.dim = d;
  p.f0 = Eigen::MatrixXd::Zero(d, d);
  p.basis.assign(k - 1, SymmetricSparse(d));
  for (int r = 0; r < d; ++r) {
    for (int c = r; c < d; ++c) {
      const int cls = structure.entry_class(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      if (cls == 0) {
        p.f0(r, c) = p.f0(c, r) = 1.0;
      } else {
        p.basis[static_cast<std::size_t>(cls - 1)].add(r, c, 1.0);
      }
    }
  }
  p.objective = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k - 1));
  for (const auto& [cls, coeff] : objective.coefficients) {
    if (cls == 0) throw std::invalid_argument("build_npa_problem: constant objective term");
    p.objective(cls - 1) = coeff;
  }
  std::vector<MomentEquality> rows;
  for (const MomentEquality& e : equalities) {
    if (e.moment_class == 0) {
      if (e.rhs != 1.0) throw std::invalid_argument("build_npa_problem: identity moment must equal 1");
      continue;
    }
    rows.push_back(e);
  }
  p.eq_matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k - 1));
  p.eq_rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.eq_matrix(static_cast<Eigen::Index>(i), rows[i].moment_class - 1) = 1.0;
    p.eq_rhs(static_cast<Eigen::Index>(i)) = rows[i].rhs;
  }
  return p;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // The smaller root wins, so class 0 stays the identity.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

}  // namespace

ReducedMoments reduce_unit_moments(const MomentMatrixStructure& structure,
                                   std::span<const MomentEquality> equalities) {
  const std::size_t d = structure.dim();
  const std::size_t k = structure.n_classes();
  DisjointSets classes(k);
  DisjointSets rows(d);
  for (const MomentEquality& e : equalities) {
    if (e.moment_class < 0 || static_cast<std::size_t>(e.moment_class) >= k) {
      throw std::invalid_argument("reduce_unit_moments: class out of range");
    }
    if (e.rhs == 1.0) classes.unite(0, e.moment_class);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r + 1; c < d; ++c) {
        if (rows.find(static_cast<int>(r)) == rows.find(static_cast<int>(c))) continue;
        if (classes.find(structure.entry_class(r, c)) != 0) continue;
        rows.unite(static_cast<int>(r), static_cast<int>(c));
        for (std::size_t x = 0; x < d; ++x) classes.unite(structure.entry_class(r, x), structure.entry_class(c, x));
        changed = true;
      }
    }
  }

  ReducedMoments out;
  std::vector<int> kept;
  out.basis_map.assign(d, -1);
  for (std::size_t r = 0; r < d; ++r) {
    if (rows.find(static_cast<int>(r)) == static_cast<int>(r)) {
      out.basis_map[r] = static_cast<int>(kept.size());
      kept.push_back(static_cast<int>(r));
    }
  }
  for (std::size_t r = 0; r < d; ++r) out.basis_map[r] = out.basis_map[static_cast<std::size_t>(rows.find(static_cast<int>(r)))];

  // Number the surviving classes in the order they appear in the reduced matrix.
  std::vector<int> root_id(k, -1);
  MomentMatrixStructure& s = out.structure;
  root_id[0] = 0;
  s.class_representatives.push_back(Monomial{});
  const std::size_t dr = kept.size();
  s.class_of.assign(dr * dr, -1);
  for (std::size_t r = 0; r < dr; ++r) {
    s.basis.push_back(structure.basis[static_cast<std::size_t>(kept[r])]);
    for (std::size_t c = 0; c < dr; ++c) {
      const int root = classes.find(structure.entry_class(static_cast<std::size_t>(kept[r]), static_cast<std::size_t>(kept[c])));
      if (root_id[static_cast<std::size_t>(root)] < 0) {
        root_id[static_cast<std::size_t>(root)] = static_cast<int>(s.class_representatives.size());
        s.class_representatives.push_back(structure.class_representatives[static_cast<std::size_t>(root)]);
      }
      s.class_of[r * dr + c] = root_id[static_cast<std::size_t>(root)];
    }
  }
  out.class_map.assign(k, -1);
  for (std::size_t cls = 0; cls < k; ++cls) {
    const int id = root_id[static_cast<std::size_t>(classes.find(static_cast<int>(cls)))];
    if (id < 0) throw std::logic_error("reduce_unit_moments: class lost in reduction");
    out.class_map[cls] = id;
    s.class_index.emplace(structure.class_representatives[cls], id);
  }
  for (const MomentEquality& e : equalities) {
    if (e.rhs == 1.0) continue;
    out.equalities.push_back({out.class_map[static_cast<std::size_t>(e.moment_class)], e.rhs});
  }
  return out;
}

NpaRun npa_upper_bound(const Scenario& scenario, const BellExpression& expr, const NpaOptions& options) {
  if (options.level < 2) throw std::invalid_argument("npa_upper_bound: level must be >= 2");
  const MomentMatrixStructure full = build_moment_structure(generate_monomials(scenario, options.level));
  std::vector<MomentEquality> equalities;
  if (options.perfect_correlations) equalities = encode_perfect_correlation(full).equalities;

  NpaRun run;
  run.basis_size = full.dim();
  run.n_classes = full.n_classes();
  MomentMatrixStructure reduced_structure;
  const MomentMatrixStructure* structure = &full;
  if (options.facial_reduction && !equalities.empty()) {
    ReducedMoments reduced = reduce_unit_moments(full, equalities);
    reduced_structure = std::move(reduced.structure);
    equalities = std::move(reduced.equalities);
    structure = &reduced_structure;
  }
  run.solved_basis_size = structure->dim();
  run.solved_classes = structure->n_classes();

  MomentFunctional objective = encode_objective(expr, *structure);
  if (options.negate_objective) {
    for (auto& [cls, coeff] : objective.coefficients) coeff = -coeff;
  }
  // A Bell term can collapse onto the identity after reduction.
  double constant = 0.0;
  if (const auto it = objective.coefficients.find(0); it != objective.coefficients.end()) {
    constant = it->second;
    objective.coefficients.erase(it);
  }
  run.problem = build_npa_problem(*structure, objective, equalities);
  SdpOptions sdp_options;
  sdp_options.tol = options.tol;
  run.solution = solve(run.problem, sdp_options);
  run.certificate = check_certificate(run.problem, run.solution);
  run.verified = run.solution.ok() && run.certificate.verified;
  run.constant_term = constant;
  run.bound = run.certificate.bound + constant;
  return run;
}

NpaRun npa_upper_bound(int level, bool with_constraint, double tol) {
  NpaOptions options;
  options.level = level;
  options.perfect_correlations = with_constraint;
  options.tol = tol;
  return npa_upper_bound(Scenario::conference(3), mabk_explicit(3), options);
}

}  // namespace mabkcert
