#include "redei/selmer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "redei/errors.hpp"
#include "redei/redei_symbol.hpp"

namespace redei {

namespace {

std::vector<Integer> bad_primes(const QuinticModel& model) {
  std::set<Integer> s{Integer(2)};
  for (int i = 0; i < model.k(); ++i) {
    for (int j = i + 1; j < model.k(); ++j) {
      for (const auto& q : factor(Integer(model.roots[j] - model.roots[i])).primes()) s.insert(q);
    }
  }
  return {s.begin(), s.end()};
}

BitVec localize_rational(const GlobalPlace& w, const Rational& r) { return w.field.square_class(LElem::of(r)); }

Gf2Matrix log_matrix(const DescentProblem& prob) {
  std::vector<BitVec> rows(prob.n());
  for (std::size_t i = 0; i < prob.n(); ++i) {
    for (const auto* list : {&prob.places, &prob.aux}) {
      for (const auto& w : *list) rows[i] = rows[i].append(w.gen_classes[i]);
    }
  }
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  return Gf2Matrix(rows, cols);
}

GlobalPlace make_kplace(const QuadField& K, const KPlace& w, const std::vector<QuadElem>& gens) {
  GlobalPlace g;
  g.label = w.label;
  g.field = K.completion(w);
  g.kplace = w;
  for (const auto& x : gens) g.gen_classes.push_back(K.localize(x, w));
  return g;
}

}  // namespace

DescentProblem descent_over_q(const QuinticModel& model) {
  DescentProblem prob;
  prob.model = model;
  auto primes = bad_primes(model);
  prob.qgens.push_back(-1);
  prob.labels.push_back("-1");
  for (const auto& q : primes) {
    prob.qgens.push_back(q);
    prob.labels.push_back(q.get_str());
  }
  std::vector<LocalField> fields{LocalField::real()};
  for (const auto& q : primes) fields.push_back(LocalField::base(q));
  for (const auto& L : fields) {
    GlobalPlace w;
    w.label = L.kind() == LocalField::Kind::Real ? "inf" : L.prime().get_str();
    w.field = L;
    for (const auto& g : prob.qgens) w.gen_classes.push_back(L.square_class(LElem::of(Rational(g))));
    prob.places.push_back(w);
  }
  return prob;
}

DescentProblem descent_over_quadratic(const QuinticModel& model, const QuadField& K, const SUnitBasis& basis) {
  DescentProblem prob;
  prob.model = model;
  prob.K = K;
  prob.labels = basis.labels;
  prob.kgens = basis.gens;
  std::set<Integer> s_primes;
  for (const auto& w : basis.primes) {
    prob.places.push_back(make_kplace(K, w, basis.gens));
    s_primes.insert(w.l);
  }
  for (const auto& q : bad_primes(model)) {
    if (!s_primes.count(q)) throw Error(ErrorKind::InvalidArgument, "S misses the places above " + q.get_str());
  }
  for (const auto& w : K.infinite_places()) {
    if (w.type == KPlace::Type::Real) prob.places.push_back(make_kplace(K, w, basis.gens));
  }
  // Auxiliary places until K(S) embeds into the product of local square classes.
  Integer q = 5;
  while (log_matrix(prob).rank() < static_cast<int>(prob.n())) {
    if (!s_primes.count(q) && K.disc() % q != 0) {
      for (const auto& w : K.places_above(q)) prob.aux.push_back(make_kplace(K, w, basis.gens));
    }
    q = next_prime(q);
    if (q > 10000) throw Error(ErrorKind::InternalInconsistency, "K(S) generators look dependent");
  }
  return prob;
}

BitVec rational_log(const DescentProblem& prob, const Rational& r) {
  if (r == 0) throw Error(ErrorKind::Zero, "log of zero");
  BitVec e(prob.n());
  if (!prob.K) {
    Integer m = squarefree_part(r);
    if (m < 0) {
      e.set(0);
      m = -m;
    }
    for (std::size_t i = 1; i < prob.n(); ++i) {
      if (m % prob.qgens[i] == 0) {
        e.set(i);
        m /= prob.qgens[i];
      }
    }
    if (m != 1) throw Error(ErrorKind::InvalidArgument, to_string(r) + " is not an S-unit");
    return e;
  }
  BitVec v;
  for (const auto* list : {&prob.places, &prob.aux}) {
    for (const auto& w : *list) v = v.append(localize_rational(w, r));
  }
  BitVec x;
  if (!log_matrix(prob).solve_combination(v, x))
    throw Error(ErrorKind::InvalidArgument, to_string(r) + " is not in K(S)");
  return x;
}

BitVec rational_vector(const DescentProblem& prob, const std::vector<Integer>& coords) {
  BitVec out;
  for (const auto& c : coords) out = out.append(rational_log(prob, Rational(c)));
  return out;
}

TorsionImage torsion_delta(const QuinticModel& model) {
  TorsionImage t;
  for (int i = 0; i + 1 < model.k(); ++i) t.rows.push_back(weierstrass_row(model, i));
  return t;
}

std::vector<BitVec> SelmerGroup::basis() const {
  std::vector<BitVec> b = torsion;
  b.insert(b.end(), extra.begin(), extra.end());
  return b;
}

bool SelmerGroup::contains(const BitVec& e) const { return Gf2Matrix(basis(), k * n).in_row_span(e); }

namespace {

// Classes of the five coordinates at w, recomputed from the elements themselves.
BitVec fresh_local_vector(const DescentProblem& prob, const GlobalPlace& w, const BitVec& e) {
  const std::size_t n = prob.n();
  BitVec out;
  for (int j = 0; j < prob.model.k(); ++j) {
    if (!prob.K) {
      Integer m = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (e.get(j * n + i)) m *= prob.qgens[i];
      }
      out = out.append(w.field.square_class(LElem::of(Rational(m))));
    } else {
      QuadElem x = prob.K->elem(1);
      for (std::size_t i = 0; i < n; ++i) {
        if (e.get(j * n + i)) x = x * prob.kgens[i];
      }
      out = out.append(prob.K->localize(x, *w.kplace));
    }
  }
  return out;
}

}  // namespace

SelmerGroup selmer_group(const DescentProblem& prob) {
  const std::size_t n = prob.n();
  const int k = prob.model.k();
  const std::size_t N = k * n;
  std::vector<BitVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    BitVec r(N);
    for (int j = 0; j < k; ++j) r.set(j * n + i);
    rows.push_back(r);
  }
  for (const auto& w : prob.places) {
    const LocalImage& img = cached_local_image(prob.model, w.field);
    const int dv = img.dim_per_coord;
    Gf2Matrix W(img.basis, static_cast<std::size_t>(k * dv));
    for (const BitVec& a : W.nullspace()) {
      BitVec r(N);
      for (int j = 0; j < k; ++j) {
        BitVec aj = a.slice(j * dv, dv);
        for (std::size_t i = 0; i < n; ++i) {
          if (aj.dot(w.gen_classes[i])) r.set(j * n + i);
        }
      }
      rows.push_back(r);
    }
  }
  Gf2Matrix constraints(rows, N);
  std::vector<BitVec> kernel = constraints.nullspace();

  SelmerGroup G;
  G.n = n;
  G.k = k;
  G.labels = prob.labels;
  G.dim = static_cast<int>(kernel.size());
  Gf2Matrix kspan(kernel, N);
  Gf2Matrix acc(N);
  for (const auto& row : torsion_delta(prob.model).rows) {
    BitVec t = rational_vector(prob, row);
    if (!kspan.in_row_span(t))
      throw Error(ErrorKind::InternalInconsistency, "torsion image outside the Selmer group");
    if (acc.in_row_span(t)) continue;
    acc.add_row(t);
    G.torsion.push_back(t);
  }
  for (const auto& k : kernel) {
    if (acc.in_row_span(k)) continue;
    acc.add_row(k);
    G.extra.push_back(k);
  }

  for (const auto& e : G.basis()) {
    for (const auto& w : prob.places) {
      const LocalImage& img = cached_local_image(prob.model, w.field);
      if (!membership(img, fresh_local_vector(prob, w, e)))
        throw Error(ErrorKind::InternalInconsistency, "Selmer basis element fails at " + w.label);
    }
  }
  return G;
}

std::string coordinate_string(const DescentProblem& prob, const BitVec& e, int j) {
  const std::size_t n = prob.n();
  if (!prob.K) {
    Integer m = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (e.get(j * n + i)) m *= prob.qgens[i];
    }
    return m.get_str();
  }
  bool neg = false;
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (!e.get(j * n + i)) continue;
    if (prob.labels[i] == "-1") {
      neg = true;
      continue;
    }
    if (!s.empty()) s += "*";
    s += prob.labels[i];
  }
  if (s.empty()) return neg ? "-1" : "1";
  return neg ? "-" + s : s;
}

std::string element_string(const DescentProblem& prob, const BitVec& e) {
  std::string s = "(";
  for (int j = 0; j < prob.model.k(); ++j) s += (j ? "," : "") + coordinate_string(prob, e, j);
  return s + ")";
}

BitVec parse_element(const DescentProblem& prob, const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  const int k = prob.model.k();
  if (static_cast<int>(parts.size()) != k) throw Error(ErrorKind::InvalidArgument, "wrong number of coordinates: " + text);
  const std::size_t n = prob.n();
  BitVec out(k * n);
  // Labels longest first so "x23" is not read as "x2" "3".
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return prob.labels[a].size() > prob.labels[b].size(); });
  for (int j = 0; j < k; ++j) {
    std::string s = parts[j];
    if (!prob.K) {
      BitVec e = rational_log(prob, Rational(Integer(s)));
      for (std::size_t i = 0; i < n; ++i) {
        if (e.get(i)) out.flip(j * n + i);
      }
      continue;
    }
    std::size_t pos = 0;
    if (!s.empty() && s[0] == '-') {
      auto it = std::find(prob.labels.begin(), prob.labels.end(), "-1");
      if (it == prob.labels.end()) throw Error(ErrorKind::InvalidArgument, "-1 is not a generator");
      out.flip(j * n + static_cast<std::size_t>(it - prob.labels.begin()));
      pos = 1;
    }
    if (s.substr(pos) == "1") continue;
    while (pos < s.size()) {
      if (s[pos] == '*') {
        ++pos;
        continue;
      }
      bool hit = false;
      for (std::size_t i : order) {
        const std::string& lab = prob.labels[i];
        if (lab != "-1" && s.compare(pos, lab.size(), lab) == 0) {
          out.flip(j * n + i);
          pos += lab.size();
          hit = true;
          break;
        }
      }
      if (!hit) throw Error(ErrorKind::InvalidArgument, "unknown generator in " + s);
    }
  }
  return out;
}

int selmer_dim_Jp_over_Q(const Integer& p) {
  if (p <= 3 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be a prime > 3");
  return selmer_group(descent_over_q(QuinticModel::scaled(p))).dim;
}

namespace {

bool in_group(const LocalField& L, const BitVec& cls, std::initializer_list<long> gens) {
  Gf2Matrix m(static_cast<std::size_t>(L.class_dim()));
  for (long g : gens) m.add_row(L.square_class(LElem::of(g)));
  return cls.is_zero() || m.in_row_span(cls);
}

bool unramified_at(const QuadField& K, const QuadElem& x, const KPlace& w) {
  const LocalField L = K.completion(w);
  return K.with_precision([&](int n) { return L.unramified_sqrt(K.embed(x, w, n)); });
}

KPlace relabel(KPlace w, const std::string& label) {
  w.label = label;
  return w;
}

// Choose p_2 by the unit eps and then x_2 as in the real cases.
void real_prime_two(const QuadField& K, const QuadElem& eps, KPlace& p2, KPlace& q2, QuadElem& x2) {
  auto P2 = K.places_above(2);
  bool u0 = unramified_at(K, eps, P2[0]), u1 = unramified_at(K, eps, P2[1]);
  if (u0 == u1) throw Error(ErrorKind::Unsatisfiable, "no unique prime over 2 unramified in K(sqrt eps)");
  p2 = relabel(u0 ? P2[0] : P2[1], "p_2");
  q2 = relabel(u0 ? P2[1] : P2[0], "q_2");
  QuadElem x = K.class_order_and_generator(p2).second;
  for (const QuadElem& m : {K.elem(1), K.elem(-1), eps, -eps}) {
    QuadElem c = x * m;
    if (c.norm() > 0 && unramified_at(K, c, q2)) {
      x2 = c;
      return;
    }
  }
  throw Error(ErrorKind::Unsatisfiable, "x_2 normalization");
}

}  // namespace

SUnitBasis normalized_basis(const QuadField& K, const Integer& p, std::vector<std::string>* notes) {
  const long r24 = Integer(p % 24).get_si();
  SUnitBasis B;
  if (K.d() == -p && r24 == 23) {
    const LocalField Q2 = LocalField::base(2);
    auto P3 = K.places_above(3);
    KPlace p3 = relabel(P3[0], "p_3"), q3 = relabel(P3[1], "q_3");
    QuadElem x3 = K.class_order_and_generator(p3).second;
    if (!K.localize(x3, q3).is_zero()) x3 = -x3;
    auto P2 = K.places_above(2);
    bool in0 = in_group(Q2, K.localize(x3, P2[0]), {-3}), in1 = in_group(Q2, K.localize(x3, P2[1]), {-3});
    if (in0 == in1) throw Error(ErrorKind::Unsatisfiable, "x_3 lies in <-3> at both or neither prime over 2");
    KPlace p2 = relabel(in0 ? P2[0] : P2[1], "p_2"), q2 = relabel(in0 ? P2[1] : P2[0], "q_2");
    QuadElem x2 = K.class_order_and_generator(p2).second;
    if (!in_group(Q2, K.localize(x2, q2), {-3})) x2 = -x2;
    B.gens = {K.elem(-1), x2, x2.conj(), x3, x3.conj()};
    B.labels = {"-1", "x2", "y2", "x3", "y3"};
    B.primes = {p2, q2, p3, q3};
    return B;
  }
  if (K.d() == p && (r24 == 17 || r24 == 1)) {
    const QuadElem eps = *K.fundamental_unit();
    KPlace p2, q2;
    QuadElem x2;
    real_prime_two(K, eps, p2, q2, x2);
    if (r24 == 17) {
      auto P3 = K.places_above(3);
      B.gens = {K.elem(-1), eps, x2, x2.conj(), K.elem(3)};
      B.labels = {"-1", "eps", "x2", "y2", "3"};
      B.primes = {p2, q2, P3[0]};
      return B;
    }
    auto P3 = K.places_above(3);
    bool s0 = K.localize(x2, P3[0]).is_zero(), s1 = K.localize(x2, P3[1]).is_zero();
    if (s0 == s1) throw Error(ErrorKind::Unsatisfiable, "no unique prime over 3 split in K(sqrt x_2)");
    KPlace p3 = relabel(s0 ? P3[0] : P3[1], "p_3"), q3 = relabel(s0 ? P3[1] : P3[0], "q_3");
    QuadElem x3 = K.class_order_and_generator(p3).second, best;
    bool found = false;
    for (const QuadElem& m : {K.elem(1), K.elem(-1), eps, -eps}) {
      QuadElem c = x3 * m;
      if (c.norm() > 0 && unramified_at(K, c, p2)) {
        best = c;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::Unsatisfiable, "x_3 normalization");
    B.gens = {K.elem(-1), eps, x2, x2.conj(), best, best.conj()};
    B.labels = {"-1", "eps", "x2", "y2", "x3", "y3"};
    B.primes = {p2, q2, p3, q3};
    return B;
  }
  if (notes) notes->push_back("field outside the normalized classes; raw S-unit basis");
  return s_unit_basis(K, {Integer(2), Integer(3)});
}

std::vector<SymbolValue> governing_symbols(const Integer& p) {
  const long r24 = Integer(p % 24).get_si();
  std::vector<std::pair<std::string, std::array<Integer, 3>>> want;
  const Integer mp = -p;
  if (r24 == 23) {
    want = {{"[2,2,-p]", {2, 2, mp}}, {"[3,6,-p]", {3, 6, mp}}};
  } else if (r24 == 17) {
    want = {{"[2,2,p]", {2, 2, p}}, {"[2,-1,p]", {2, -1, p}}};
  } else if (r24 == 1) {
    want = {{"[2,2,p]", {2, 2, p}}, {"[2,-1,p]", {2, -1, p}}, {"[3,-2,p]", {3, -2, p}}, {"[3,6,p]", {3, 6, p}}};
  }
  std::vector<SymbolValue> out;
  for (const auto& [name, t] : want) {
    SymbolValue s{name, t[0], t[1], t[2], std::nullopt, ""};
    try {
      s.value = redei_symbol(t[0], t[1], t[2]).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDefined) throw;
      s.failure = e.what();
    }
    out.push_back(s);
  }
  return out;
}

QuadSelmerResult selmer_J_over_quad(const Integer& p, int sign) {
  if (p <= 3 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be a prime > 3");
  QuadSelmerResult r;
  r.p = p;
  r.sign = sign < 0 ? -1 : 1;
  const long r24 = Integer(p % 24).get_si();
  r.in_class = r.sign < 0 ? r24 == 23 : (r24 == 1 || r24 == 17);
  QuadField K = QuadField::make(r.sign * p);
  std::vector<std::string> notes;
  SUnitBasis B = normalized_basis(K, p, &notes);
  r.problem = descent_over_quadratic(QuinticModel::scaled(1), K, B);
  r.problem.notes = notes;
  if (!r.in_class) r.problem.notes.push_back("p outside the congruence class for this sign; no table applies");
  r.group = selmer_group(r.problem);
  r.dim = r.group.dim;
  if (r.in_class) r.symbols = governing_symbols(p);
  return r;
}

}  // namespace redei
