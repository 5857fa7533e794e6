#include "redei/report_json.hpp"

#include <chrono>
#include <ctime>

namespace redei {

namespace {

// Integers go out as JSON numbers while they fit, else as decimal strings.
Json num(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Json num_list(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(num(x));
  return out;
}

Json place_json(const Place& v) {
  if (v.is_real()) return "inf";
  return num(v.prime());
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Admissibility& a) { return {{"ok", a.ok}, {"failures", a.failures}}; }

Json to_json(const RedeiCertificate& cert) {
  Json j;
  j["a"] = num(cert.a);
  j["b"] = num(cert.b);
  j["c"] = num(cert.c);
  j["value"] = cert.value;
  j["trivial"] = cert.trivial;
  if (!cert.trivial) {
    const auto& mr = cert.min_ram;
    j["conic"] = {{"x", num(mr.sol.x)}, {"y", num(mr.sol.y)}, {"z", num(mr.sol.z)}};
    j["twist"] = num(mr.t);
    j["alpha"] = mr.alpha.to_string();
    j["beta"] = mr.beta.to_string();
    j["case_c"] = mr.case_c;
    j["ramification"] = mr.certificate;
  }
  Json contrib = Json::array();
  for (const auto& c : cert.contributions)
    contrib.push_back({{"place", place_json(c.place)}, {"value", c.value}, {"cross_checked", c.cross_checked}});
  j["contributions"] = contrib;
  return j;
}

Json to_json(const SymbolValue& s) {
  Json j{{"name", s.name}, {"a", num(s.a)}, {"b", num(s.b)}, {"c", num(s.c)}};
  j["value"] = s.value ? Json(*s.value) : Json(nullptr);
  if (!s.failure.empty()) j["failure"] = s.failure;
  return j;
}

Json selmer_json(const DescentProblem& prob, const SelmerGroup& group, const std::vector<SymbolValue>& symbols) {
  Json j;
  j["field"] = prob.K ? "Q(sqrt(" + prob.K->d().get_str() + "))" : std::string("Q");
  j["roots"] = num_list(prob.model.roots);
  j["dim"] = group.dim;
  Json gens = Json::array();
  for (std::size_t i = 0; i < prob.n(); ++i) {
    Json g{{"label", prob.labels[i]}};
    if (prob.K) g["value"] = prob.kgens[i].to_string();
    else g["value"] = num(prob.qgens[i]);
    gens.push_back(g);
  }
  j["generators"] = gens;
  Json tors = Json::array(), basis = Json::array();
  for (const auto& e : group.torsion) tors.push_back(element_string(prob, e));
  for (const auto& e : group.basis()) basis.push_back(element_string(prob, e));
  j["torsion_subbasis"] = tors;
  j["basis"] = basis;
  Json sy = Json::array();
  for (const auto& s : symbols) sy.push_back(to_json(s));
  j["symbols"] = sy;
  j["notes"] = prob.notes;
  return j;
}

Json to_json(const PrimeReport& r) {
  Json j;
  j["p"] = num(r.p);
  j["classes"] = r.classes;
  Json sy = Json::array();
  for (const auto& s : r.symbols) sy.push_back(to_json(s));
  j["symbols"] = sy;
  j["dim_S2_Jp_Q"] = r.dim_S2_Jp_Q;
  j["dim_S2_J_quad"] = optional_int(r.dim_S2_J_quad);
  j["quad_field"] = r.quad_field;
  j["rank_lower"] = r.rank_lower;
  j["rank_upper"] = r.rank_upper;
  j["sha2_dim"] = optional_int(r.sha2_dim);
  j["sha2_lower"] = r.sha2_lower;
  j["sha2_upper"] = r.sha2_upper;
  j["conditional_rank"] = optional_int(r.conditional_rank);
  j["torsion"] = r.torsion;
  j["theorem_applied"] = r.theorem_applied;
  j["hypothesis"] = r.hypothesis;
  j["quartic_splittings"] = r.quartic_splittings;
  j["rational_points"] = optional_int(r.rational_points);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const ConicCheck& c) {
  Json j{{"pair", {c.i, c.j}}, {"a", num(c.a)}, {"b", num(c.b)}, {"c", num(c.c)}};
  j["equation"] = c.a.get_str() + "*y^2 + " + c.b.get_str() + "*z^2 = " + c.c.get_str();
  Json places = Json::array();
  for (const auto& v : c.places) {
    Json pv{{"place", place_json(v.place)}, {"solvable", v.solvable}};
    pv["brute_force"] = v.brute_force ? Json(*v.brute_force) : Json(nullptr);
    places.push_back(pv);
  }
  j["places"] = places;
  Json obs = Json::array();
  for (const auto& v : c.obstructed) obs.push_back(place_json(v));
  j["obstructed"] = obs;
  return j;
}

Json to_json(const DescentCertificate& d) {
  Json j;
  j["curve"] = d.curve.name;
  j["equation"] = d.curve.equation();
  j["entries"] = d.curve.entries;
  j["selmer_dim"] = d.selmer_dim;
  Json pairs = Json::array();
  for (const auto& [a, b] : d.selmer_pairs) pairs.push_back({num(a), num(b)});
  j["selmer_pairs"] = pairs;
  j["rank_bound"] = d.rank_bound;
  j["torsion_independent"] = d.torsion_independent;
  Json counts = Json::array();
  for (const auto& [q, n] : d.counts) counts.push_back({num(q), num(n)});
  j["counts"] = counts;
  j["odd_torsion_bound"] = num(d.odd_torsion_bound);
  Json pts = Json::array();
  for (const auto& [x, y] : d.torsion_points) pts.push_back({to_string(x), to_string(y)});
  j["torsion_points"] = pts;
  j["rank_zero"] = d.rank_zero;
  j["torsion_is_two_torsion"] = d.torsion_is_two_torsion;
  j["certified"] = d.certified();
  return j;
}

Json to_json(const SurveyEntry& e) {
  return {{"s", num_list(e.s)},
          {"conic_obstructions", e.conic_obstructions},
          {"local_failures", e.local_failures},
          {"survives_conics", e.survives_conics()},
          {"in_two_selmer_set", e.in_two_selmer_set()}};
}

Json to_json(const PointsResult& r) {
  Json j;
  j["p"] = num(r.p);
  Json pts = Json::array();
  for (const auto& [x, y] : r.points) pts.push_back({x, y});
  j["points"] = pts;
  j["complete"] = r.complete;
  j["method"] = r.method;
  Json chain = Json::array();
  for (const auto& l : r.chain) chain.push_back({{"claim", l.claim}, {"ok", l.ok}, {"details", l.details}});
  Json quot = Json::array();
  for (const auto& q : r.quotients) {
    Json e{{"s", num_list(q.s)}, {"standard_curve", to_json(q.standard_curve)}, {"ok", q.ok()}};
    e["alternative"] = q.alternative ? to_json(*q.alternative) : Json(nullptr);
    e["alternative_ok"] = q.alternative_ok;
    quot.push_back(e);
  }
  Json conics = Json::array();
  for (const auto& c : r.conics) conics.push_back(to_json(c));
  j["certificates"] = {{"chain", chain}, {"quotients", quot}, {"conics", conics}};
  j["notes"] = r.notes;
  return j;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json make_record(const std::string& command, const Json& params, const Json& result) {
  return {{"schema_version", kSchemaVersion}, {"timestamp", utc_timestamp()}, {"command", command},
          {"params", params},                 {"result", result},                {"engine_version", kEngineVersion}};
}

std::string payload_string(const Json& record) {
  Json copy = record;
  copy.erase("timestamp");
  return copy.dump();
}

}  // namespace redei
