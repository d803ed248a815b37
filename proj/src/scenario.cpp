// scenario.cpp

#include "cork/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cork {

namespace {

std::vector<long> parse_long_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument(what + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string join_longs(const std::vector<long>& v) {
  std::vector<std::string> s;
  for (long x : v) s.push_back(std::to_string(x));
  return join(s, ",");
}

std::string count_text(const std::optional<std::size_t>& c) { return c ? std::to_string(*c) : "unknown"; }

}  // namespace

std::vector<KnotSpec> parse_knots(const std::string& spec) {
  if (spec == "unknot") return {KnotSpec{"unknot", LaurentPoly(1)}};
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--knots: expected torus:k,..., twist:k,..., seifert:FILE or unknot");
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  std::vector<KnotSpec> out;
  if (family == "torus" || family == "twist") {
    const KnotFamily kind = family == "torus" ? KnotFamily::torus_2q : KnotFamily::twist;
    for (long k : parse_long_list(rest, "--knots")) {
      if (k < 1) throw std::invalid_argument("--knots: family parameter must be >= 1");
      std::string label = kind == KnotFamily::torus_2q ? "T(2," + std::to_string(2 * k + 1) + ")"
                                                       : "twist(" + std::to_string(k) + ")";
      out.push_back(KnotSpec{label, alexander_family(kind, k)});
    }
  } else if (family == "seifert") {
    Json j = read_json_file(rest);
    const Json& body = j.is_object() ? j.at("seifert") : j;
    const bool many = body.is_array() && !body.empty() && body[0].is_array() && !body[0].empty() && body[0][0].is_array();
    std::vector<Json> mats = many ? body.get<std::vector<Json>>() : std::vector<Json>{body};
    const std::string base = std::filesystem::path(rest).filename().string();
    for (std::size_t i = 0; i < mats.size(); ++i)
      out.push_back(KnotSpec{base + "[" + std::to_string(i) + "]", alexander_from_seifert(seifert_from_json(mats[i]))});
  } else {
    throw std::invalid_argument("--knots: unknown family '" + family + "'");
  }
  return out;
}

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = {"knotting-corks",  "disjoint-corks",  "involution-corks",
                                               "knotting-plugs",  "disjoint-plugs",  "involution-plugs",
                                               "rbd-consistency"};
  return ids;
}

ScenarioParams with_defaults(ScenarioParams params) {
  const std::string& id = params.id;
  if (id.rfind("knotting-", 0) == 0) {
    if (params.knots.empty()) params.knots = parse_knots("torus:1,2,3");
  } else if (id == "rbd-consistency") {
    if (params.p_list.empty()) params.p_list = {2, 3, 4};
  } else if (params.p_list.empty()) {
    params.p_list = {2, 4};
  }
  return params;
}

const char* to_string(DiffeoVerdict v) {
  switch (v) {
    case DiffeoVerdict::not_diffeomorphic: return "not_diffeomorphic";
    case DiffeoVerdict::same_record: return "same_record";
    case DiffeoVerdict::undetermined: return "undetermined";
  }
  return "?";
}

bool ScenarioReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

const ClosedRecord& ScenarioReport::record(const std::string& label) const {
  for (const auto& r : records)
    if (r.label == label) return r.record;
  throw std::invalid_argument("report has no record '" + label + "'");
}

namespace {

using TwistFn = ClosedRecord (*)(const ClosedRecord&, const std::string&, std::optional<std::size_t>);

class Builder {
 public:
  explicit Builder(ScenarioReport& rep) : rep_(rep) {}

  const ClosedRecord& add(const std::string& label, const std::string& role, const ClosedRecord& rec) {
    rec.validate();
    rep_.records.push_back(RecordEntry{label, role, rec});
    return rep_.records.back().record;
  }

  void clause(const std::string& id, const std::string& statement, bool pass, const std::string& detail) {
    rep_.clauses.push_back(Clause{id, statement, pass, detail});
  }

  void warn(const std::string& w) { rep_.warnings.push_back(w); }

 private:
  ScenarioReport& rep_;
};

void parity_note(ScenarioReport& rep, long n, bool knot_surgery = false) {
  if (n % 2 == 0) return;
  std::ostringstream os;
  os << "odd n = " << n << ": |beta(E(" << n << "))| is n-2 = " << n - 2 << " under the paper convention and n-1 = "
     << n - 1 << " under the standard convention; this report uses '" << to_string(rep.convention) << "'";
  rep.warnings.push_back(os.str());
  if (knot_surgery && rep.convention == ParityConvention::paper)
    rep.warnings.push_back("knot-surgered classes follow the product rule (standard parity) under either convention");
}

void fill_verdicts(ScenarioReport& rep) {
  std::vector<const RecordEntry*> outs;
  for (const auto& r : rep.records)
    if (r.role == "output") outs.push_back(&r);
  for (std::size_t i = 0; i < outs.size(); ++i)
    for (std::size_t j = i + 1; j < outs.size(); ++j) {
      VerdictCell cell;
      cell.a = outs[i]->label;
      cell.b = outs[j]->label;
      cell.homeo = homeo_classify(outs[i]->record, outs[j]->record);
      cell.sw = sw_compare_records(outs[i]->record, outs[j]->record);
      cell.count_a = outs[i]->record.sw.count();
      cell.count_b = outs[j]->record.sw.count();
      if (cell.sw == SwComparison::distinct_by_count)
        cell.diffeo = DiffeoVerdict::not_diffeomorphic;
      else if (outs[i]->record == outs[j]->record)
        cell.diffeo = DiffeoVerdict::same_record;
      rep.verdicts.push_back(cell);
    }
}

void pairwise_clauses(Builder& b, const ScenarioReport& rep, bool expect_distinct) {
  std::vector<std::string> not_homeo, not_distinct;
  for (const auto& c : rep.verdicts) {
    if (c.homeo.verdict != HomeoVerdictKind::homeomorphic) not_homeo.push_back(c.a + "/" + c.b);
    if (c.sw != SwComparison::distinct_by_count) not_distinct.push_back(c.a + "/" + c.b);
  }
  b.clause("pairwise-homeomorphic", "all outputs are pairwise homeomorphic", not_homeo.empty(),
           not_homeo.empty() ? std::to_string(rep.verdicts.size()) + " pairs" : "fails for " + join(not_homeo, ", "));
  if (expect_distinct) {
    b.clause("pairwise-sw-distinct", "all outputs have pairwise different numbers of basic classes",
             not_distinct.empty(),
             not_distinct.empty() ? std::to_string(rep.verdicts.size()) + " pairs" : "fails for " + join(not_distinct, ", "));
    if (!not_distinct.empty()) b.warn("SW counts do not separate " + join(not_distinct, ", ") + "; no exotic conclusion for those pairs");
  }
}

void knotting(ScenarioReport& rep, const ScenarioParams& p, bool plug) {
  Builder b(rep);
  if (p.n < 2) throw std::invalid_argument("scenario: n must be >= 2");
  if (p.knots.empty()) throw std::invalid_argument("scenario: need at least one knot");
  parity_note(rep, p.n, true);
  const std::string piece = plug ? "W12" : "W1";
  const TwistFn twist = plug ? &plug_twist_record : &cork_twist_record;
  const std::string np = std::to_string(p.n);

  const ClosedRecord z = elliptic_blowup_with_corks(p.n, p.convention);
  b.add("Z", "input", z);
  const ClosedRecord x0 = twist(z, piece, std::nullopt);
  b.add("X_0", "output", x0);
  const ClosedRecord target = record_preset(RecordPreset::nCP2_mCP2bar, {2 * p.n - 1, 10 * p.n});
  b.add("target", "reference", target);

  b.clause("twist-splits", "twisting " + piece + " in Z splits off S2xS2 and kills SW",
           x0.summands.s2xs2 == 1 && x0.sw.kind == SwState::Kind::zero,
           "s2xs2 = " + std::to_string(x0.summands.s2xs2) + ", sw " + to_string(x0.sw.kind));
  const ClosedRecord back = twist(x0, piece, std::nullopt);
  b.clause("involution", "twisting X_0 again restores Z", structurally_identical(back, z), "");

  std::vector<ClosedRecord> outs{x0};
  bool absorbed = true, twist_back = true, counts = true, plug_cork = true;
  std::vector<std::string> count_detail;
  std::optional<ClosedRecord> x0_cork;
  if (plug) {
    x0_cork = cork_twist_record(z, "W1");
    plug_cork = *x0_cork == x0;
  }
  for (std::size_t i = 0; i < p.knots.size(); ++i) {
    const KnotSpec& k = p.knots[i];
    const std::string idx = std::to_string(i + 1);
    const ClosedRecord xk = knot_surgery_record(x0, k.alexander);
    b.add("X_0[" + k.label + "]", "intermediate", xk);
    absorbed = absorbed && xk == x0;
    const ClosedRecord xi = twist(xk, piece, std::nullopt);
    b.add("X_" + idx, "output", xi);
    const ClosedRecord direct =
        blowup_record(knot_surgery_record(record_preset(RecordPreset::En, {p.n}, p.convention), k.alexander), 1);
    b.add("E(" + np + ")[" + k.label + "]#CP2bar", "intermediate", direct);
    twist_back = twist_back && xi == direct;
    const std::size_t expect =
        2 * (k.alexander.substitute_power(2) * elliptic_sw_polynomial(p.n)).support_size();
    const auto got = xi.sw.count();
    counts = counts && got == expect;
    count_detail.push_back("X_" + idx + " " + count_text(got) + "/" + std::to_string(expect));
    if (plug) {
      const ClosedRecord ci = cork_twist_record(knot_surgery_record(*x0_cork, k.alexander), "W1", std::nullopt);
      plug_cork = plug_cork && ci == xi;
    }
    outs.push_back(xi);
  }

  b.clause("knot-surgery-absorbed", "knot surgery in the cusp of X_0 returns X_0 for every knot", absorbed, "");
  b.clause("twist-back", "twisting X_0[K] gives E(n)_K # CP2bar", twist_back, "");
  b.clause("sw-counts", "N(X_i) = 2 |support(Delta_i(t^2) (t - 1/t)^(n-2))|", counts, join(count_detail, ", "));

  std::vector<std::string> off_target;
  for (std::size_t i = 0; i < outs.size(); ++i)
    if (homeo_classify(outs[i], target).verdict != HomeoVerdictKind::homeomorphic)
      off_target.push_back("X_" + std::to_string(i));
  b.clause("homeomorphic-to-target",
           "every output is homeomorphic to " + std::to_string(2 * p.n - 1) + "CP2 # " + std::to_string(10 * p.n) + "CP2bar",
           off_target.empty(), off_target.empty() ? "" : "fails for " + join(off_target, ", "));
  if (plug)
    b.clause("plug-equals-cork", "plug-path records equal the cork-path records", plug_cork, "");

  fill_verdicts(rep);
  pairwise_clauses(b, rep, true);
}

void disjoint(ScenarioReport& rep, const ScenarioParams& p, bool plug, bool involution) {
  Builder b(rep);
  const auto& ps = p.p_list;
  if (ps.empty()) throw std::invalid_argument("scenario: need a p list");
  for (long x : ps)
    if (x < 2) throw std::invalid_argument("scenario: every p must be >= 2");
  const long total = std::accumulate(ps.begin(), ps.end(), 0L);
  parity_note(rep, total);
  if (std::set<long>(ps.begin(), ps.end()).size() != ps.size())
    b.warn("p list has repeated entries: equal p give equal counts and those Y_i cannot be told apart");

  const ClosedRecord y0 = elliptic_with_plumbings(ps, p.convention);
  b.add("Y_0", "output", y0);
  const std::size_t expect0 =
      beta_elliptic(total, ps.size(), p.convention).size();
  std::vector<std::string> table{"Y_0 " + count_text(y0.sw.count())};
  bool table_ok = y0.sw.count() == expect0;
  bool rbd_ok = true, invol_ok = true, alt_ok = true;

  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    std::string piece;
    std::optional<std::size_t> comp;
    if (involution) {
      piece = plug ? "Pfam" : "Wfam";
      comp = i;
    } else {
      piece = (plug ? "P" : "W") + idx;
    }
    const ClosedRecord yi = plug ? plug_twist_record(y0, piece, comp) : cork_twist_record(y0, piece, comp);
    const ClosedRecord blown = rational_blowdown_record(y0, "D" + idx);
    b.add("Y_" + idx + "'", "intermediate", blown);
    const ClosedRecord via_rbd = blowup_record(blown, ps[i] - 1);
    b.add("Y_" + idx + "'#" + std::to_string(ps[i] - 1) + "CP2bar", "intermediate", via_rbd);
    b.add("Y_" + idx, "output", yi);
    rbd_ok = rbd_ok && yi == via_rbd;

    const std::size_t expect = (std::size_t{1} << (ps[i] - 1)) * expect0;
    table.push_back("Y_" + idx + " " + count_text(yi.sw.count()));
    table_ok = table_ok && yi.sw.count() == expect;

    const ClosedRecord again = plug ? plug_twist_record(yi, piece, comp) : cork_twist_record(yi, piece, comp);
    invol_ok = invol_ok && structurally_identical(again, y0);

    // Cross-check against the other routing / the cork path.
    if (plug || involution) {
      const ClosedRecord alt = cork_twist_record(y0, "W" + idx);
      alt_ok = alt_ok && alt == yi;
    }
  }

  b.clause("count-table", "N(Y_i) = 2^(p_i - 1) N(Y_0) with N(Y_0) = |beta(E(" + std::to_string(total) + "))| 2^" +
                              std::to_string(ps.size()),
           table_ok, join(table, ", "));
  b.clause("rbd-path", "each Y_i equals the rational blowdown of C_{p_i} followed by p_i - 1 blow-ups", rbd_ok, "");
  b.clause("involution", "twisting Y_i again restores Y_0", invol_ok, "");
  if (plug && involution)
    b.clause("plug-equals-cork", "the fixed plug family with involution i gives the cork-path Y_i", alt_ok, "");
  else if (plug)
    b.clause("plug-equals-cork", "plug-path records equal the cork-path records", alt_ok, "");
  else if (involution)
    b.clause("fixed-piece", "the fixed piece " + y0.piece("Wfam").label() + " with involution i gives the disjoint-copy Y_i",
             alt_ok, "");

  fill_verdicts(rep);
  pairwise_clauses(b, rep, true);
}

void rbd_consistency(ScenarioReport& rep, const ScenarioParams& p) {
  Builder b(rep);
  if (p.p_list.empty()) throw std::invalid_argument("scenario: need a p list");
  bool any_odd = false;
  for (long x : p.p_list) {
    if (x < 2) throw std::invalid_argument("scenario: every p must be >= 2");
    if (x % 2 != 0 && !any_odd) {
      parity_note(rep, x);
      any_odd = true;
    }
  }
  for (long x : p.p_list) {
    const std::string ps = std::to_string(x);
    const ClosedRecord base = elliptic_with_plumbings({x}, p.convention);
    b.add("Y_0(p=" + ps + ")", "input", base);
    const ConsistencyReport c = two_path_consistency(base, "D1");
    b.add("blowdown(p=" + ps + ")", "output", c.via_blowdown);
    b.add("cork(p=" + ps + ")", "output", c.via_cork);
    b.add("plug(p=" + ps + ")", "output", c.via_plug);
    b.clause("paths-agree-p" + ps, "p = " + ps + ": blowdown + blow-ups, W_{p-1} twist and W_{1,p} twist agree", c.ok(),
             c.mismatches.empty() ? "e " + std::to_string(c.via_blowdown.e) + ", sigma " +
                                        std::to_string(c.via_blowdown.sigma) + ", count " +
                                        count_text(c.via_blowdown.sw.count())
                                  : join(c.mismatches, "; "));
  }
  const ClosedRecord zero = connected_sum(elliptic_with_plumbings({2}, p.convention),
                                          record_preset(RecordPreset::S2xS2, {}, p.convention));
  b.add("Y_0(p=2)#S2xS2", "input", zero);
  const ConsistencyReport cz = two_path_consistency(zero, "D1");
  b.clause("paths-agree-zero", "with vanishing SW all three paths give SW = 0",
           cz.ok() && cz.via_blowdown.sw.kind == SwState::Kind::zero, join(cz.mismatches, "; "));

  fill_verdicts(rep);
  std::vector<std::string> bad;
  for (const auto& cell : rep.verdicts) {
    const bool same_p = cell.a.substr(cell.a.find('(')) == cell.b.substr(cell.b.find('('));
    if (same_p && cell.diffeo != DiffeoVerdict::same_record) bad.push_back(cell.a + "/" + cell.b);
  }
  b.clause("same-p-records", "for each p the three path records coincide", bad.empty(), join(bad, ", "));
}

}  // namespace

ScenarioReport run_scenario(const ScenarioParams& raw) {
  const ScenarioParams p = with_defaults(raw);
  ScenarioReport rep;
  rep.id = p.id;
  rep.convention = p.convention;
  const bool knot_scenario = p.id.rfind("knotting-", 0) == 0;
  if (knot_scenario) {
    rep.params.emplace_back("n", std::to_string(p.n));
    std::vector<std::string> labels;
    for (const auto& k : p.knots) labels.push_back(k.label + " = " + k.alexander.pretty());
    rep.params.emplace_back("knots", join(labels, "; "));
  } else {
    rep.params.emplace_back("p_list", join_longs(p.p_list));
  }
  rep.params.emplace_back("parity", to_string(p.convention));

  if (p.id == "knotting-corks")
    knotting(rep, p, false);
  else if (p.id == "knotting-plugs")
    knotting(rep, p, true);
  else if (p.id == "disjoint-corks")
    disjoint(rep, p, false, false);
  else if (p.id == "involution-corks")
    disjoint(rep, p, false, true);
  else if (p.id == "disjoint-plugs")
    disjoint(rep, p, true, false);
  else if (p.id == "involution-plugs")
    disjoint(rep, p, true, true);
  else if (p.id == "rbd-consistency")
    rbd_consistency(rep, p);
  else
    throw std::invalid_argument("unknown scenario '" + p.id + "' (expected one of " + join(scenario_ids(), ", ") + ")");

  for (const auto& r : rep.records) r.record.validate();
  return rep;
}

namespace {

std::string record_line(const ClosedRecord& r) {
  std::ostringstream os;
  os << "e=" << r.e << " sigma=" << r.sigma << " b2+=" << r.b2plus << " b2-=" << r.b2minus << " parity="
     << to_string(r.parity) << " spin=" << (r.spin ? "yes" : "no") << " sw=" << to_string(r.sw.kind)
     << " N=" << count_text(r.sw.count());
  return os.str();
}

std::string summand_line(const ClosedRecord& r) {
  std::ostringstream os;
  os << "cusp=" << (r.cusp ? "yes" : "no") << " summands(CP2=" << r.summands.cp2 << ", CP2bar=" << r.summands.cp2bar
     << ", S2xS2=" << r.summands.s2xs2 << ")";
  if (r.elliptic)
    os << " core=E(" << r.elliptic->n << ")" << (r.elliptic->modified ? "*" : "")
       << " Delta=" << r.elliptic->alexander.pretty();
  if (r.handle_count_meta) os << " handles=" << *r.handle_count_meta;
  if (!r.embedded.empty()) {
    std::vector<std::string> ps;
    for (const auto& p : r.embedded) ps.push_back(p.id + ":" + p.label() + (p.rule == TwistRule::restore ? "*" : ""));
    os << " pieces=" << join(ps, " ");
  }
  return os.str();
}

}  // namespace

std::string to_text(const ScenarioReport& rep) {
  std::ostringstream os;
  os << "scenario: " << rep.id << "\n";
  os << "convention: " << to_string(rep.convention) << "\n";
  os << "parameters:\n";
  for (const auto& [k, v] : rep.params) os << "  " << k << " = " << v << "\n";
  if (!rep.warnings.empty()) {
    os << "warnings:\n";
    for (const auto& w : rep.warnings) os << "  ! " << w << "\n";
  }
  os << "records:\n";
  for (const auto& e : rep.records) {
    os << "  [" << e.role << "] " << e.label << " (" << e.record.name << ")\n";
    os << "    " << record_line(e.record) << "\n";
    os << "    " << summand_line(e.record) << "\n";
    for (const auto& step : e.record.provenance) os << "    <- " << step << "\n";
  }
  os << "verdicts:\n";
  for (const auto& c : rep.verdicts) {
    os << "  " << c.a << " vs " << c.b << ": " << to_string(c.homeo.verdict) << " (" << c.homeo.reason << "); sw "
       << (c.sw ? to_string(*c.sw) : "unknown") << " (N " << count_text(c.count_a) << " vs " << count_text(c.count_b)
       << "); diffeo " << to_string(c.diffeo) << "\n";
  }
  os << "clauses:\n";
  std::size_t passed = 0;
  for (const auto& c : rep.clauses) {
    passed += c.pass ? 1 : 0;
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << ": " << c.statement;
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  os << "result: " << (rep.all_pass() ? "PASS" : "FAIL") << " (" << passed << "/" << rep.clauses.size()
     << " clauses)\n";
  return os.str();
}

Json to_json(const ScenarioReport& rep) {
  Json out;
  out["scenario"] = rep.id;
  out["convention"] = to_string(rep.convention);
  Json params;
  for (const auto& [k, v] : rep.params) params[k] = v;
  out["parameters"] = params;
  out["warnings"] = rep.warnings;
  Json records = Json::array();
  for (const auto& e : rep.records) {
    Json r;
    r["label"] = e.label;
    r["role"] = e.role;
    r["record"] = to_json(e.record);
    records.push_back(r);
  }
  out["records"] = records;
  Json verdicts = Json::array();
  for (const auto& c : rep.verdicts) {
    Json v;
    v["a"] = c.a;
    v["b"] = c.b;
    v["homeo"] = to_string(c.homeo.verdict);
    v["same_rank"] = c.homeo.same_rank;
    v["same_signature"] = c.homeo.same_signature;
    v["same_parity"] = c.homeo.same_parity;
    v["reason"] = c.homeo.reason;
    v["sw"] = c.sw ? Json(to_string(*c.sw)) : Json(nullptr);
    v["count_a"] = c.count_a ? Json(*c.count_a) : Json(nullptr);
    v["count_b"] = c.count_b ? Json(*c.count_b) : Json(nullptr);
    v["diffeo"] = to_string(c.diffeo);
    verdicts.push_back(v);
  }
  out["verdicts"] = verdicts;
  Json clauses = Json::array();
  for (const auto& c : rep.clauses)
    clauses.push_back(Json{{"id", c.id}, {"statement", c.statement}, {"pass", c.pass}, {"detail", c.detail}});
  out["clauses"] = clauses;
  out["pass"] = rep.all_pass();
  return out;
}

}  // namespace cork
