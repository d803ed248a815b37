// serialize.cpp

#include "cork/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace cork {

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer out;
    if (out.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not an integer: " + j.dump());
    return out;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json to_json(const HandlePresentation& pres) {
  Json out;
  out["name"] = pres.name;
  out["one_handles"] = pres.one_handles;
  Json handles = Json::array();
  for (std::size_t a = 0; a < pres.two_handles(); ++a) {
    Json h;
    h["framing"] = integer_to_json(pres.framing(a));
    Json link = Json::array();
    for (std::size_t b = 0; b < pres.two_handles(); ++b) link.push_back(integer_to_json(a == b ? Integer(0) : pres.linking(a, b)));
    h["linking"] = link;
    Json over = Json::array();
    for (std::size_t d = 0; d < pres.one_handles; ++d) over.push_back(integer_to_json(pres.over(a, d)));
    h["over"] = over;
    handles.push_back(h);
  }
  out["two_handles"] = handles;
  out["three_handles"] = pres.three_handles;
  if (pres.opaque_two_handles) out["opaque_two_handles"] = pres.opaque_two_handles;
  if (!pres.swap_pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& [dot, handle] : pres.swap_pairs) pairs.push_back(Json::array({dot, handle}));
    out["swap_pairs"] = pairs;
  }
  if (!pres.contains_after_twist.empty()) out["contains_after_twist"] = pres.contains_after_twist;
  return out;
}

HandlePresentation presentation_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("presentation: expected a JSON object");
  HandlePresentation pres;
  pres.name = j.value("name", std::string());
  pres.one_handles = j.value("one_handles", std::size_t{0});
  pres.three_handles = j.value("three_handles", std::size_t{0});
  pres.opaque_two_handles = j.value("opaque_two_handles", std::size_t{0});
  pres.contains_after_twist = j.value("contains_after_twist", std::string());
  const Json handles = j.value("two_handles", Json::array());
  const std::size_t h = handles.size();
  pres.linking = IntMatrix(h, h);
  pres.over = IntMatrix(h, pres.one_handles);
  for (std::size_t a = 0; a < h; ++a) {
    const Json& row = handles[a];
    pres.linking(a, a) = integer_from_json(row.at("framing"));
    const Json link = row.value("linking", Json::array());
    if (!link.empty() && link.size() != h)
      throw std::invalid_argument("presentation: 2-handle " + std::to_string(a) + " linking row has wrong length");
    for (std::size_t b = 0; b < link.size(); ++b)
      if (b != a) pres.linking(a, b) = integer_from_json(link[b]);
    const Json over = row.value("over", Json::array());
    if (over.size() != pres.one_handles)
      throw std::invalid_argument("presentation: 2-handle " + std::to_string(a) + " needs one run-over count per dotted circle");
    for (std::size_t d = 0; d < over.size(); ++d) pres.over(a, d) = integer_from_json(over[d]);
  }
  for (const auto& pair : j.value("swap_pairs", Json::array()))
    pres.swap_pairs.emplace_back(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>());
  pres.validate();
  return pres;
}

Json to_json(const FormInvariants& f) {
  Json out;
  out["rank"] = f.rank;
  out["nullity"] = f.nullity;
  out["signature"] = f.signature;
  out["parity"] = to_string(f.parity);
  out["definiteness"] = to_string(f.definiteness);
  return out;
}

Json to_json(const HomologyReport& h) {
  auto group = [](const AbelianGroup& g) {
    Json out;
    out["free_rank"] = g.free_rank;
    Json tors = Json::array();
    for (const auto& t : g.torsion) tors.push_back(integer_to_json(t));
    out["torsion"] = tors;
    out["text"] = g.to_string();
    return out;
  };
  Json out;
  out["h1"] = group(h.h1);
  out["h2"] = group(h.h2);
  out["boundary_h1"] = group(h.boundary_h1);
  out["euler"] = h.euler;
  out["intersection_form"] = to_json(h.intersection_form);
  Json rows = Json::array();
  for (std::size_t i = 0; i < h.form_matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < h.form_matrix.cols(); ++k) row.push_back(integer_to_json(h.form_matrix(i, k)));
    rows.push_back(row);
  }
  out["form_matrix"] = rows;
  out["point_like"] = h.point_like();
  return out;
}

Json to_json(const BasicClassSet& set) {
  Json out;
  out["ambient"] = Json{{"e", set.ambient().e}, {"sigma", set.ambient().sigma}};
  out["convention"] = to_string(set.convention());
  out["e_dims"] = set.e_dims();
  Json classes = Json::array();
  for (const auto& [k, v] : set.sorted()) {
    Json c;
    c["t"] = k.t;
    c["k_e"] = k.e;
    Json tags = Json::array();
    for (const auto& tag : k.tags)
      tags.push_back(Json{{"label", tag.label}, {"restriction", tag.restriction}, {"square", tag.square}});
    c["tag"] = tags;
    c["value"] = integer_to_json(v);
    classes.push_back(c);
  }
  out["classes"] = classes;
  return out;
}

BasicClassSet class_set_from_json(const Json& j) {
  const Json& amb = j.at("ambient");
  BasicClassSet set(Ambient{amb.at("e").get<long>(), amb.at("sigma").get<long>()}, j.at("e_dims").get<std::size_t>(),
                    parse_convention(j.value("convention", std::string("paper"))));
  for (const auto& c : j.at("classes")) {
    BasicClassVector k;
    k.t = c.at("t").get<long>();
    k.e = c.at("k_e").get<std::vector<long>>();
    for (const auto& tag : c.value("tag", Json::array()))
      k.tags.push_back(ClassTag{tag.at("label").get<std::string>(), tag.at("restriction").get<long>(),
                                tag.at("square").get<long>()});
    set.insert(k, integer_from_json(c.at("value")));
  }
  return set;
}

Json to_json(const EmbeddingProfile& profile) {
  Json rows = Json::array();
  for (const auto& row : profile.rows) rows.push_back(Json{{"eval_t", row.eval_t}, {"eval_e", row.eval_e}});
  return Json{{"p", profile.p}, {"rows", rows}};
}

Json to_json(const EmbeddedPiece& piece) {
  Json out;
  out["id"] = piece.id;
  out["kind"] = to_string(piece.kind);
  out["label"] = piece.label();
  out["params"] = piece.params;
  if (piece.profile) out["profile"] = to_json(*piece.profile);
  if (!piece.hosts.empty()) out["hosts"] = piece.hosts;
  out["rule"] = to_string(piece.rule);
  if (!piece.group.empty()) out["group"] = piece.group;
  if (piece.undo) out["restores"] = piece.undo->name;
  return out;
}

Json to_json(const ClosedRecord& rec) {
  Json out;
  out["name"] = rec.name;
  out["e"] = rec.e;
  out["sigma"] = rec.sigma;
  out["b2plus"] = rec.b2plus;
  out["b2minus"] = rec.b2minus;
  out["parity"] = to_string(rec.parity);
  out["simply_connected"] = rec.simply_connected;
  out["spin"] = rec.spin;
  Json markers;
  markers["cusp"] = rec.cusp;
  markers["fiber_class"] = rec.fiber_class;
  markers["summands"] = Json{{"cp2", rec.summands.cp2}, {"cp2bar", rec.summands.cp2bar}, {"s2xs2", rec.summands.s2xs2}};
  markers["core_trivial"] = rec.core_trivial;
  markers["core_parity"] = to_string(rec.core_parity);
  if (rec.elliptic) {
    markers["elliptic"] = Json{{"n", rec.elliptic->n},
                               {"alexander", rec.elliptic->alexander.to_text()},
                               {"modified", rec.elliptic->modified}};
  }
  markers["e_coordinates"] = rec.e_coordinates;
  Json pieces = Json::array();
  for (const auto& p : rec.embedded) pieces.push_back(to_json(p));
  markers["embedded"] = pieces;
  out["markers"] = markers;
  Json sw;
  sw["state"] = to_string(rec.sw.kind);
  if (auto c = rec.sw.count()) sw["count"] = *c;
  if (rec.sw.kind == SwState::Kind::known) sw["classes"] = to_json(rec.sw.set);
  out["sw"] = sw;
  out["convention"] = to_string(rec.convention);
  if (rec.handle_count_meta) out["handle_count_meta"] = *rec.handle_count_meta;
  out["provenance"] = rec.provenance;
  return out;
}

SeifertMatrix seifert_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("seifert") : j;
  if (!rows.is_array()) throw std::invalid_argument("seifert: expected an array of rows");
  const std::size_t n = rows.size();
  IntMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw std::invalid_argument("seifert: matrix must be square");
    for (std::size_t k = 0; k < n; ++k) v(i, k) = integer_from_json(rows[i][k]);
  }
  return SeifertMatrix{v};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace cork
