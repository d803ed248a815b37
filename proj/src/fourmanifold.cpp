// fourmanifold.cpp

#include "cork/fourmanifold.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cork {

const char* to_string(RecordParity p) {
  switch (p) {
    case RecordParity::even: return "even";
    case RecordParity::odd: return "odd";
    case RecordParity::unknown: return "unknown";
  }
  return "?";
}

const char* to_string(SwState::Kind k) {
  switch (k) {
    case SwState::Kind::known: return "known";
    case SwState::Kind::zero: return "zero";
    case SwState::Kind::unknown: return "unknown";
  }
  return "?";
}

std::optional<std::size_t> SwState::count() const {
  switch (kind) {
    case Kind::known: return set.size();
    case Kind::zero: return std::size_t{0};
    case Kind::unknown: return std::nullopt;
  }
  return std::nullopt;
}

bool SwState::operator==(const SwState& rhs) const {
  if (kind != rhs.kind) return false;
  return kind != Kind::known || set == rhs.set;
}

const char* to_string(PieceKind k) {
  switch (k) {
    case PieceKind::cork: return "cork";
    case PieceKind::cork_family: return "cork_family";
    case PieceKind::plug: return "plug";
    case PieceKind::plug_family: return "plug_family";
    case PieceKind::plumbing_c: return "plumbing_c";
    case PieceKind::plumbing_d: return "plumbing_d";
  }
  return "?";
}

const char* to_string(TwistRule r) {
  switch (r) {
    case TwistRule::none: return "none";
    case TwistRule::cusp_complement: return "cusp_complement";
    case TwistRule::rbd_equivalent: return "rbd_equivalent";
    case TwistRule::restore: return "restore";
  }
  return "?";
}

const char* to_string(HomeoVerdictKind v) {
  switch (v) {
    case HomeoVerdictKind::homeomorphic: return "homeomorphic";
    case HomeoVerdictKind::not_homeomorphic: return "not_homeomorphic";
    case HomeoVerdictKind::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::string join_params(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::string EmbeddedPiece::label() const {
  switch (kind) {
    case PieceKind::cork: return "W_" + join_params(params);
    case PieceKind::cork_family: return "W(" + join_params(params) + ")";
    case PieceKind::plug: return "W_{" + join_params(params) + "}";
    case PieceKind::plug_family: {
      std::string s = "bsum(";
      for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::string("W_{1,") + std::to_string(params[i]) + "}";
      return s + ")";
    }
    case PieceKind::plumbing_c: return "C_" + join_params(params);
    case PieceKind::plumbing_d: return "D_" + join_params(params);
  }
  return "?";
}

bool ClosedRecord::has_piece(const std::string& id) const {
  return std::any_of(embedded.begin(), embedded.end(), [&](const EmbeddedPiece& p) { return p.id == id; });
}

const EmbeddedPiece& ClosedRecord::piece(const std::string& id) const {
  for (const auto& p : embedded)
    if (p.id == id) return p;
  throw std::invalid_argument("record '" + name + "' carries no embedded piece '" + id + "'");
}

namespace {

RecordParity derive_parity(const ClosedRecord& r) {
  if (r.summands.cp2 > 0 || r.summands.cp2bar > 0 || r.core_parity == RecordParity::odd) return RecordParity::odd;
  if (r.core_parity == RecordParity::even) return RecordParity::even;
  return RecordParity::unknown;
}

void fail(const ClosedRecord& r, const std::string& what) {
  throw std::logic_error("record '" + r.name + "' violates invariant: " + what);
}

}  // namespace

void ClosedRecord::validate() const {
  if (b2plus < 0 || b2minus < 0) fail(*this, "b2+ and b2- are nonnegative");
  if (e != 2 + b2plus + b2minus) fail(*this, "e = 2 + b2+ + b2-");
  if (sigma != b2plus - b2minus) fail(*this, "sigma = b2+ - b2-");
  if (parity != derive_parity(*this)) fail(*this, "parity agrees with summands and core");
  if (spin != (parity == RecordParity::even)) fail(*this, "spin iff even");
  if (summands.cp2 < 0 || summands.cp2bar < 0 || summands.s2xs2 < 0) fail(*this, "summand counts are nonnegative");
  if (summands.s2xs2 > 0 && b2plus > 1 && sw.kind != SwState::Kind::zero)
    fail(*this, "an S2xS2 summand with b2+ > 1 forces SW = 0");
  if (sw.kind == SwState::Kind::known) {
    if (sw.set.ambient() != Ambient{e, sigma}) fail(*this, "SW ambient matches (e, sigma)");
    if (sw.set.e_dims() != e_coordinates) fail(*this, "SW classes carry one coordinate per tracked exceptional class");
    for (const auto& [k, v] : sw.set.classes()) {
      (void)v;
      try {
        if (d_degree(k, sw.set.ambient()) != 0) fail(*this, "every basic class has d = 0");
      } catch (const std::domain_error& err) {
        fail(*this, err.what());
      }
    }
  }
  for (const auto& p : embedded) {
    if (p.profile && p.profile->rows.front().eval_e.size() != e_coordinates)
      fail(*this, "profile of " + p.id + " has one column per tracked exceptional class");
    if (p.rule == TwistRule::restore && !p.undo) fail(*this, "reglued piece " + p.id + " remembers its source");
  }
}

bool ClosedRecord::operator==(const ClosedRecord& rhs) const {
  return e == rhs.e && sigma == rhs.sigma && b2plus == rhs.b2plus && b2minus == rhs.b2minus && parity == rhs.parity &&
         simply_connected == rhs.simply_connected && spin == rhs.spin && cusp == rhs.cusp &&
         fiber_class == rhs.fiber_class && summands == rhs.summands && core_trivial == rhs.core_trivial &&
         core_parity == rhs.core_parity && elliptic == rhs.elliptic && e_coordinates == rhs.e_coordinates &&
         sw == rhs.sw && convention == rhs.convention && handle_count_meta == rhs.handle_count_meta;
}

bool structurally_identical(const ClosedRecord& a, const ClosedRecord& b) {
  if (!(a == b) || a.embedded.size() != b.embedded.size()) return false;
  for (std::size_t i = 0; i < a.embedded.size(); ++i) {
    const auto& x = a.embedded[i];
    const auto& y = b.embedded[i];
    if (x.id != y.id || x.kind != y.kind || x.params != y.params || x.profile != y.profile || x.hosts != y.hosts ||
        x.rule != y.rule || x.group != y.group)
      return false;
    if (static_cast<bool>(x.undo) != static_cast<bool>(y.undo)) return false;
    if (x.undo && x.undo != y.undo && !structurally_identical(*x.undo, *y.undo)) return false;
  }
  return true;
}

namespace {

// Stabilization rewrite, derived parity, vanishing rule; then validate.
ClosedRecord finalize(ClosedRecord r) {
  while (r.summands.cp2 >= 1 && r.summands.cp2bar >= 1) {
    bool rest_nonspin = r.summands.cp2 > 1 || r.summands.cp2bar > 1 || r.core_parity == RecordParity::odd;
    if (!rest_nonspin) break;
    --r.summands.cp2;
    --r.summands.cp2bar;
    ++r.summands.s2xs2;
    // The absorbed -CP2 takes its tracked exceptional coordinate with it.
    if (r.e_coordinates > 0 && r.sw.kind != SwState::Kind::known) {
      --r.e_coordinates;
      for (auto& piece : r.embedded)
        if (piece.profile) piece.profile = piece.profile->without_coordinate(r.e_coordinates);
    }
  }
  r.parity = derive_parity(r);
  r.spin = r.parity == RecordParity::even;
  if (r.summands.s2xs2 > 0 && r.b2plus > 1) r.sw = SwState::zero();
  r.validate();
  return r;
}

SwState blow_up(const SwState& s, long times) {
  if (s.kind != SwState::Kind::known) return s;
  BasicClassSet out = s.set;
  for (long i = 0; i < times; ++i) out = blowup_formula(out);
  return SwState::known(out);
}

bool negative_standard(const ClosedRecord& r) {
  return r.core_trivial && r.summands.cp2 == 0 && r.summands.s2xs2 == 0 && r.summands.cp2bar > 0 &&
         r.embedded.empty();
}

RecordParity combine_parity(RecordParity a, RecordParity b) {
  if (a == RecordParity::odd || b == RecordParity::odd) return RecordParity::odd;
  if (a == RecordParity::even && b == RecordParity::even) return RecordParity::even;
  return RecordParity::unknown;
}

std::size_t consumed_coordinate(const EmbeddingProfile& profile) {
  const auto& last = profile.rows.back();
  std::size_t idx = last.eval_e.size();
  for (std::size_t i = 0; i < last.eval_e.size(); ++i) {
    if (last.eval_e[i] == 0) continue;
    if (idx != last.eval_e.size())
      throw std::invalid_argument("profile: distinguished sphere pairs with more than one exceptional class");
    idx = i;
  }
  if (idx == last.eval_e.size() || last.eval_t != 0)
    throw std::invalid_argument("profile: distinguished sphere must pair with exactly one exceptional class");
  return idx;
}

void mark_core_modified(ClosedRecord& r) {
  r.core_trivial = false;
  r.core_parity = RecordParity::unknown;
  if (r.elliptic) r.elliptic->modified = true;
  r.handle_count_meta.reset();
}

// Remove `host` and every piece that lives inside it; shift the remaining
// profiles to the new exceptional coordinates.
std::vector<EmbeddedPiece> drop_host(const std::vector<EmbeddedPiece>& pieces, const std::string& host,
                                     std::size_t consumed, std::size_t appended) {
  std::vector<EmbeddedPiece> out;
  for (const auto& p : pieces) {
    if (p.id == host) continue;
    if (std::find(p.hosts.begin(), p.hosts.end(), host) != p.hosts.end()) continue;
    EmbeddedPiece q = p;
    if (q.profile) q.profile = q.profile->without_coordinate(consumed).with_extra_coordinates(appended);
    out.push_back(q);
  }
  return out;
}

ClosedRecord twist_restore(const ClosedRecord& rec, const EmbeddedPiece& piece) {
  ClosedRecord out = *piece.undo;
  out.provenance = rec.provenance;
  out.provenance.push_back("reglue " + piece.label() + " by its involution again: restores " + piece.undo->name);
  out.name = piece.undo->name;
  return out;
}

ClosedRecord twist_cusp_complement(const ClosedRecord& rec, const EmbeddedPiece& piece) {
  ClosedRecord r = rec;
  auto undo = std::make_shared<const ClosedRecord>(rec);
  // The twisted manifold splits off CP2 # 2(-CP2), and with a nonspin rest
  // that is S2xS2 # -CP2; the cusp neighborhood stays on the other side.
  r.summands.s2xs2 += 1;
  r.core_trivial = false;
  r.core_parity = RecordParity::unknown;
  if (r.elliptic) r.elliptic = EllipticCore{r.elliptic->n, LaurentPoly(1), true};
  r.handle_count_meta.reset();
  r.embedded.clear();
  for (const auto& p : rec.embedded) {
    if (p.group != piece.group || p.rule != TwistRule::cusp_complement) continue;
    EmbeddedPiece q = p;
    q.rule = TwistRule::restore;
    q.undo = undo;
    r.embedded.push_back(q);
  }
  r.name = "X(n=" + std::to_string(rec.elliptic ? rec.elliptic->n : 0) + ")";
  r.provenance.push_back("remove " + piece.label() + " and reglue by its involution: splits off S2xS2");
  ClosedRecord out = finalize(r);
  if (out.parity != rec.parity && rec.parity != RecordParity::unknown)
    throw std::logic_error("twist changed the parity of the intersection form");
  return out;
}

ClosedRecord twist_rbd_equivalent(const ClosedRecord& rec, const EmbeddedPiece& piece, const std::string& host_id) {
  const EmbeddedPiece& host = rec.piece(host_id);
  if (!host.profile) throw std::invalid_argument("twist: host " + host_id + " has no embedding profile");
  const EmbeddingProfile& profile = *host.profile;
  const long p = profile.p;
  const std::size_t consumed = consumed_coordinate(profile);

  // The reglued piece is a compact piece with the homology of a point (cork)
  // or a plug; either way (e, sigma, b2+-) do not move.
  if (piece.kind == PieceKind::cork || piece.kind == PieceKind::cork_family) {
    if (!homology(preset(PresetKind::Wn, {p - 1})).point_like())
      throw std::logic_error("twist: W_{p-1} must be contractible");
  } else {
    preset(PresetKind::Wmn, {1, p});
  }

  ClosedRecord r = rec;
  switch (rec.sw.kind) {
    case SwState::Kind::known: {
      BasicClassSet blown = rec.sw.set;
      for (long i = 0; i < p - 1; ++i) blown = blowup_formula(blown);
      r.sw = SwState::known(rbd_transfer(blown, profile.with_extra_coordinates(static_cast<std::size_t>(p - 1)), host.id));
      break;
    }
    case SwState::Kind::zero:
    case SwState::Kind::unknown: break;
  }
  r.e_coordinates = rec.e_coordinates - 1 + static_cast<std::size_t>(p - 1);
  if (r.summands.cp2bar > 0) r.summands.cp2bar -= 1;
  r.summands.cp2bar += p - 1;
  mark_core_modified(r);

  r.embedded = drop_host(rec.embedded, host_id, consumed, static_cast<std::size_t>(p - 1));
  EmbeddedPiece reglued = piece;
  reglued.rule = TwistRule::restore;
  reglued.hosts.clear();
  reglued.undo = std::make_shared<const ClosedRecord>(rec);
  r.embedded.push_back(reglued);

  r.name = rec.name + "^" + piece.id;
  r.provenance.push_back("remove " + piece.label() + " inside " + host.label() + " [" + host_id +
                         "] and reglue by its involution");
  ClosedRecord out = finalize(r);
  if (rec.parity != RecordParity::unknown && out.parity != rec.parity)
    throw std::logic_error("twist changed the parity of the intersection form");
  return out;
}

ClosedRecord twist(const ClosedRecord& rec, const std::string& piece_id, std::optional<std::size_t> component,
                   bool plug) {
  const EmbeddedPiece& piece = rec.piece(piece_id);
  const bool family = piece.kind == PieceKind::cork_family || piece.kind == PieceKind::plug_family;
  if (plug) {
    if (piece.kind != PieceKind::plug && piece.kind != PieceKind::plug_family)
      throw std::invalid_argument("plug_twist_record: " + piece_id + " is not a plug");
  } else if (piece.kind != PieceKind::cork && piece.kind != PieceKind::cork_family) {
    throw std::invalid_argument("cork_twist_record: " + piece_id + " is not a cork");
  }
  switch (piece.rule) {
    case TwistRule::restore: return twist_restore(rec, piece);
    case TwistRule::cusp_complement: return twist_cusp_complement(rec, piece);
    case TwistRule::rbd_equivalent: {
      std::size_t idx = 0;
      if (family) {
        if (!component || *component >= piece.hosts.size())
          throw std::invalid_argument("twist: family piece " + piece_id + " needs a component index");
        idx = *component;
      } else if (component && *component != 0) {
        throw std::invalid_argument("twist: " + piece_id + " has a single component");
      }
      if (piece.hosts.empty()) throw std::invalid_argument("twist: " + piece_id + " has no host plumbing");
      return twist_rbd_equivalent(rec, piece, piece.hosts[idx]);
    }
    case TwistRule::none: break;
  }
  throw std::invalid_argument("twist: piece " + piece_id + " has no twist rule");
}

}  // namespace

ClosedRecord record_preset(RecordPreset kind, const std::vector<long>& params, ParityConvention convention) {
  ClosedRecord r;
  r.convention = convention;
  switch (kind) {
    case RecordPreset::En: {
      if (params.empty() || params[0] < 1) throw std::invalid_argument("record_preset En: need n >= 1");
      const long n = params[0];
      r.name = "E(" + std::to_string(n) + ")";
      r.e = 12 * n;
      r.sigma = -8 * n;
      r.b2plus = 2 * n - 1;
      r.b2minus = 10 * n - 1;
      r.core_trivial = false;
      r.core_parity = n % 2 == 0 ? RecordParity::even : RecordParity::odd;
      r.cusp = true;
      r.fiber_class = true;
      r.elliptic = EllipticCore{n, LaurentPoly(1), false};
      // E(1) has b2+ = 1; its SW invariant is chamber dependent.
      r.sw = n >= 2 ? SwState::known(beta_elliptic(n, 0, convention)) : SwState::unknown();
      if (params.size() > 1) {
        long total = 0;
        for (std::size_t i = 1; i < params.size(); ++i) {
          if (params[i] < 2) throw std::invalid_argument("record_preset En: decomposition parts must be >= 2");
          total += params[i];
        }
        if (total != n) throw std::invalid_argument("record_preset En: decomposition must sum to n");
        const long parts = static_cast<long>(params.size() - 1);
        r.handle_count_meta = 9 * total - 5 * parts - 4;
      }
      r.provenance.push_back("elliptic surface " + r.name);
      break;
    }
    case RecordPreset::CP2:
      r.name = "CP2";
      r.e = 3;
      r.sigma = 1;
      r.b2plus = 1;
      r.summands.cp2 = 1;
      r.provenance.push_back("CP2");
      break;
    case RecordPreset::CP2bar:
      r.name = "CP2bar";
      r.e = 3;
      r.sigma = -1;
      r.b2minus = 1;
      r.summands.cp2bar = 1;
      r.e_coordinates = 1;
      r.provenance.push_back("CP2bar");
      break;
    case RecordPreset::S2xS2:
      r.name = "S2xS2";
      r.e = 4;
      r.b2plus = 1;
      r.b2minus = 1;
      r.summands.s2xs2 = 1;
      r.provenance.push_back("S2xS2");
      break;
    case RecordPreset::nCP2_mCP2bar: {
      if (params.size() != 2 || params[0] < 0 || params[1] < 0)
        throw std::invalid_argument("record_preset nCP2_mCP2bar: need {n >= 0, m >= 0}");
      r.name = std::to_string(params[0]) + "CP2#" + std::to_string(params[1]) + "CP2bar";
      r.e = 2 + params[0] + params[1];
      r.sigma = params[0] - params[1];
      r.b2plus = params[0];
      r.b2minus = params[1];
      r.summands.cp2 = params[0];
      r.summands.cp2bar = params[1];
      r.e_coordinates = static_cast<std::size_t>(params[1]);
      r.sw = params[0] >= 2 ? SwState::zero() : SwState::unknown();
      r.provenance.push_back(r.name);
      break;
    }
  }
  return finalize(r);
}

ClosedRecord connected_sum(const ClosedRecord& lhs, const ClosedRecord& rhs) {
  if (!lhs.simply_connected || !rhs.simply_connected)
    throw std::invalid_argument("connected_sum: both summands must be simply connected");
  // Keep the negative-definite standard side on the right so blow-ups append
  // their exceptional classes after the existing ones.
  const bool swap = negative_standard(lhs) && !negative_standard(rhs);
  const ClosedRecord& a = swap ? rhs : lhs;
  const ClosedRecord& b = swap ? lhs : rhs;

  ClosedRecord r;
  r.name = lhs.name + "#" + rhs.name;
  r.e = a.e + b.e - 2;
  r.sigma = a.sigma + b.sigma;
  r.b2plus = a.b2plus + b.b2plus;
  r.b2minus = a.b2minus + b.b2minus;
  r.simply_connected = true;
  r.summands = {a.summands.cp2 + b.summands.cp2, a.summands.cp2bar + b.summands.cp2bar,
                a.summands.s2xs2 + b.summands.s2xs2};
  r.cusp = a.cusp || b.cusp;
  r.fiber_class = a.fiber_class || b.fiber_class;
  if (a.core_trivial) {
    r.core_trivial = b.core_trivial;
    r.core_parity = b.core_parity;
    r.elliptic = b.elliptic;
  } else if (b.core_trivial) {
    r.core_trivial = false;
    r.core_parity = a.core_parity;
    r.elliptic = a.elliptic;
  } else {
    r.core_trivial = false;
    r.core_parity = combine_parity(a.core_parity, b.core_parity);
    r.elliptic.reset();
  }
  r.e_coordinates = a.e_coordinates + b.e_coordinates;
  r.convention = a.convention;

  if (a.b2plus > 0 && b.b2plus > 0)
    r.sw = SwState::zero();
  else if (negative_standard(b))
    r.sw = blow_up(a.sw, b.summands.cp2bar);
  else
    r.sw = SwState::unknown();

  for (const auto& p : a.embedded) {
    EmbeddedPiece q = p;
    if (q.profile) q.profile = q.profile->with_extra_coordinates(b.e_coordinates);
    if (q.undo) q.undo = std::make_shared<const ClosedRecord>(connected_sum(*q.undo, b));
    r.embedded.push_back(q);
  }
  for (const auto& p : b.embedded) {
    EmbeddedPiece q = p;
    if (q.profile) {
      for (auto& row : q.profile->rows) row.eval_e.insert(row.eval_e.begin(), a.e_coordinates, 0);
    }
    if (q.undo) q.undo = std::make_shared<const ClosedRecord>(connected_sum(a, *q.undo));
    r.embedded.push_back(q);
  }

  r.provenance = lhs.provenance;
  r.provenance.push_back("connected sum with " + rhs.name);
  return finalize(r);
}

ClosedRecord blowup_record(const ClosedRecord& rec, long count) {
  if (count < 0) throw std::invalid_argument("blowup_record: count must be >= 0");
  ClosedRecord r = rec;
  const ClosedRecord cp2bar = record_preset(RecordPreset::CP2bar, {});
  for (long i = 0; i < count; ++i) r = connected_sum(r, cp2bar);
  if (count > 0) r.name = rec.name + "#" + (count > 1 ? std::to_string(count) : std::string()) + "CP2bar";
  return r;
}

ClosedRecord cork_twist_record(const ClosedRecord& rec, const std::string& piece_id,
                               std::optional<std::size_t> component) {
  return twist(rec, piece_id, component, false);
}

ClosedRecord plug_twist_record(const ClosedRecord& rec, const std::string& piece_id,
                               std::optional<std::size_t> component) {
  return twist(rec, piece_id, component, true);
}

ClosedRecord knot_surgery_record(const ClosedRecord& rec, const LaurentPoly& alexander) {
  if (!rec.cusp) throw std::invalid_argument("knot_surgery_record: record '" + rec.name + "' has no cusp marker");
  if (alexander.is_zero() || !alexander.is_symmetric() || alexander.evaluate(1) != 1)
    throw std::invalid_argument("knot_surgery_record: Alexander polynomial must be symmetric with value 1 at t = 1");

  ClosedRecord r = rec;
  for (auto& p : r.embedded)
    if (p.undo && p.undo->cusp) p.undo = std::make_shared<const ClosedRecord>(knot_surgery_record(*p.undo, alexander));

  const std::string poly = alexander.pretty();
  if (r.summands.s2xs2 > 0) {
    // The cusp misses the S2xS2 summand: knot surgery stabilizes, X_K = X.
    r.provenance.push_back("knot surgery with Delta = " + poly + " in the cusp; X_K is diffeomorphic to X");
    return finalize(r);
  }

  if (r.elliptic && !r.elliptic->modified) {
    r.elliptic->alexander = r.elliptic->alexander * alexander;
    if (r.sw.kind == SwState::Kind::known) {
      const long n = r.elliptic->n;
      BasicClassSet base = r.elliptic->alexander == LaurentPoly(1)
                               ? beta_elliptic(n, 0, r.convention)
                               : knot_surgery_beta(n, r.elliptic->alexander, r.convention);
      for (std::size_t i = 0; i < r.e_coordinates; ++i) base = blowup_formula(base);
      r.sw = SwState::known(base);
    }
  } else if (r.sw.kind == SwState::Kind::known) {
    if (r.convention == ParityConvention::paper)
      throw std::domain_error("knot_surgery_record: SW values after other surgeries need the standard convention");
    BasicClassSet out(r.sw.set.ambient(), r.sw.set.e_dims(), r.convention);
    std::map<BasicClassVector, Integer> acc;
    for (const auto& [k, v] : r.sw.set.classes())
      for (const auto& [j, c] : alexander.terms()) {
        BasicClassVector next = k;
        next.t += 2 * j;
        acc[next] += v * c;
      }
    for (const auto& [k, v] : acc)
      if (v != 0) out.insert(k, v);
    r.sw = SwState::known(out);
    if (r.elliptic) r.elliptic->alexander = r.elliptic->alexander * alexander;
  }
  if (!(alexander == LaurentPoly(1)) && r.elliptic) r.name = rec.name + "_K";
  r.provenance.push_back("knot surgery with Delta = " + poly + " in the cusp");
  return finalize(r);
}

ClosedRecord rational_blowdown_record(const ClosedRecord& rec, const std::string& piece_id) {
  const EmbeddedPiece& piece = rec.piece(piece_id);
  if (piece.kind != PieceKind::plumbing_c && piece.kind != PieceKind::plumbing_d)
    throw std::invalid_argument("rational_blowdown_record: " + piece_id + " is not a C_p or D_p plumbing");
  if (!piece.profile) throw std::invalid_argument("rational_blowdown_record: " + piece_id + " has no profile");
  const EmbeddingProfile& profile = *piece.profile;
  const long p = profile.p;
  const std::size_t consumed = consumed_coordinate(profile);

  // Handle-level bookkeeping: C_p and B_p share the boundary L(p^2, p-1)
  // (certified here by |H_1| = p^2), so every shift comes from the difference
  // of the two pieces.
  const HomologyReport c = homology(preset(PresetKind::Cp, {p}));
  const HomologyReport b = homology(preset(PresetKind::Bp, {p}));
  if (c.boundary_h1 != b.boundary_h1 || c.boundary_h1.torsion_order() != Integer(p) * p)
    throw std::logic_error("rational_blowdown_record: C_p and B_p boundaries disagree");
  auto plus = [](const HomologyReport& h) { return (static_cast<long>(h.intersection_form.rank) + h.intersection_form.signature) / 2; };
  auto minus = [](const HomologyReport& h) { return (static_cast<long>(h.intersection_form.rank) - h.intersection_form.signature) / 2; };

  ClosedRecord r = rec;
  r.e -= c.euler - b.euler;
  r.sigma -= c.intersection_form.signature - b.intersection_form.signature;
  r.b2plus -= plus(c) - plus(b);
  r.b2minus -= minus(c) - minus(b);
  if (rec.sw.kind == SwState::Kind::known) r.sw = SwState::known(rbd_transfer(rec.sw.set, profile, piece.id));
  r.e_coordinates = rec.e_coordinates - 1;
  if (r.summands.cp2bar > 0) r.summands.cp2bar -= 1;
  mark_core_modified(r);
  r.embedded = drop_host(rec.embedded, piece_id, consumed, 0);
  r.name = rec.name + "_(" + std::to_string(p) + ")";
  r.provenance.push_back("rational blowdown along C_" + std::to_string(p) + " in " + piece.label() + " [" + piece_id +
                         "]; simple connectivity of the result asserted");
  return finalize(r);
}

ClosedRecord elliptic_blowup_with_corks(long n, ParityConvention convention) {
  if (n < 2) throw std::invalid_argument("elliptic_blowup_with_corks: n must be >= 2");
  ClosedRecord r = blowup_record(record_preset(RecordPreset::En, {n}, convention), 1);
  EmbeddedPiece w1{"W1", PieceKind::cork, {1}, std::nullopt, {}, TwistRule::cusp_complement, "cusp-complement", nullptr};
  EmbeddedPiece w12{"W12", PieceKind::plug, {1, 2}, std::nullopt, {}, TwistRule::cusp_complement, "cusp-complement",
                    nullptr};
  r.embedded = {w1, w12};
  r.provenance.push_back("handle picture contains W_1 and W_{1,2} disjoint from the cusp");
  return finalize(r);
}

ClosedRecord elliptic_with_plumbings(const std::vector<long>& p_list, ParityConvention convention) {
  if (p_list.empty()) throw std::invalid_argument("elliptic_with_plumbings: need at least one p");
  for (long p : p_list)
    if (p < 2) throw std::invalid_argument("elliptic_with_plumbings: every p must be >= 2");
  const long total = std::accumulate(p_list.begin(), p_list.end(), 0L);
  const long count = static_cast<long>(p_list.size());
  ClosedRecord r = blowup_record(record_preset(RecordPreset::En, {total}, convention), count);
  r.name = "Y_0";
  r.handle_count_meta = 11 * total + count - 4;

  std::vector<std::string> hosts;
  std::vector<long> cork_params;
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    const long p = p_list[i];
    const std::string idx = std::to_string(i + 1);
    const std::string host = "D" + idx;
    hosts.push_back(host);
    cork_params.push_back(p - 1);
    r.embedded.push_back(EmbeddedPiece{host, PieceKind::plumbing_d, {p},
                                       EmbeddingProfile::canonical(p, p_list.size(), i), {}, TwistRule::none, "",
                                       nullptr});
    r.embedded.push_back(
        EmbeddedPiece{"W" + idx, PieceKind::cork, {p - 1}, std::nullopt, {host}, TwistRule::rbd_equivalent, "", nullptr});
    r.embedded.push_back(
        EmbeddedPiece{"P" + idx, PieceKind::plug, {1, p}, std::nullopt, {host}, TwistRule::rbd_equivalent, "", nullptr});
  }
  r.embedded.push_back(
      EmbeddedPiece{"Wfam", PieceKind::cork_family, cork_params, std::nullopt, hosts, TwistRule::rbd_equivalent, "", nullptr});
  r.embedded.push_back(
      EmbeddedPiece{"Pfam", PieceKind::plug_family, p_list, std::nullopt, hosts, TwistRule::rbd_equivalent, "", nullptr});
  r.provenance.push_back("handle picture contains disjoint D_p plumbings on E_1..E_r");
  return finalize(r);
}

namespace {

void diff(const ClosedRecord& a, const ClosedRecord& b, const std::string& tag, std::vector<std::string>& out) {
  auto note = [&](const std::string& field, const std::string& x, const std::string& y) {
    if (x != y) out.push_back(tag + ": " + field + " " + x + " vs " + y);
  };
  note("e", std::to_string(a.e), std::to_string(b.e));
  note("sigma", std::to_string(a.sigma), std::to_string(b.sigma));
  note("b2+", std::to_string(a.b2plus), std::to_string(b.b2plus));
  note("b2-", std::to_string(a.b2minus), std::to_string(b.b2minus));
  note("parity", to_string(a.parity), to_string(b.parity));
  auto count = [](const ClosedRecord& r) {
    auto c = r.sw.count();
    return c ? std::to_string(*c) : std::string("unknown");
  };
  note("sw count", count(a), count(b));
  if (!(a.sw == b.sw) && count(a) == count(b)) out.push_back(tag + ": basic classes differ");
  if (!(a == b) && out.empty()) out.push_back(tag + ": markers differ");
}

}  // namespace

ConsistencyReport two_path_consistency(const ClosedRecord& rec, const std::string& plumbing_id) {
  const EmbeddedPiece& host = rec.piece(plumbing_id);
  if (host.kind != PieceKind::plumbing_d) throw std::invalid_argument("two_path_consistency: " + plumbing_id + " is not a D_p");
  ConsistencyReport rep;
  rep.p = host.params.at(0);

  const EmbeddedPiece* cork = nullptr;
  const EmbeddedPiece* plug = nullptr;
  for (const auto& p : rec.embedded) {
    if (p.hosts != std::vector<std::string>{plumbing_id}) continue;
    if (p.kind == PieceKind::cork) cork = &p;
    if (p.kind == PieceKind::plug) plug = &p;
  }
  if (!cork || !plug) throw std::invalid_argument("two_path_consistency: " + plumbing_id + " lacks its W_{p-1} / W_{1,p}");

  rep.via_blowdown = blowup_record(rational_blowdown_record(rec, plumbing_id), rep.p - 1);
  rep.via_cork = cork_twist_record(rec, cork->id);
  rep.via_plug = plug_twist_record(rec, plug->id);
  rep.cork_agrees = rep.via_cork == rep.via_blowdown;
  rep.plug_agrees = rep.via_plug == rep.via_blowdown;
  if (!rep.cork_agrees) diff(rep.via_blowdown, rep.via_cork, "cork path", rep.mismatches);
  if (!rep.plug_agrees) diff(rep.via_blowdown, rep.via_plug, "plug path", rep.mismatches);
  return rep;
}

HomeoVerdict homeo_classify(const ClosedRecord& a, const ClosedRecord& b) {
  if (!a.simply_connected || !b.simply_connected)
    throw std::invalid_argument("homeo_classify: both records must be simply connected");
  HomeoVerdict v;
  v.same_rank = a.b2() == b.b2();
  v.same_signature = a.sigma == b.sigma;
  const bool parity_known = a.parity != RecordParity::unknown && b.parity != RecordParity::unknown;
  v.same_parity = parity_known && a.parity == b.parity;

  std::ostringstream why;
  why << "rank " << a.b2() << "/" << b.b2() << ", sigma " << a.sigma << "/" << b.sigma << ", parity "
      << to_string(a.parity) << "/" << to_string(b.parity);
  if (!v.same_rank || !v.same_signature || (parity_known && !v.same_parity)) {
    v.verdict = HomeoVerdictKind::not_homeomorphic;
    why << ": intersection forms differ";
  } else if (!parity_known) {
    v.verdict = HomeoVerdictKind::inconclusive;
    why << ": parity not determined";
  } else if (a.b2plus > 0 && a.b2minus > 0) {
    v.verdict = HomeoVerdictKind::homeomorphic;
    why << ": indefinite forms agree (Freedman)";
  } else if (a.b2() <= 1) {
    v.verdict = HomeoVerdictKind::homeomorphic;
    why << ": forms of rank <= 1 agree (Freedman)";
  } else {
    v.verdict = HomeoVerdictKind::inconclusive;
    why << ": definite form of rank > 1";
  }
  v.reason = why.str();
  return v;
}

std::optional<SwComparison> sw_compare_records(const ClosedRecord& a, const ClosedRecord& b) {
  if (a.sw.kind == SwState::Kind::unknown || b.sw.kind == SwState::Kind::unknown) return std::nullopt;
  const BasicClassSet empty;
  const BasicClassSet& x = a.sw.kind == SwState::Kind::known ? a.sw.set : empty;
  const BasicClassSet& y = b.sw.kind == SwState::Kind::known ? b.sw.set : empty;
  if (x.empty() && y.empty()) return SwComparison::equal;
  return sw_compare(x, y);
}

}  // namespace cork
