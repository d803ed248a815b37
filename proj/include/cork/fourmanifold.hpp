// fourmanifold.hpp
// Closed simply connected 4-manifolds as records of exact invariants plus the
// markers the surgery rules need: cusp / fiber class, connected-summand
// bookkeeping, embedded pieces (corks, plugs, plumbings) and the
// Seiberg-Witten state.
//
// Records identify manifolds only up to what they store. Two records are
// reported diffeomorphic only through an explicit rewrite rule:
//   * nonspin Y # CP2 # -CP2  ==  Y # S2xS2       (stabilization)
//   * X_K == X when the cusp misses an S2xS2 summand (knot surgery stabilizes)
//   * regluing a piece twice by its involution gives back the original.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cork/handlebody.hpp"
#include "cork/knots.hpp"
#include "cork/swalgebra.hpp"

namespace cork {

enum class RecordParity { even, odd, unknown };

const char* to_string(RecordParity p);

struct SwState {
  enum class Kind { known, zero, unknown };
  Kind kind = Kind::unknown;
  BasicClassSet set;  // only meaningful when kind == known

  static SwState zero() { return {Kind::zero, {}}; }
  static SwState unknown() { return {Kind::unknown, {}}; }
  static SwState known(BasicClassSet s) { return {Kind::known, std::move(s)}; }

  // Number of basic classes; ZERO has none, UNKNOWN has no count.
  std::optional<std::size_t> count() const;
  bool operator==(const SwState& rhs) const;
};

const char* to_string(SwState::Kind k);

struct ClosedRecord;

enum class PieceKind { cork, cork_family, plug, plug_family, plumbing_c, plumbing_d };
enum class TwistRule {
  none,             // plumbings: blown down, never twisted
  cusp_complement,  // W_1 / W_{1,2} next to the cusp: twist splits off S2xS2
  rbd_equivalent,   // W_{p-1} / W_{1,p} inside D_p: twist = blowdown of C_p + (p-1) blow-ups
  restore,          // a reglued piece: twisting again restores `undo`
};

const char* to_string(PieceKind k);
const char* to_string(TwistRule r);

struct EmbeddedPiece {
  std::string id;
  PieceKind kind = PieceKind::cork;
  std::vector<long> params;  // W_n {n}; W(k..) {k..}; W_{m,n} {m,n}; plug family {p..}; C_p/D_p {p}
  std::optional<EmbeddingProfile> profile;  // plumbings only
  std::vector<std::string> hosts;           // enclosing D_p ids (one per component for families)
  TwistRule rule = TwistRule::none;
  std::string group;                        // pieces whose twists coincide
  std::shared_ptr<const ClosedRecord> undo; // restore rule only

  std::string label() const;  // e.g. "W_1", "W(1,3)", "W_{1,2}", "D_4"
};

struct Summands {
  long cp2 = 0;
  long cp2bar = 0;
  long s2xs2 = 0;
  bool operator==(const Summands&) const = default;
};

// E(n) knot-surgered along `alexander`; `modified` once a cut-and-paste other
// than blow-ups or knot surgery has been applied.
struct EllipticCore {
  long n = 0;
  LaurentPoly alexander = LaurentPoly(1);
  bool modified = false;
  bool operator==(const EllipticCore&) const = default;
};

struct ClosedRecord {
  std::string name;
  long e = 2;
  long sigma = 0;
  long b2plus = 0;
  long b2minus = 0;
  RecordParity parity = RecordParity::even;
  bool simply_connected = true;  // asserted, never computed
  bool spin = true;

  // Markers.
  bool cusp = false;
  bool fiber_class = false;
  Summands summands;
  bool core_trivial = true;  // core is S^4 (all topology lives in summands)
  RecordParity core_parity = RecordParity::even;
  std::optional<EllipticCore> elliptic;
  std::size_t e_coordinates = 0;  // exceptional classes tracked by sw / profiles
  std::vector<EmbeddedPiece> embedded;

  SwState sw;
  ParityConvention convention = ParityConvention::paper;
  std::optional<long> handle_count_meta;
  std::vector<std::string> provenance;

  long b2() const { return b2plus + b2minus; }
  bool has_piece(const std::string& id) const;
  const EmbeddedPiece& piece(const std::string& id) const;

  // Throws std::logic_error naming the first violated invariant.
  void validate() const;

  // Invariants, markers (except embedded pieces) and SW state.
  bool operator==(const ClosedRecord& rhs) const;
};

// Also compares embedded pieces, recursively through `undo`.
bool structurally_identical(const ClosedRecord& a, const ClosedRecord& b);

enum class RecordPreset { En, CP2, CP2bar, S2xS2, nCP2_mCP2bar };

// En {n} or {n, p_1, ..., p_r} with sum p_i = n (records the handle count of
// that decomposition); nCP2_mCP2bar {a, b}.
ClosedRecord record_preset(RecordPreset kind, const std::vector<long>& params,
                           ParityConvention convention = ParityConvention::paper);

ClosedRecord connected_sum(const ClosedRecord& a, const ClosedRecord& b);
ClosedRecord blowup_record(const ClosedRecord& rec, long count = 1);

ClosedRecord cork_twist_record(const ClosedRecord& rec, const std::string& piece_id,
                               std::optional<std::size_t> component = std::nullopt);
ClosedRecord plug_twist_record(const ClosedRecord& rec, const std::string& piece_id,
                               std::optional<std::size_t> component = std::nullopt);

ClosedRecord knot_surgery_record(const ClosedRecord& rec, const LaurentPoly& alexander);

// Blow down the C_p inside the named C_p / D_p piece.
ClosedRecord rational_blowdown_record(const ClosedRecord& rec, const std::string& piece_id);

// E(n) # -CP2 with the W_1 cork and W_{1,2} plug next to the cusp.
ClosedRecord elliptic_blowup_with_corks(long n, ParityConvention convention);

// E(p_1 + ... + p_r) # r(-CP2) with disjoint D_{p_i} (profiles on E_i), the
// W_{p_i - 1} cork and W_{1,p_i} plug in each, and the boundary sums
// W(p_1 - 1, ...) and W_{1,p_1} natural ... as fixed pieces.
ClosedRecord elliptic_with_plumbings(const std::vector<long>& p_list, ParityConvention convention);

struct ConsistencyReport {
  long p = 0;
  ClosedRecord via_blowdown;  // rational blowdown, then p-1 blow-ups
  ClosedRecord via_cork;      // twist W_{p-1} inside D_p
  ClosedRecord via_plug;      // twist W_{1,p} inside D_p
  bool cork_agrees = false;
  bool plug_agrees = false;
  std::vector<std::string> mismatches;
  bool ok() const { return cork_agrees && plug_agrees; }
};

ConsistencyReport two_path_consistency(const ClosedRecord& rec, const std::string& plumbing_id);

enum class HomeoVerdictKind { homeomorphic, not_homeomorphic, inconclusive };

const char* to_string(HomeoVerdictKind v);

struct HomeoVerdict {
  bool same_rank = false;
  bool same_signature = false;
  bool same_parity = false;
  HomeoVerdictKind verdict = HomeoVerdictKind::inconclusive;
  std::string reason;
};

HomeoVerdict homeo_classify(const ClosedRecord& a, const ClosedRecord& b);

// Compare SW states; nullopt when either side is UNKNOWN.
std::optional<SwComparison> sw_compare_records(const ClosedRecord& a, const ClosedRecord& b);

}  // namespace cork
