// handlebody.hpp
// Algebraic handle presentations of compact 4-manifolds: dotted circles
// (1-handles), framed 2-handles with linking numbers and algebraic run-over
// counts, and a 3-handle count. Diagrams are modeled at the level of the
// linking matrix; everything computed here depends only on that data.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cork/exactlin.hpp"

namespace cork {

// Finitely generated abelian group Z^free_rank + sum Z/torsion[i].
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each > 1, divisibility chain

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  Integer torsion_order() const;
  std::string to_string() const;
  bool operator==(const AbelianGroup&) const = default;

  // Cokernel of the map with matrix m (columns generate the relations).
  static AbelianGroup cokernel(const IntMatrix& m);
};

struct HandlePresentation {
  std::string name;
  std::size_t one_handles = 0;
  // Symmetric; diagonal entries are the framings.
  IntMatrix linking;
  // rows = 2-handles, cols = dotted circles.
  IntMatrix over;
  std::size_t three_handles = 0;
  // 2-handles whose attaching data is not modeled; they count toward the
  // Euler characteristic only.
  std::size_t opaque_two_handles = 0;
  // Dotted circle / 0-framed 2-handle pairs that the involution exchanges.
  std::vector<std::pair<std::size_t, std::size_t>> swap_pairs;
  // Label of a piece known to appear after the twist (D_p carries W_{p-1}).
  std::string contains_after_twist;

  std::size_t two_handles() const { return linking.rows(); }
  Integer framing(std::size_t i) const { return linking(i, i); }
  long euler() const;

  // Sort 2-handles by (framing, run-over row, sorted linking row). Ties are
  // broken by the least full matrix when at most 5040 orderings remain, so the
  // result is canonical for small presentations.
  HandlePresentation normalized() const;
  HandlePresentation permuted(const std::vector<std::size_t>& order) const;

  // Throws std::invalid_argument on inconsistent dimensions or asymmetry.
  void validate() const;

  bool operator==(const HandlePresentation& rhs) const;
};

struct HomologyReport {
  AbelianGroup h1;
  AbelianGroup h2;
  AbelianGroup boundary_h1;
  long euler = 0;
  FormInvariants intersection_form;
  IntMatrix form_matrix;  // intersection form on a basis of H_2

  bool point_like() const { return h1.is_trivial() && h2.is_trivial(); }
};

enum class PresetKind { Wn, Wfamily, Wmn, Cp, Dp, Bp };

const char* to_string(PresetKind k);

// Parameter conventions:
//   Wn      {n} or {n, framing}          n >= 1
//   Wfamily {k_1, ..., k_r}              r >= 1, k_i >= 1
//   Wmn     {m, n}                       m >= 1, n >= 2
//   Cp, Dp, Bp {p}                       p >= 2
HandlePresentation preset(PresetKind kind, const std::vector<long>& params);

// Slide 2-handle i over 2-handle j; sign = +1 for handle addition, -1 for
// subtraction.
HandlePresentation handle_slide(const HandlePresentation& pres, std::size_t i, std::size_t j, int sign);

// Add an isolated unknot with framing `sign` (default -1).
HandlePresentation blowup_pres(const HandlePresentation& pres, int sign = -1);
HandlePresentation blowdown_pres(const HandlePresentation& pres, std::size_t i);

// Exchange dotted circle `dot` with the 0-framed 2-handle `handle` that runs
// over it algebraically once. Applying it twice is the identity.
HandlePresentation dot_zero_swap(const HandlePresentation& pres, std::size_t dot, std::size_t handle);

// Swap every marked pair in `pres.swap_pairs` (the plug involution exchanges
// all dots of the piece at once).
HandlePresentation dot_zero_swap_all(const HandlePresentation& pres);

// Euler characteristic midway through a swap, after the first surgery turned
// the 1-handle into a 2-handle.
long swap_intermediate_euler(const HandlePresentation& pres);

HomologyReport homology(const HandlePresentation& pres);

HandlePresentation boundary_sum(const std::vector<HandlePresentation>& pieces);

struct LegendrianData {
  std::vector<Integer> tb;  // one Thurston-Bennequin number per 2-handle
};

// framing <= tb - 1 for each 2-handle.
std::vector<bool> eliashberg_check(const HandlePresentation& pres, const LegendrianData& leg);

}  // namespace cork
