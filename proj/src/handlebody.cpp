// handlebody.cpp

#include "cork/handlebody.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cork {

namespace {
constexpr std::size_t kTieBudget = 5040;
}  // namespace

Integer AbelianGroup::torsion_order() const {
  Integer order = 1;
  for (const auto& t : torsion) order *= t;
  return order;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    first = false;
    os << "Z/" << t.get_str();
  }
  return os.str();
}

AbelianGroup AbelianGroup::cokernel(const IntMatrix& m) {
  SNFResult snf = smith_normal_form(m);
  AbelianGroup g;
  g.free_rank = m.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.diagonal[i] > 1) g.torsion.push_back(snf.diagonal[i]);
  return g;
}

long HandlePresentation::euler() const {
  return 1 - static_cast<long>(one_handles) + static_cast<long>(two_handles() + opaque_two_handles) -
         static_cast<long>(three_handles);
}

void HandlePresentation::validate() const {
  if (!linking.is_square()) throw std::invalid_argument("HandlePresentation: linking matrix must be square");
  if (!linking.is_symmetric()) throw std::invalid_argument("HandlePresentation: linking matrix must be symmetric");
  if (over.rows() != linking.rows() || over.cols() != one_handles)
    throw std::invalid_argument("HandlePresentation: run-over matrix must be (#2-handles) x (#dotted circles)");
  for (const auto& [dot, handle] : swap_pairs)
    if (dot >= one_handles || handle >= two_handles())
      throw std::invalid_argument("HandlePresentation: swap pair out of range");
}

bool HandlePresentation::operator==(const HandlePresentation& rhs) const {
  return one_handles == rhs.one_handles && linking == rhs.linking && over == rhs.over &&
         three_handles == rhs.three_handles && opaque_two_handles == rhs.opaque_two_handles &&
         swap_pairs == rhs.swap_pairs && contains_after_twist == rhs.contains_after_twist;
}

HandlePresentation HandlePresentation::permuted(const std::vector<std::size_t>& order) const {
  const std::size_t h = two_handles();
  if (order.size() != h) throw std::invalid_argument("permuted: order has wrong length");
  std::vector<std::size_t> inverse(h, h);
  for (std::size_t k = 0; k < h; ++k) {
    if (order[k] >= h || inverse[order[k]] != h) throw std::invalid_argument("permuted: not a permutation");
    inverse[order[k]] = k;
  }
  HandlePresentation out = *this;
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = 0; b < h; ++b) out.linking(a, b) = linking(order[a], order[b]);
    for (std::size_t d = 0; d < one_handles; ++d) out.over(a, d) = over(order[a], d);
  }
  for (auto& [dot, handle] : out.swap_pairs) handle = inverse[handle];
  return out;
}

HandlePresentation HandlePresentation::normalized() const {
  const std::size_t h = two_handles();
  using Key = std::tuple<Integer, std::vector<Integer>, std::vector<Integer>>;
  std::vector<Key> keys(h);
  for (std::size_t a = 0; a < h; ++a) {
    std::vector<Integer> row_over, row_link;
    for (std::size_t d = 0; d < one_handles; ++d) row_over.push_back(over(a, d));
    for (std::size_t b = 0; b < h; ++b)
      if (b != a) row_link.push_back(linking(a, b));
    std::sort(row_link.begin(), row_link.end());
    keys[a] = Key{linking(a, a), row_over, row_link};
  }
  std::vector<std::size_t> order(h);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });

  // Blocks of equal keys; reorderings inside them are tried exhaustively
  // while the total stays small, keeping the lexicographically least result.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t budget = 1;
  for (std::size_t a = 0; a < h;) {
    std::size_t b = a + 1;
    while (b < h && keys[order[b]] == keys[order[a]]) ++b;
    if (b - a > 1) blocks.emplace_back(a, b);
    for (std::size_t k = 2; k <= b - a && budget <= kTieBudget; ++k) budget *= k;
    a = b;
  }
  auto flat = [&](const std::vector<std::size_t>& ord) {
    HandlePresentation q = permuted(ord);
    std::sort(q.swap_pairs.begin(), q.swap_pairs.end());
    std::vector<Integer> v;
    for (std::size_t a = 0; a < h; ++a) {
      for (std::size_t b = 0; b < h; ++b) v.push_back(q.linking(a, b));
      for (std::size_t d = 0; d < one_handles; ++d) v.push_back(q.over(a, d));
    }
    for (const auto& [dot, handle] : q.swap_pairs) {
      v.push_back(static_cast<long>(dot));
      v.push_back(static_cast<long>(handle));
    }
    return std::make_pair(v, q);
  };
  auto best = flat(order);
  if (!blocks.empty() && budget <= kTieBudget) {
    std::vector<std::size_t> cur = order;
    for (const auto& [a, b] : blocks) std::sort(cur.begin() + a, cur.begin() + b);
    // Odometer over the per-block permutations.
    while (true) {
      auto cand = flat(cur);
      if (cand.first < best.first) best = std::move(cand);
      std::size_t i = 0;
      for (; i < blocks.size(); ++i) {
        auto [a, b] = blocks[i];
        if (std::next_permutation(cur.begin() + a, cur.begin() + b)) break;
      }
      if (i == blocks.size()) break;
    }
  }
  return best.second;
}

const char* to_string(PresetKind k) {
  switch (k) {
    case PresetKind::Wn: return "Wn";
    case PresetKind::Wfamily: return "Wfamily";
    case PresetKind::Wmn: return "Wmn";
    case PresetKind::Cp: return "Cp";
    case PresetKind::Dp: return "Dp";
    case PresetKind::Bp: return "Bp";
  }
  return "?";
}

namespace {

HandlePresentation cork_w(long n, long framing) {
  HandlePresentation w;
  w.name = "W_" + std::to_string(n);
  w.one_handles = 1;
  w.linking = IntMatrix{{framing}};
  w.over = IntMatrix{{1}};
  w.swap_pairs = {{0, 0}};
  return w;
}

HandlePresentation chain(long p) {
  HandlePresentation c;
  c.name = "C_" + std::to_string(p);
  const std::size_t len = static_cast<std::size_t>(p - 1);
  c.linking = IntMatrix(len, len);
  // Handle 0 is u_{p-1}, the (-p-2)-framed end of the chain.
  for (std::size_t i = 0; i < len; ++i) {
    c.linking(i, i) = i == 0 ? -(p + 2) : -2;
    if (i + 1 < len) c.linking(i, i + 1) = c.linking(i + 1, i) = 1;
  }
  c.over = IntMatrix(len, 0);
  return c;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("preset: " + what);
}

}  // namespace

HandlePresentation preset(PresetKind kind, const std::vector<long>& params) {
  HandlePresentation out;
  switch (kind) {
    case PresetKind::Wn: {
      require(params.size() == 1 || params.size() == 2, "Wn takes {n} or {n, framing}");
      require(params[0] >= 1, "Wn needs n >= 1");
      out = cork_w(params[0], params.size() == 2 ? params[1] : 0);
      HomologyReport hr = homology(out);
      if (!hr.point_like() || !hr.boundary_h1.is_trivial()) throw std::logic_error("preset Wn is not contractible");
      break;
    }
    case PresetKind::Wfamily: {
      require(!params.empty(), "Wfamily needs at least one k");
      std::vector<HandlePresentation> parts;
      std::string name = "W(";
      for (std::size_t i = 0; i < params.size(); ++i) {
        require(params[i] >= 1, "Wfamily needs k_i >= 1");
        parts.push_back(cork_w(params[i], 0));
        name += (i ? "," : "") + std::to_string(params[i]);
      }
      out = boundary_sum(parts);
      out.name = name + ")";
      if (!homology(out).point_like()) throw std::logic_error("preset Wfamily is not contractible");
      break;
    }
    case PresetKind::Wmn: {
      require(params.size() == 2, "Wmn takes {m, n}");
      require(params[0] >= 1 && params[1] >= 2, "Wmn needs m >= 1, n >= 2");
      out.name = "W_{" + std::to_string(params[0]) + "," + std::to_string(params[1]) + "}";
      out.one_handles = 1;
      // Handle 0 is the 0-framed partner of the dot; handle 1 carries H_2.
      out.linking = IntMatrix{{0, params[0]}, {params[0], -params[1]}};
      out.over = IntMatrix{{1}, {0}};
      out.swap_pairs = {{0, 0}};
      HomologyReport hr = homology(out);
      if (!hr.h1.is_trivial() || hr.h2.free_rank != 1 || !hr.h2.torsion.empty())
        throw std::logic_error("preset Wmn must have H_1 = 0, H_2 = Z");
      break;
    }
    case PresetKind::Cp:
    case PresetKind::Dp: {
      require(params.size() == 1 && params[0] >= 2, "Cp/Dp need p >= 2");
      const long p = params[0];
      out = chain(p);
      if (abs(determinant(out.linking)) != Integer(p) * p) throw std::logic_error("preset Cp: |det| != p^2");
      if (kind == PresetKind::Dp) {
        out.name = "D_" + std::to_string(p);
        out.opaque_two_handles = 2;
        out.contains_after_twist = "W_" + std::to_string(p - 1);
      }
      break;
    }
    case PresetKind::Bp: {
      require(params.size() == 1 && params[0] >= 2, "Bp needs p >= 2");
      const long p = params[0];
      out.name = "B_" + std::to_string(p);
      out.one_handles = 1;
      out.linking = IntMatrix{{p - 1}};
      out.over = IntMatrix{{p}};
      HomologyReport hr = homology(out);
      if (hr.h1.torsion != std::vector<Integer>{Integer(p)}) throw std::logic_error("preset Bp: H_1 != Z/p");
      break;
    }
  }
  out.validate();
  return out;
}

HandlePresentation handle_slide(const HandlePresentation& pres, std::size_t i, std::size_t j, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("handle_slide: sign must be +-1");
  if (i >= pres.two_handles() || j >= pres.two_handles())
    throw std::invalid_argument("handle_slide: 2-handles only (sliding over a dotted circle is not allowed)");
  if (i == j) throw std::invalid_argument("handle_slide: cannot slide a handle over itself");
  HandlePresentation out = pres;
  out.linking.add_row_multiple(i, j, sign);
  out.linking.add_col_multiple(i, j, sign);
  out.over.add_row_multiple(i, j, sign);
  return out;
}

HandlePresentation blowup_pres(const HandlePresentation& pres, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("blowup_pres: framing must be +-1");
  HandlePresentation out = pres;
  out.linking = pres.linking.direct_sum(IntMatrix{{sign}});
  out.over = pres.over.direct_sum(IntMatrix(1, 0));
  return out;
}

HandlePresentation blowdown_pres(const HandlePresentation& pres, std::size_t i) {
  if (i >= pres.two_handles()) throw std::invalid_argument("blowdown_pres: no such 2-handle");
  if (abs(pres.framing(i)) != 1) throw std::invalid_argument("blowdown_pres: framing must be +-1");
  for (std::size_t j = 0; j < pres.two_handles(); ++j)
    if (j != i && pres.linking(i, j) != 0) throw std::invalid_argument("blowdown_pres: handle is linked");
  for (std::size_t d = 0; d < pres.one_handles; ++d)
    if (pres.over(i, d) != 0) throw std::invalid_argument("blowdown_pres: handle runs over a dotted circle");
  for (const auto& sp : pres.swap_pairs)
    if (sp.second == i) throw std::invalid_argument("blowdown_pres: handle belongs to a swap pair");

  const std::size_t h = pres.two_handles();
  HandlePresentation out = pres;
  out.linking = IntMatrix(h - 1, h - 1);
  out.over = IntMatrix(h - 1, pres.one_handles);
  auto src = [&](std::size_t k) { return k < i ? k : k + 1; };
  for (std::size_t a = 0; a + 1 < h; ++a) {
    for (std::size_t b = 0; b + 1 < h; ++b) out.linking(a, b) = pres.linking(src(a), src(b));
    for (std::size_t d = 0; d < pres.one_handles; ++d) out.over(a, d) = pres.over(src(a), d);
  }
  for (auto& sp : out.swap_pairs)
    if (sp.second > i) --sp.second;
  return out;
}

HandlePresentation dot_zero_swap(const HandlePresentation& pres, std::size_t dot, std::size_t handle) {
  if (dot >= pres.one_handles || handle >= pres.two_handles())
    throw std::invalid_argument("dot_zero_swap: index out of range");
  if (pres.framing(handle) != 0) throw std::invalid_argument("dot_zero_swap: 2-handle must be 0-framed");
  if (abs(pres.over(handle, dot)) != 1)
    throw std::invalid_argument("dot_zero_swap: 2-handle must run over the dotted circle algebraically once");
  for (std::size_t d = 0; d < pres.one_handles; ++d)
    if (d != dot && pres.over(handle, d) != 0)
      throw std::invalid_argument("dot_zero_swap: 2-handle also runs over another dotted circle");

  // The dot becomes a 0-framed 2-handle in slot `handle`; the old 2-handle
  // becomes the dotted circle in slot `dot`. Linking with the new 2-handle is
  // the old run-over count, run-over on the new dot is the old linking.
  HandlePresentation out = pres;
  for (std::size_t j = 0; j < pres.two_handles(); ++j) {
    if (j == handle) continue;
    out.over(j, dot) = pres.linking(j, handle);
    out.linking(j, handle) = pres.over(j, dot);
    out.linking(handle, j) = pres.over(j, dot);
  }
  return out;
}

HandlePresentation dot_zero_swap_all(const HandlePresentation& pres) {
  if (pres.swap_pairs.empty()) throw std::invalid_argument("dot_zero_swap_all: no marked swap pairs");
  HandlePresentation out = pres;
  for (const auto& [dot, handle] : pres.swap_pairs) out = dot_zero_swap(out, dot, handle);
  return out;
}

long swap_intermediate_euler(const HandlePresentation& pres) { return pres.euler() + 2; }

HomologyReport homology(const HandlePresentation& pres) {
  pres.validate();
  const std::size_t d = pres.one_handles;
  const std::size_t h = pres.two_handles();
  const IntMatrix boundary2 = pres.over.transpose();  // d x h

  HomologyReport r;
  r.h1 = AbelianGroup::cokernel(boundary2);
  IntMatrix kernel = kernel_basis(boundary2);
  r.h2.free_rank = kernel.cols();

  IntMatrix extended(d + h, d + h);
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t k = 0; k < d; ++k) {
      extended(k, d + a) = pres.over(a, k);
      extended(d + a, k) = pres.over(a, k);
    }
    for (std::size_t b = 0; b < h; ++b) extended(d + a, d + b) = pres.linking(a, b);
  }
  r.boundary_h1 = AbelianGroup::cokernel(extended);
  r.euler = pres.euler();
  r.form_matrix = kernel.transpose() * pres.linking * kernel;
  r.intersection_form = form_invariants(r.form_matrix);
  return r;
}

HandlePresentation boundary_sum(const std::vector<HandlePresentation>& pieces) {
  HandlePresentation out;
  std::string name;
  for (const auto& piece : pieces) {
    piece.validate();
    const std::size_t dot_offset = out.one_handles;
    const std::size_t handle_offset = out.two_handles();
    out.linking = out.linking.direct_sum(piece.linking);
    IntMatrix over(out.linking.rows(), out.one_handles + piece.one_handles);
    for (std::size_t a = 0; a < out.over.rows(); ++a)
      for (std::size_t k = 0; k < out.over.cols(); ++k) over(a, k) = out.over(a, k);
    for (std::size_t a = 0; a < piece.over.rows(); ++a)
      for (std::size_t k = 0; k < piece.over.cols(); ++k) over(handle_offset + a, dot_offset + k) = piece.over(a, k);
    out.over = std::move(over);
    out.one_handles += piece.one_handles;
    out.three_handles += piece.three_handles;
    out.opaque_two_handles += piece.opaque_two_handles;
    for (const auto& [dot, handle] : piece.swap_pairs) out.swap_pairs.emplace_back(dot + dot_offset, handle + handle_offset);
    name += (name.empty() ? "" : ",") + piece.name;
  }
  out.name = pieces.size() == 1 ? pieces.front().name : "bsum(" + name + ")";
  if (pieces.size() == 1) out.contains_after_twist = pieces.front().contains_after_twist;
  return out;
}

std::vector<bool> eliashberg_check(const HandlePresentation& pres, const LegendrianData& leg) {
  if (leg.tb.size() != pres.two_handles())
    throw std::invalid_argument("eliashberg_check: need one Thurston-Bennequin number per 2-handle");
  std::vector<bool> ok(pres.two_handles());
  for (std::size_t i = 0; i < ok.size(); ++i) ok[i] = pres.framing(i) <= leg.tb[i] - 1;
  return ok;
}

}  // namespace cork
