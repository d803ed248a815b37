// swalgebra.hpp
// Formal Seiberg-Witten basic-class bookkeeping for the elliptic family:
// basic-class sets of E(n) # m(-CP2), the blow-up formula, the knot-surgery
// product rule, and the lift/transfer rules across a rational blowdown.
//
// A class is written k*PD(T) + sum_i eps_i E_i, where T is the fiber class
// (T^2 = 0, T.E_i = 0) and E_i are exceptional classes (E_i^2 = -1). Classes
// that went through a rational blowdown lose their consumed E coordinate and
// carry an opaque tag instead; the tag records the restriction data that
// distinguishes the class and its contribution to K^2.

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cork/exactlin.hpp"
#include "cork/knots.hpp"

namespace cork {

// Which parity of k the E(n) basic classes have. `paper` takes k even for
// every n; `standard` takes k = n (mod 2). They agree for even n.
enum class ParityConvention { paper, standard };

const char* to_string(ParityConvention c);
ParityConvention parse_convention(const std::string& s);

struct ClassTag {
  std::string label;  // which blowdown consumed which coordinate
  long restriction = 0;  // value of the lift on the distinguished sphere (+-p)
  long square = 0;       // contribution to K^2 of the replaced coordinate

  auto operator<=>(const ClassTag&) const = default;
};

struct BasicClassVector {
  long t = 0;              // coefficient of PD(T)
  std::vector<long> e;     // coefficients of E_1 .. E_m
  std::vector<ClassTag> tags;

  long square() const;
  bool has_characteristic_parity() const;
  auto operator<=>(const BasicClassVector&) const = default;
};

struct Ambient {
  long e = 0;      // Euler characteristic
  long sigma = 0;  // signature
  bool operator==(const Ambient&) const = default;
};

class BasicClassSet {
 public:
  using Classes = std::map<BasicClassVector, Integer>;

  BasicClassSet() = default;
  BasicClassSet(Ambient ambient, std::size_t e_dims, ParityConvention convention);

  const Ambient& ambient() const { return ambient_; }
  std::size_t e_dims() const { return e_dims_; }
  ParityConvention convention() const { return convention_; }
  const Classes& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }

  // Rejects duplicates, zero values and vectors of the wrong dimension.
  void insert(const BasicClassVector& k, const Integer& value);

  // Sorted (lexicographic on the vector) list used for serialization.
  std::vector<std::pair<BasicClassVector, Integer>> sorted() const;

  bool operator==(const BasicClassSet&) const = default;

 private:
  Ambient ambient_;
  std::size_t e_dims_ = 0;
  ParityConvention convention_ = ParityConvention::paper;
  Classes classes_;
};

// Pairings of a class against the spheres u_1 .. u_{p-1} of a C_p plumbing.
// Row j holds the pairing per unit of the T coefficient and per unit of each
// E coefficient; the last row is the distinguished (-p-2)-framed sphere.
struct EmbeddingProfile {
  struct Row {
    long eval_t = 0;
    std::vector<long> eval_e;
    bool operator==(const Row&) const = default;
  };
  long p = 2;
  std::vector<Row> rows;

  // Rows 1..p-2 vanish; the last row pairs with E_index at weight p.
  static EmbeddingProfile canonical(long p, std::size_t e_dims, std::size_t e_index);

  void validate(std::size_t e_dims) const;
  // Drop / append coordinates to follow blowdowns and blow-ups of the host.
  EmbeddingProfile without_coordinate(std::size_t index) const;
  EmbeddingProfile with_extra_coordinates(std::size_t count) const;

  bool operator==(const EmbeddingProfile&) const = default;
};

// Coefficients of (t - 1/t)^(n-2), n >= 2.
LaurentPoly elliptic_sw_polynomial(long n);

BasicClassSet beta_elliptic(long n, std::size_t m, ParityConvention convention);

// K -> {K + E_new, K - E_new}; e += 1, sigma -= 1.
BasicClassSet blowup_formula(const BasicClassSet& beta);

// SW polynomial Delta(t^2) * (t - 1/t)^(n-2); one class k*PD(T) per nonzero
// coefficient of t^k. Delta must be symmetric with Delta(1) = 1.
BasicClassSet knot_surgery_beta(long n, const LaurentPoly& alexander, ParityConvention convention);

// (K^2 - 2e - 3 sigma) / 4; throws std::domain_error if not integral.
long d_degree(const BasicClassVector& k, const Ambient& ambient);

// Evaluations K(u_j) for j = 1..p-1.
std::vector<long> profile_evaluations(const BasicClassVector& k, const EmbeddingProfile& profile);

struct LiftPartition {
  std::vector<BasicClassVector> pass;
  std::vector<BasicClassVector> fail;
};

// A class is a lift when K(u_j) = 0 for j <= p-2 and K(u_{p-1}) = +-p.
LiftPartition rbd_lift_filter(const BasicClassSet& beta, const EmbeddingProfile& profile);

// Carry every class across the blowdown. All classes must be lifts; the
// consumed E coordinate becomes a tag. e -= p-1, sigma += p-1.
BasicClassSet rbd_transfer(const BasicClassSet& beta, const EmbeddingProfile& profile,
                           const std::string& label = "C");

enum class SwComparison { equal, distinct_by_count, distinct_by_values };

const char* to_string(SwComparison c);

SwComparison sw_compare(const BasicClassSet& a, const BasicClassSet& b);

}  // namespace cork
