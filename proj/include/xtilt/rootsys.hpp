#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xtilt/poly.hpp"

namespace xtilt {

/// Integer weight in fundamental-weight coordinates: coordinate i is <mu, alpha_i^vee>.
using Weight = std::vector<int>;
/// Weight -> multiplicity (or rank).
using Character = std::map<Weight, long>;

std::string weight_to_string(const Weight& w);
/// Comma separated integers, e.g. "1,-2".
Weight parse_weight(const std::string& text);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(int n, const Weight& a);

/// Finite-type Cartan datum. A(i,j) = <alpha_i, alpha_j^vee>, so row i is the
/// simple root alpha_i in fundamental coordinates. The symmetrizer satisfies
/// A(i,j) d_j = A(j,i) d_i and d_i = (alpha_i, alpha_i)/2 with short roots d = 1.
class RootSystem {
 public:
  RootSystem() = default;
  /// "A<n>", "B<n>", "C<n>", "D<n>", "E6", "E7", "E8", "F4", "G2".
  static RootSystem from_label(const std::string& label);
  /// Validates a symmetrizable Cartan matrix of finite type; throws std::invalid_argument.
  static RootSystem from_cartan(const std::vector<std::vector<int>>& a, const std::string& label = "");

  const std::string& label() const { return label_; }
  std::size_t rank() const { return a_.size(); }
  const std::vector<std::vector<int>>& cartan() const { return a_; }
  int a(std::size_t i, std::size_t j) const { return a_[i][j]; }
  int d(std::size_t i) const { return d_[i]; }
  const std::vector<int>& symmetrizers() const { return d_; }
  const Weight& simple_root(std::size_t i) const { return a_[i]; }
  int pairing(const Weight& mu, std::size_t i) const { return mu[i]; }
  void check_weight(const Weight& w) const;

  /// Coordinates of w in the basis of simple roots.
  std::vector<Rational> root_coords(const Weight& w) const;
  /// Simple-root coefficients of lambda - mu if they are all nonnegative integers.
  std::optional<std::vector<long>> difference_coeffs(const Weight& mu, const Weight& lambda) const;
  /// mu <= lambda in the dominance order.
  bool leq(const Weight& mu, const Weight& lambda) const { return difference_coeffs(mu, lambda).has_value(); }
  Rational height(const Weight& w) const;
  /// Symmetric form with (alpha_i, alpha_j) = d_j A(i,j).
  Rational inner(const Weight& x, const Weight& y) const;

  bool is_dominant(const Weight& w) const;
  Weight reflect(const Weight& w, std::size_t i) const;
  Weight dominant_conjugate(const Weight& w) const;
  Weight rho() const { return Weight(rank(), 1); }
  Weight zero_weight() const { return Weight(rank(), 0); }
  /// Positive roots in fundamental coordinates, by height.
  const std::vector<Weight>& positive_roots() const { return pos_roots_; }

  /// Strict total order compatible with dominance: higher weights first.
  bool processing_before(const Weight& x, const Weight& y) const;

  friend bool operator==(const RootSystem& x, const RootSystem& y) { return x.a_ == y.a_; }
  friend bool operator!=(const RootSystem& x, const RootSystem& y) { return !(x == y); }

 private:
  void compute_positive_roots();
  std::string label_;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  std::vector<std::vector<Rational>> inv_;  // inverse Cartan matrix
  std::vector<Weight> pos_roots_;
};

/// All mu <= lambda, pruned to dominant_conjugate(mu) <= lambda when prune is set,
/// otherwise cut off at height(lambda - mu) <= height_bound. Ordered by increasing
/// height(lambda - mu), ties lexicographic on coordinates.
std::vector<Weight> weights_below(const RootSystem& rs, const Weight& lambda, bool prune,
                                  std::optional<long> height_bound = std::nullopt);

/// Characteristic-zero irreducible character of highest weight lambda (Freudenthal).
Character weyl_character(const RootSystem& rs, const Weight& lambda);
/// Weyl dimension formula.
Integer weyl_dimension(const RootSystem& rs, const Weight& lambda);

}  // namespace xtilt
