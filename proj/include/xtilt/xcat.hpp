#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xtilt/linalg.hpp"
#include "xtilt/report.hpp"
#include "xtilt/rootsys.hpp"

namespace xtilt {

/// Index (mu, alpha, n) of E_{mu,alpha,n}: M_mu -> M_{mu+n alpha} and
/// F_{mu,alpha,n}: M_{mu+n alpha} -> M_mu.
struct OpKey {
  Weight mu;
  int alpha = 0;
  int n = 0;
  friend bool operator<(const OpKey& a, const OpKey& b) {
    if (a.mu != b.mu) return a.mu < b.mu;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.n < b.n;
  }
  friend bool operator==(const OpKey& a, const OpKey& b) {
    return a.mu == b.mu && a.alpha == b.alpha && a.n == b.n;
  }
};

/// Graded free module with divided-power operators on a closed weight set I.
/// I is the set of stored weights (the region, rank 0 allowed) together with
/// the implicitly zero weights: those below no top weight, and, when the hull
/// flag is set, those whose dominant conjugate lies below no top weight.
/// Operators are stored only between weights of nonzero rank.
class XObject {
 public:
  XObject() = default;
  XObject(const GroundRing& ring, const RootSystem& rs);

  const GroundRing& ring() const { return ring_; }
  const RootSystem& rs() const { return rs_; }

  /// Stored weights, higher weights first.
  const std::vector<Weight>& region() const { return region_; }
  bool in_region(const Weight& mu) const { return ranks_.count(mu) > 0; }
  std::size_t rank(const Weight& mu) const;
  const std::vector<Weight>& tops() const { return tops_; }
  bool hull() const { return hull_; }
  void set_support(std::vector<Weight> tops, bool hull);

  bool implicitly_zero(const Weight& nu) const;
  /// Weight belongs to the closed set I.
  bool in_closed_set(const Weight& nu) const { return in_region(nu) || implicitly_zero(nu); }

  /// Adds a weight space (rank may be 0); throws if present.
  void add_weight(const Weight& mu, std::size_t rank);
  void set_e(const Weight& mu, int alpha, int n, Mat m);
  void set_f(const Weight& mu, int alpha, int n, Mat m);
  void remove_weight(const Weight& mu);

  /// E_{mu,alpha,n}; identity for n = 0, zero matrix when not stored.
  Mat E(const Weight& mu, int alpha, int n) const;
  /// F_{mu,alpha,n}; identity for n = 0, zero matrix when not stored.
  Mat F(const Weight& mu, int alpha, int n) const;
  const std::map<OpKey, Mat>& e_ops() const { return e_; }
  const std::map<OpKey, Mat>& f_ops() const { return f_; }

  /// Largest n worth scanning upward from mu along alpha.
  int string_bound(const Weight& mu, int alpha) const;

  friend bool operator==(const XObject& a, const XObject& b);

 private:
  GroundRing ring_;
  RootSystem rs_;
  std::vector<Weight> region_;
  std::map<Weight, std::size_t> ranks_;
  std::vector<Weight> tops_;
  bool hull_ = false;
  std::map<OpKey, Mat> e_, f_;
};

struct DeltaBlock {
  int alpha = 0;
  int n = 0;
  std::size_t offset = 0;
  std::size_t rank = 0;
  Weight weight;  // mu + n alpha
};

/// Decomposition of M_{delta mu} = sum over (alpha, n>0) of M_{mu + n alpha}.
struct DeltaIndex {
  std::vector<DeltaBlock> blocks;  // alpha ascending, then n ascending; nonzero ranks only
  std::size_t total = 0;
  const DeltaBlock* find(int alpha, int n) const;
};

DeltaIndex delta_index(const XObject& m, const Weight& mu);

struct DeltaSpace {
  DeltaIndex index;
  Mat E;  // total x rank(mu)
  Mat F;  // rank(mu) x total
};
DeltaSpace delta_space(const XObject& m, const Weight& mu);

struct HatMatrices {
  Mat Ehat;  // total x total, block ((alpha,m),(beta,n)) : M_{mu+n beta} -> M_{mu+m alpha}
  Mat Fhat;  // identity
  DeltaIndex index;
};
HatMatrices hat_matrices(const XObject& m, const Weight& mu);

/// Data computed when adding the weight mu.
struct ExtensionStep {
  DeltaIndex index;
  Mat Ehat;
  Mat Etilde;                  // minimal E_mu
  Mat Ftilde;                  // minimal F_mu
  std::vector<std::size_t> basis_columns;  // J with Ftilde[:, J] = 1
  std::size_t minimal_rank = 0;
  std::vector<int> exponents;  // torsion invariants of the saturation of im Etilde
  Mat gamma;                   // lifts of the torsion generators (maximal only)
  Mat E, F;                    // final E_mu, F_mu
  std::size_t rank() const { return E.cols(); }
};

/// Throws std::invalid_argument unless mu is a new weight whose upper neighbours all lie in I.
void check_extendable(const XObject& m, const Weight& mu);
ExtensionStep minimal_step(const XObject& m, const Weight& mu);
ExtensionStep maximal_step(const XObject& m, const Weight& mu);
/// Adds mu with the operators of the step.
void apply_step(XObject& m, const Weight& mu, const ExtensionStep& step);

XObject minimal_extend(const XObject& m, const Weight& mu);
XObject maximal_extend(const XObject& m, const Weight& mu);

/// Rank-1 object at lambda with no operators.
XObject seed_object(const RootSystem& rs, const GroundRing& ring, const Weight& lambda, bool hull);

struct BuildOptions {
  bool prune = true;
  std::optional<long> height_bound;          // required when prune is false
  bool verify_frontier = false;
  std::optional<std::vector<Weight>> explicit_weights;  // finite closed set below lambda
};

struct FrontierResult {
  Weight weight;
  std::size_t rank = 0;
};

XObject build_smin(const RootSystem& rs, const GroundRing& ring, const Weight& lambda,
                   const BuildOptions& opt = {});
XObject build_smax(const RootSystem& rs, const GroundRing& ring, const Weight& lambda,
                   const BuildOptions& opt = {});

/// Weights one simple root below the region, outside it, but below a top.
std::vector<Weight> frontier(const XObject& m);
/// Extension ranks at the frontier (should all be 0 for hull-pruned builds).
std::vector<FrontierResult> frontier_ranks(const XObject& m, bool maximal);

/// Weights of the build: lambda first, then the weights to extend in order.
std::vector<Weight> build_weights(const RootSystem& rs, const Weight& lambda, const BuildOptions& opt);

XObject restrict_to(const XObject& m, const std::vector<Weight>& subset);
XObject direct_sum(const XObject& a, const XObject& b);

Report check_axioms(const XObject& m);
Report verify_relations(const XObject& m);

/// rank of M_mu / im F_mu; throws std::domain_error if a quotient has torsion.
Character weyl_multiplicities(const XObject& m);
/// mu -> rank M_mu (nonzero ranks only).
Character character(const XObject& m);

/// M_{<mu>} = M_{mu} at every weight (empty relative invariants, equal ranks).
Report minimality_certificate(const XObject& m);
/// M_{<mu>} is saturated in M_{delta mu} at every weight.
Report maximality_certificate(const XObject& m);

/// Object over the fraction field.
XObject base_change_to_fraction_field(const XObject& m);
RingElem to_fraction_field(const RingElem& x);

struct ResidueObject {
  std::map<Weight, std::size_t> ranks;
  std::map<OpKey, ResMat> e, f;
};
ResidueObject base_change_to_residue(const XObject& m);

using HomMap = std::map<Weight, Mat>;

struct HomStep {
  bool ok = false;
  Mat f;
  std::string witness;
};

/// Extends f (given on every weight strictly above mu) to mu.
HomStep extend_hom_step(const HomMap& f, const XObject& m, const XObject& n, const Weight& mu);
/// Extends a morphism given on some top part to all weights of m; nullopt and witness on obstruction.
std::optional<HomMap> extend_hom(const HomMap& seed, const XObject& m, const XObject& n,
                                 std::string* witness = nullptr);
/// Checks all commuting squares.
Report check_morphism(const HomMap& f, const XObject& m, const XObject& n);
bool is_isomorphism(const HomMap& f, const XObject& m, const XObject& n);

}  // namespace xtilt
