#pragma once

#include <map>
#include <utility>

#include "xtilt/xcat.hpp"

namespace xtilt {

/// Symmetric contravariant form, one Gram matrix per weight space.
/// Distinct weight spaces are orthogonal.
struct GradedForm {
  std::map<Weight, Mat> gram;

  /// Gram at mu, or the empty rank x rank matrix when not stored.
  Mat at(const XObject& m, const Weight& mu) const;
  friend bool operator==(const GradedForm& a, const GradedForm& b) { return a.gram == b.gram; }
};

/// b_lambda = (1) on the rank-1 seed.
GradedForm seed_form(const XObject& seed, const Weight& lambda);

/// Gram of b on M_{delta mu}: block diagonal over the upper neighbours.
Mat delta_gram(const XObject& m, const GradedForm& b, const Weight& mu);

/// Unit determinant over a DVR, nonzero determinant over a field.
bool is_nondegenerate(const Mat& gram);
/// Dimension of the radical of the reduction (over a field: of the form itself).
std::size_t radical_rank(const Mat& gram);

/// Shapes, symmetry, contravariance Gram_{mu+n alpha} E = F^T Gram_mu for every
/// stored operator, and non-degeneracy per weight.
Report check_form(const XObject& m, const GradedForm& b);

/// Form on the minimal extension of mprime at mu, restricting to bprime.
GradedForm extend_form_minimal(const XObject& mprime, const GradedForm& bprime, const Weight& mu);

/// Extension at mu carrying a non-degenerate form; throws std::domain_error
/// if bprime is degenerate on M_{delta mu}.
std::pair<XObject, GradedForm> complete_nondegenerate(const XObject& mprime, const GradedForm& bprime,
                                                      const Weight& mu);

/// S_max(lambda) for dominant lambda together with a non-degenerate form, b_lambda = (1).
std::pair<XObject, GradedForm> build_smax_with_form(const RootSystem& rs, const GroundRing& ring,
                                                    const Weight& lambda);

}  // namespace xtilt
