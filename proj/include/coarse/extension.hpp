#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "coarse/group.hpp"

namespace coarse {

/// A finite group G with a surjection pi onto a finite group Q, together with
/// the kernel N and a set-theoretic section sigma: Q -> G.
struct GroupExtension {
  FiniteGroup G;
  FiniteGroup Q;
  std::vector<std::size_t> pi;       ///< G index -> Q index
  std::vector<std::size_t> kernel;   ///< G indices with pi = e, in BFS order
  std::vector<std::size_t> section;  ///< Q index -> G index

  bool in_kernel(std::size_t g) const { return pi.at(g) == 0; }
};

/// Builds the extension from two specs whose given generators correspond:
/// generator i of `q_spec` is the image of generator i of `g_spec`.
/// The section picks, in every coset, the first element in BFS order of G
/// (shortest, then lexicographically least canonical word).
///
/// Throws NotAHomomorphism when the generator images do not define a
/// homomorphism, SectionInvalid when some sigma(p) is longer than p,
/// InvalidArgument on a generator count mismatch, and propagates
/// OrderExceeded.
GroupExtension make_extension(const QuotientGroupSpec& g_spec, const QuotientGroupSpec& q_spec,
                              std::size_t max_elements);

/// eta(g, p) = sigma(p)^{-1} g sigma(pi(g)^{-1} p), an element of the
/// kernel. Throws NotInKernel if that fails.
std::size_t eta_map(const GroupExtension& ext, std::size_t g, std::size_t p);

/// Unit vectors indexed by the elements of a group. `vectors[k]` belongs to
/// element `elements[k]`; all vectors share one dimension.
struct KernelFamily {
  std::vector<std::size_t> elements;
  std::vector<Eigen::VectorXd> vectors;
  double support_radius = 0.0;

  /// Position of `element` in `elements`, or -1.
  long find(std::size_t element) const;
  const Eigen::VectorXd& at(std::size_t element) const;
  Eigen::Index dimension() const { return vectors.empty() ? 0 : vectors.front().size(); }
};

/// Composes a kernel family on N with a family on Q into one on G:
///   xi_g(p) = lambda_{pi(g)}(p) * zeta_{eta(g, p)},
/// stored as |Q| consecutive blocks of zeta's dimension (block p holds the
/// p-th quotient coordinate). `lambda` vectors are indexed by Q elements.
/// The result carries lambda's support radius, measured in Q.
///
/// Throws InvalidKernel (non-unit vector, wrong dimension, lambda not defined
/// on all of Q), SupportRadiusExceeded (lambda reaches beyond its radius or
/// zeta is missing an eta(g, p) that is needed).
KernelFamily extension_compose(const GroupExtension& ext, const KernelFamily& zeta, const KernelFamily& lambda,
                               const std::vector<std::size_t>& g_elements = {});

/// max |1 - <xi_g, xi_h>| over pairs of the family with d_G(g, h) <= R.
double inner_product_defect(const GroupExtension& ext, const KernelFamily& xi, double R);

}  // namespace coarse
