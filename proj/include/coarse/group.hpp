#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarse/metric.hpp"

namespace coarse {

/// Permutation of {0..N-1}; p[i] is the image of i.
using Permutation = std::vector<int>;

/// Composition (g * h)[i] = g[h[i]].
Permutation compose(const Permutation& g, const Permutation& h);
Permutation invert(const Permutation& p);
Permutation identity_permutation(int degree);
bool is_identity(const Permutation& p);

/// A finite quotient of a finitely generated group, presented by the images
/// of the group's generators as permutations.
///
/// Normality and nestedness of kernels are not checked; the caller asserts them.
struct QuotientGroupSpec {
  int degree = 0;
  std::vector<Permutation> generators;
  bool symmetric_closure = true;

  /// Throws Error(InvalidPermutation) unless every generator is a bijection of
  /// {0..degree-1}.
  void validate() const;
};

/// One generator of the (possibly closed) generating set: which input
/// generator it comes from and whether it is that generator's inverse.
struct GeneratorSource {
  std::size_t given = 0;
  bool inverse = false;
};

/// A finite group enumerated as the orbit of the identity under
/// right multiplication by the generators. Element 0 is the identity, and
/// elements appear in BFS order, i.e. by (word length, lexicographic word).
class FiniteGroup {
 public:
  std::size_t order() const { return elements_.size(); }
  const Permutation& element(std::size_t i) const { return elements_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Canonical word: indices into `generators()`, lexicographically least
  /// among the shortest words.
  const std::vector<std::size_t>& word(std::size_t i) const { return words_.at(i); }
  std::size_t length(std::size_t i) const { return words_.at(i).size(); }

  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<GeneratorSource>& generator_sources() const { return sources_; }
  const std::vector<std::string>& generator_names() const { return names_; }

  /// Index of g * s_j.
  std::size_t step(std::size_t g, std::size_t j) const { return step_.at(g).at(j); }
  std::size_t multiply(std::size_t g, std::size_t h) const;
  std::size_t inverse(std::size_t g) const;
  /// Throws Error(InvalidArgument) if the permutation is not an element.
  std::size_t index_of(const Permutation& p) const;
  bool contains(const Permutation& p) const;

  /// Word metric d(g, h) = |g^{-1} h| for all pairs.
  Eigen::MatrixXd distance_matrix() const;

 private:
  friend FiniteGroup enumerate_group(const QuotientGroupSpec& spec, std::size_t max_elements);

  struct PermHash {
    std::size_t operator()(const Permutation& p) const noexcept;
  };

  std::vector<Permutation> generators_;
  std::vector<GeneratorSource> sources_;
  std::vector<std::string> names_;
  std::vector<Permutation> elements_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> words_;
  std::vector<std::vector<std::size_t>> step_;
  std::unordered_map<Permutation, std::size_t, PermHash> index_;
};

/// Breadth-first enumeration. Throws Error(OrderExceeded) once more than
/// `max_elements` elements are found.
FiniteGroup enumerate_group(const QuotientGroupSpec& spec, std::size_t max_elements);

/// Group elements as points (labelled by canonical words) with the word metric.
FiniteMetricSpace word_metric_space(const QuotientGroupSpec& spec, std::size_t max_elements);
FiniteMetricSpace word_metric_space(const FiniteGroup& group);

/// The finitely generated group the quotients come from. Only free groups and
/// free abelian groups are supported; their word lengths are computable
/// without a presentation.
struct ParentGroup {
  enum class Kind { Free, FreeAbelian };
  Kind kind = Kind::FreeAbelian;
  int rank = 1;

  static ParentGroup integers() { return {Kind::FreeAbelian, 1}; }
  static ParentGroup free(int rank) { return {Kind::Free, rank}; }
  static ParentGroup free_abelian(int rank) { return {Kind::FreeAbelian, rank}; }

  /// Search depth used when none is given.
  int default_depth_cap() const;
};

/// An element of the parent group as a word over letters 0..2r-1, where
/// letter i < r is generator i and letter i + r its inverse.
using ParentWord = std::vector<int>;

/// Free reduction (Free) or sorted exponent form (FreeAbelian).
ParentWord parent_normal_form(const ParentGroup& parent, const ParentWord& w);
std::size_t parent_length(const ParentGroup& parent, const ParentWord& w);
/// Left-invariant word distance |u^{-1} v| in the parent group.
std::size_t parent_distance(const ParentGroup& parent, const ParentWord& u, const ParentWord& v);
/// Image of a parent word in the quotient.
Permutation parent_image(const QuotientGroupSpec& spec, const ParentWord& w);

struct InjectivityRadius {
  std::size_t radius = 0;  ///< shortest non-trivial kernel element, or cap+1
  bool exact = true;       ///< false when the depth cap was reached (lower bound)
};

/// Length of the shortest non-identity parent element mapping to the
/// identity. The quotient map is isometric on sets of diameter below half of
/// it. A depth cap <= 0 selects `parent.default_depth_cap()`.
InjectivityRadius injectivity_radius(const ParentGroup& parent, const QuotientGroupSpec& spec,
                                     int depth_cap = 0);

struct FiltrationSpec {
  ParentGroup parent;
  std::vector<QuotientGroupSpec> stages;
};

/// Box space: the coarse disjoint union of the stage quotients, in order.
struct BoxSpace {
  BlockSpace space;
  std::vector<FiniteGroup> groups;
  std::vector<InjectivityRadius> radii;
};

/// Throws OrderExceeded, InvalidArgument (generator count differs from the
/// parent rank) or NonMonotoneFiltration (injectivity radius decreases).
BoxSpace box_space_build(const FiltrationSpec& filtration, std::size_t max_elements, int depth_cap = 0);

/// Lifting of a quotient window to the parent group: the first element is
/// lifted to the identity and every other element x to the canonical word of
/// base^{-1} x read in the parent. `isometric` reports whether parent
/// distances reproduce the quotient distances on every pair.
struct LiftResult {
  std::vector<ParentWord> lifts;
  bool isometric = false;
  std::size_t mismatches = 0;
};

LiftResult lift_window(const ParentGroup& parent, const FiniteGroup& quotient,
                       std::span<const std::size_t> elements);

}  // namespace coarse
