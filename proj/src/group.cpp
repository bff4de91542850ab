#include "coarse/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "coarse/error.hpp"

namespace coarse {

Permutation compose(const Permutation& g, const Permutation& h) {
  Permutation out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = g[static_cast<std::size_t>(h[i])];
  return out;
}

Permutation invert(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

Permutation identity_permutation(int degree) {
  Permutation p(static_cast<std::size_t>(std::max(degree, 0)));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

void QuotientGroupSpec::validate() const {
  if (degree <= 0) throw Error(Errc::InvalidPermutation, "degree must be positive");
  if (generators.empty()) throw Error(Errc::InvalidPermutation, "at least one generator is required");
  if (generators.size() > 26) throw Error(Errc::InvalidPermutation, "at most 26 generators are supported");
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& p = generators[g];
    if (p.size() != static_cast<std::size_t>(degree)) {
      throw Error(Errc::InvalidPermutation, "generator " + std::to_string(g) + " has wrong length", {g});
    }
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[static_cast<std::size_t>(v)]) {
        throw Error(Errc::InvalidPermutation, "generator " + std::to_string(g) + " is not a bijection", {g});
      }
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
}

std::size_t FiniteGroup::PermHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t FiniteGroup::multiply(std::size_t g, std::size_t h) const {
  return index_of(compose(elements_.at(g), elements_.at(h)));
}

std::size_t FiniteGroup::inverse(std::size_t g) const { return index_of(invert(elements_.at(g))); }

std::size_t FiniteGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw Error(Errc::InvalidArgument, "permutation is not a group element");
  return it->second;
}

bool FiniteGroup::contains(const Permutation& p) const { return index_.count(p) != 0; }

Eigen::MatrixXd FiniteGroup::distance_matrix() const {
  const std::size_t n = order();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<long> depth(n);
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(depth.begin(), depth.end(), -1);
    std::deque<std::size_t> queue{src};
    depth[src] = 0;
    while (!queue.empty()) {
      const auto g = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < generators_.size(); ++j) {
        const auto h = step_[g][j];
        if (depth[h] < 0) {
          depth[h] = depth[g] + 1;
          queue.push_back(h);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      d(static_cast<Eigen::Index>(src), static_cast<Eigen::Index>(t)) = static_cast<double>(depth[t]);
    }
  }
  return d;
}

FiniteGroup enumerate_group(const QuotientGroupSpec& spec, std::size_t max_elements) {
  spec.validate();
  FiniteGroup grp;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    grp.generators_.push_back(spec.generators[i]);
    grp.sources_.push_back({i, false});
    grp.names_.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  if (spec.symmetric_closure) {
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      auto inv = invert(spec.generators[i]);
      if (std::find(grp.generators_.begin(), grp.generators_.end(), inv) != grp.generators_.end()) continue;
      grp.generators_.push_back(std::move(inv));
      grp.sources_.push_back({i, true});
      grp.names_.push_back(std::string(1, static_cast<char>('A' + i)));
    }
  }

  auto add = [&](Permutation p, std::vector<std::size_t> word) {
    if (grp.elements_.size() >= max_elements) {
      throw Error(Errc::OrderExceeded, "group order exceeds " + std::to_string(max_elements));
    }
    std::string label;
    for (auto j : word) label += grp.names_[j];
    if (label.empty()) label = "e";
    grp.index_.emplace(p, grp.elements_.size());
    grp.elements_.push_back(std::move(p));
    grp.labels_.push_back(std::move(label));
    grp.words_.push_back(std::move(word));
  };

  add(identity_permutation(spec.degree), {});
  // FIFO order over parents, generators in index order: first discovery is the
  // lexicographically least shortest word.
  for (std::size_t head = 0; head < grp.elements_.size(); ++head) {
    std::vector<std::size_t> row(grp.generators_.size());
    for (std::size_t j = 0; j < grp.generators_.size(); ++j) {
      auto next = compose(grp.elements_[head], grp.generators_[j]);
      auto it = grp.index_.find(next);
      if (it != grp.index_.end()) {
        row[j] = it->second;
      } else {
        auto word = grp.words_[head];
        word.push_back(j);
        row[j] = grp.elements_.size();
        add(std::move(next), std::move(word));
      }
    }
    grp.step_.push_back(std::move(row));
  }
  return grp;
}

FiniteMetricSpace word_metric_space(const FiniteGroup& group) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < group.order(); ++i) labels.push_back(group.label(i));
  return validate_metric(group.distance_matrix(), std::move(labels));
}

FiniteMetricSpace word_metric_space(const QuotientGroupSpec& spec, std::size_t max_elements) {
  return word_metric_space(enumerate_group(spec, max_elements));
}

int ParentGroup::default_depth_cap() const {
  if (kind == Kind::Free) return rank <= 2 ? 12 : 8;
  return rank == 1 ? 256 : 24;
}

namespace {

std::vector<long> exponents(const ParentGroup& parent, const ParentWord& w) {
  std::vector<long> e(static_cast<std::size_t>(parent.rank), 0);
  for (int letter : w) {
    if (letter < 0 || letter >= 2 * parent.rank) throw Error(Errc::InvalidArgument, "parent letter out of range");
    if (letter < parent.rank) {
      ++e[static_cast<std::size_t>(letter)];
    } else {
      --e[static_cast<std::size_t>(letter - parent.rank)];
    }
  }
  return e;
}

int inverse_letter(int letter, int rank) { return letter < rank ? letter + rank : letter - rank; }

ParentWord inverse_word(const ParentWord& w, int rank) {
  ParentWord out(w.rbegin(), w.rend());
  for (auto& l : out) l = inverse_letter(l, rank);
  return out;
}

std::vector<Permutation> letter_images(const QuotientGroupSpec& spec) {
  std::vector<Permutation> img = spec.generators;
  for (const auto& g : spec.generators) img.push_back(invert(g));
  return img;
}

}  // namespace

ParentWord parent_normal_form(const ParentGroup& parent, const ParentWord& w) {
  if (parent.kind == ParentGroup::Kind::FreeAbelian) {
    const auto e = exponents(parent, w);
    ParentWord out;
    for (int i = 0; i < parent.rank; ++i) {
      const long k = e[static_cast<std::size_t>(i)];
      const int letter = k >= 0 ? i : i + parent.rank;
      for (long c = 0; c < std::abs(k); ++c) out.push_back(letter);
    }
    return out;
  }
  ParentWord out;
  for (int letter : w) {
    if (letter < 0 || letter >= 2 * parent.rank) throw Error(Errc::InvalidArgument, "parent letter out of range");
    if (!out.empty() && out.back() == inverse_letter(letter, parent.rank)) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

std::size_t parent_length(const ParentGroup& parent, const ParentWord& w) {
  return parent_normal_form(parent, w).size();
}

std::size_t parent_distance(const ParentGroup& parent, const ParentWord& u, const ParentWord& v) {
  ParentWord w = inverse_word(u, parent.rank);
  w.insert(w.end(), v.begin(), v.end());
  return parent_length(parent, w);
}

Permutation parent_image(const QuotientGroupSpec& spec, const ParentWord& w) {
  const auto img = letter_images(spec);
  Permutation p = identity_permutation(spec.degree);
  for (int letter : w) p = compose(p, img.at(static_cast<std::size_t>(letter)));
  return p;
}

InjectivityRadius injectivity_radius(const ParentGroup& parent, const QuotientGroupSpec& spec, int depth_cap) {
  spec.validate();
  if (static_cast<int>(spec.generators.size()) != parent.rank) {
    throw Error(Errc::InvalidArgument, "quotient generator count differs from parent rank");
  }
  const int cap = depth_cap > 0 ? depth_cap : parent.default_depth_cap();
  const int r = parent.rank;
  const auto img = letter_images(spec);

  if (parent.kind == ParentGroup::Kind::FreeAbelian) {
    for (std::size_t a = 0; a < spec.generators.size(); ++a)
      for (std::size_t b = a + 1; b < spec.generators.size(); ++b)
        if (compose(spec.generators[a], spec.generators[b]) != compose(spec.generators[b], spec.generators[a])) {
          throw Error(Errc::NotAHomomorphism, "images of free abelian generators do not commute");
        }
    // Exponent vectors of l1-norm exactly `len`, built coordinate by coordinate.
    for (int len = 1; len <= cap; ++len) {
      bool found = false;
      std::function<void(int, int, Permutation)> rec = [&](int coord, int left, Permutation acc) {
        if (found) return;
        if (coord == r) {
          if (left == 0 && is_identity(acc)) found = true;
          return;
        }
        if (coord == r - 1) {
          for (int sign : {1, -1}) {
            if (left == 0 && sign < 0) break;
            Permutation p = acc;
            const auto& g = img[static_cast<std::size_t>(sign > 0 ? coord : coord + r)];
            for (int c = 0; c < left; ++c) p = compose(p, g);
            rec(coord + 1, 0, std::move(p));
          }
          return;
        }
        for (int k = -left; k <= left; ++k) {
          Permutation p = acc;
          const auto& g = img[static_cast<std::size_t>(k >= 0 ? coord : coord + r)];
          for (int c = 0; c < std::abs(k); ++c) p = compose(p, g);
          rec(coord + 1, left - std::abs(k), std::move(p));
        }
      };
      rec(0, len, identity_permutation(spec.degree));
      if (found) return {static_cast<std::size_t>(len), true};
    }
    return {static_cast<std::size_t>(cap + 1), false};
  }

  // Free group: reduced words of exact length len, depth first.
  for (int len = 1; len <= cap; ++len) {
    bool found = false;
    std::function<void(int, int, const Permutation&)> rec = [&](int depth, int last, const Permutation& acc) {
      if (found) return;
      if (depth == len) {
        if (is_identity(acc)) found = true;
        return;
      }
      for (int letter = 0; letter < 2 * r && !found; ++letter) {
        if (last >= 0 && letter == inverse_letter(last, r)) continue;
        rec(depth + 1, letter, compose(acc, img[static_cast<std::size_t>(letter)]));
      }
    };
    rec(0, -1, identity_permutation(spec.degree));
    if (found) return {static_cast<std::size_t>(len), true};
  }
  return {static_cast<std::size_t>(cap + 1), false};
}

BoxSpace box_space_build(const FiltrationSpec& filtration, std::size_t max_elements, int depth_cap) {
  if (filtration.stages.empty()) throw Error(Errc::EmptyInput, "filtration has no stages");
  BoxSpace box;
  std::vector<FiniteMetricSpace> blocks;
  for (std::size_t i = 0; i < filtration.stages.size(); ++i) {
    const auto& stage = filtration.stages[i];
    if (static_cast<int>(stage.generators.size()) != filtration.parent.rank) {
      throw Error(Errc::InvalidArgument,
                  "stage " + std::to_string(i + 1) + " generator count differs from the parent rank", {i});
    }
    auto radius = injectivity_radius(filtration.parent, stage, depth_cap);
    if (!box.radii.empty()) {
      const auto& prev = box.radii.back();
      if (radius.exact && radius.radius < prev.radius) {
        throw Error(Errc::NonMonotoneFiltration,
                    "injectivity radius drops from " + std::to_string(prev.radius) + " to " +
                        std::to_string(radius.radius) + " at stage " + std::to_string(i + 1),
                    {i});
      }
    }
    box.groups.push_back(enumerate_group(stage, max_elements));
    blocks.push_back(word_metric_space(box.groups.back()));
    box.radii.push_back(radius);
  }
  box.space = coarse_disjoint_union(std::move(blocks));
  return box;
}

LiftResult lift_window(const ParentGroup& parent, const FiniteGroup& quotient, std::span<const std::size_t> elements) {
  LiftResult out;
  if (elements.empty()) {
    out.isometric = true;
    return out;
  }
  const std::size_t base_inv = quotient.inverse(elements[0]);
  for (auto x : elements) {
    const auto h = quotient.multiply(base_inv, x);
    ParentWord w;
    for (auto j : quotient.word(h)) {
      const auto src = quotient.generator_sources().at(j);
      if (static_cast<int>(src.given) >= parent.rank) {
        throw Error(Errc::InvalidArgument, "quotient has more generators than the parent rank");
      }
      w.push_back(static_cast<int>(src.given) + (src.inverse ? parent.rank : 0));
    }
    out.lifts.push_back(parent_normal_form(parent, w));
  }
  const auto dq = quotient.distance_matrix();
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      const auto dp = parent_distance(parent, out.lifts[a], out.lifts[b]);
      const auto dquot = dq(static_cast<Eigen::Index>(elements[a]), static_cast<Eigen::Index>(elements[b]));
      if (static_cast<double>(dp) != dquot) ++out.mismatches;
    }
  }
  out.isometric = out.mismatches == 0;
  return out;
}

}  // namespace coarse
