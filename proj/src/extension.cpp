#include "coarse/extension.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "coarse/error.hpp"

namespace coarse {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
constexpr double kUnitTol = 1e-12;

void check_unit(const KernelFamily& f, const char* name) {
  if (f.elements.size() != f.vectors.size())
    throw Error(Errc::InvalidKernel, std::string(name) + ": element and vector counts differ");
  for (std::size_t k = 0; k < f.vectors.size(); ++k) {
    if (f.vectors[k].size() != f.dimension())
      throw Error(Errc::InvalidKernel, std::string(name) + ": vectors have different dimensions", {f.elements[k]});
    if (std::abs(f.vectors[k].norm() - 1.0) > kUnitTol)
      throw Error(Errc::InvalidKernel, std::string(name) + ": vector is not a unit vector", {f.elements[k]});
  }
}

}  // namespace

GroupExtension make_extension(const QuotientGroupSpec& g_spec, const QuotientGroupSpec& q_spec,
                              std::size_t max_elements) {
  if (g_spec.generators.size() != q_spec.generators.size())
    throw Error(Errc::InvalidArgument, "G and Q must list the same number of generators");
  GroupExtension ext{enumerate_group(g_spec, max_elements), enumerate_group(q_spec, max_elements), {}, {}, {}};
  const auto& G = ext.G;
  const auto& Q = ext.Q;

  // Image in Q of each generator of G's (closed) generating set.
  std::vector<std::size_t> gen_image;
  for (const auto& src : G.generator_sources()) {
    const auto& q = q_spec.generators.at(src.given);
    gen_image.push_back(Q.index_of(src.inverse ? invert(q) : q));
  }

  ext.pi.assign(G.order(), kUnset);
  ext.pi[0] = 0;
  std::deque<std::size_t> queue{0};
  std::vector<bool> seen(G.order(), false);
  seen[0] = true;
  while (!queue.empty()) {
    const auto g = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < G.generators().size(); ++j) {
      const auto h = G.step(g, j);
      const auto image = Q.multiply(ext.pi[g], gen_image[j]);
      if (ext.pi[h] == kUnset) {
        ext.pi[h] = image;
      } else if (ext.pi[h] != image) {
        throw Error(Errc::NotAHomomorphism, "generator images do not respect the relations of G", {g, h});
      }
      if (!seen[h]) {
        seen[h] = true;
        queue.push_back(h);
      }
    }
  }

  ext.section.assign(Q.order(), kUnset);
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (ext.pi[g] == 0) ext.kernel.push_back(g);
    if (ext.section[ext.pi[g]] == kUnset) ext.section[ext.pi[g]] = g;
  }
  for (std::size_t p = 0; p < Q.order(); ++p) {
    if (G.length(ext.section[p]) != Q.length(p)) {
      throw Error(Errc::SectionInvalid,
                  "section of " + Q.label(p) + " has length " + std::to_string(G.length(ext.section[p])) +
                      " but the element has length " + std::to_string(Q.length(p)),
                  {p});
    }
  }
  return ext;
}

std::size_t eta_map(const GroupExtension& ext, std::size_t g, std::size_t p) {
  const auto& G = ext.G;
  const auto& Q = ext.Q;
  const auto shifted = Q.multiply(Q.inverse(ext.pi.at(g)), p);
  const auto eta = G.multiply(G.multiply(G.inverse(ext.section.at(p)), g), ext.section.at(shifted));
  if (!ext.in_kernel(eta)) {
    throw Error(Errc::NotInKernel, "eta(" + G.label(g) + ", " + Q.label(p) + ") is not in the kernel", {g, p});
  }
  return eta;
}

long KernelFamily::find(std::size_t element) const {
  for (std::size_t k = 0; k < elements.size(); ++k)
    if (elements[k] == element) return static_cast<long>(k);
  return -1;
}

const Eigen::VectorXd& KernelFamily::at(std::size_t element) const {
  const long k = find(element);
  if (k < 0) throw Error(Errc::SupportRadiusExceeded, "no vector for element " + std::to_string(element), {element});
  return vectors[static_cast<std::size_t>(k)];
}

KernelFamily extension_compose(const GroupExtension& ext, const KernelFamily& zeta, const KernelFamily& lambda,
                               const std::vector<std::size_t>& g_elements) {
  check_unit(zeta, "zeta");
  check_unit(lambda, "lambda");
  const auto& Q = ext.Q;
  const auto nq = static_cast<Eigen::Index>(Q.order());
  if (lambda.dimension() != nq)
    throw Error(Errc::InvalidKernel, "lambda vectors must have one coordinate per quotient element");
  for (auto e : zeta.elements)
    if (e >= ext.G.order() || !ext.in_kernel(e))
      throw Error(Errc::InvalidKernel, "zeta is indexed by a non-kernel element", {e});

  const auto dq = Q.distance_matrix();
  for (std::size_t k = 0; k < lambda.elements.size(); ++k) {
    const auto q = lambda.elements[k];
    for (Eigen::Index p = 0; p < nq; ++p) {
      if (lambda.vectors[k](p) != 0.0 && dq(static_cast<Eigen::Index>(q), p) > lambda.support_radius) {
        throw Error(Errc::SupportRadiusExceeded,
                    "lambda at " + Q.label(q) + " reaches " + Q.label(static_cast<std::size_t>(p)) +
                        " beyond radius " + std::to_string(lambda.support_radius),
                    {q, static_cast<std::size_t>(p)});
      }
    }
  }

  std::vector<std::size_t> targets = g_elements;
  if (targets.empty())
    for (std::size_t g = 0; g < ext.G.order(); ++g) targets.push_back(g);

  const auto dz = zeta.dimension();
  KernelFamily xi;
  xi.support_radius = lambda.support_radius;
  for (auto g : targets) {
    const auto& lam = lambda.at(ext.pi.at(g));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(nq * dz);
    for (Eigen::Index p = 0; p < nq; ++p) {
      if (lam(p) == 0.0) continue;
      const auto eta = eta_map(ext, g, static_cast<std::size_t>(p));
      v.segment(p * dz, dz) = lam(p) * zeta.at(eta);
    }
    xi.elements.push_back(g);
    xi.vectors.push_back(std::move(v));
  }
  return xi;
}

double inner_product_defect(const GroupExtension& ext, const KernelFamily& xi, double R) {
  const auto d = ext.G.distance_matrix();
  double worst = 0.0;
  for (std::size_t a = 0; a < xi.elements.size(); ++a)
    for (std::size_t b = 0; b < xi.elements.size(); ++b) {
      const auto ga = static_cast<Eigen::Index>(xi.elements[a]);
      const auto gb = static_cast<Eigen::Index>(xi.elements[b]);
      if (d(ga, gb) <= R) worst = std::max(worst, std::abs(1.0 - xi.vectors[a].dot(xi.vectors[b])));
    }
  return worst;
}

}  // namespace coarse
