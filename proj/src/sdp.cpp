#include "coarse/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/error.hpp"

namespace coarse {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Standard form used internally:
//   primal  max <C, X>  s.t.  A(X) = a,  X = (S, v) PSD x non-negative
//   dual    min a.y     s.t.  A^T(y) - C = Z = (S, v) PSD x non-negative
// with A_i = (B_i, -coef_{.,i}), C = (0, -rhs), a = -objective.
struct Pair {
  MatrixXd S;
  VectorXd v;
};

struct Layout {
  int m = 0;
  int nvars = 0;
  int ngram = 0;
  std::vector<std::pair<int, int>> entry;  // gram var -> (a, b), a <= b
};

Layout make_layout(const SdpProblem& p) {
  Layout l;
  l.m = p.psd_dim;
  l.ngram = p.gram_var_count();
  l.nvars = p.var_count();
  l.entry.resize(static_cast<std::size_t>(l.ngram));
  for (int a = 0; a < l.m; ++a)
    for (int b = a; b < l.m; ++b) l.entry[static_cast<std::size_t>(gram_var(a, b, l.m))] = {a, b};
  return l;
}

// A(X) for a possibly non-symmetric S (only the symmetric part contributes).
VectorXd apply_A(const SdpProblem& p, const Layout& l, const MatrixXd& S, const VectorXd& v) {
  VectorXd out = VectorXd::Zero(l.nvars);
  for (int i = 0; i < l.ngram; ++i) {
    const auto [a, b] = l.entry[static_cast<std::size_t>(i)];
    out(i) = a == b ? S(a, a) : S(a, b) + S(b, a);
  }
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    for (auto [j, c] : p.rows[r].terms) out(j) -= c * v(static_cast<Index>(r));
  return out;
}

Pair apply_AT(const SdpProblem& p, const Layout& l, const VectorXd& y) {
  Pair out{MatrixXd::Zero(l.m, l.m), VectorXd::Zero(static_cast<Index>(p.rows.size()))};
  for (int i = 0; i < l.ngram; ++i) {
    const auto [a, b] = l.entry[static_cast<std::size_t>(i)];
    out.S(a, b) = y(i);
    out.S(b, a) = y(i);
  }
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    double s = 0.0;
    for (auto [j, c] : p.rows[r].terms) s += c * y(j);
    out.v(static_cast<Index>(r)) = -s;
  }
  return out;
}

// Largest alpha with M + alpha * D still PSD (infinity when unbounded).
double max_step_psd(const MatrixXd& M, const MatrixXd& D) {
  if (M.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::LLT<MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd L = llt.matrixL();
  MatrixXd T = L.triangularView<Eigen::Lower>().solve(D).eval();
  T = L.triangularView<Eigen::Lower>().solve(T.transpose()).transpose().eval();
  T = (0.5 * (T + T.transpose())).eval();
  const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(T, Eigen::EigenvaluesOnly).eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double max_step_lp(const VectorXd& v, const VectorXd& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < v.size(); ++i)
    if (d(i) < 0.0) alpha = std::min(alpha, -v(i) / d(i));
  return alpha;
}

double max_step(const Pair& X, const Pair& D) {
  return std::min(max_step_psd(X.S, D.S), max_step_lp(X.v, D.v));
}

double inner(const Pair& X, const Pair& Z) { return (X.S.cwiseProduct(Z.S)).sum() + X.v.dot(Z.v); }

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt) {
  const Layout l = make_layout(p);
  if (p.objective.size() != l.nvars)
    throw Error(Errc::InvalidArgument, "objective length does not match the variable count");
  for (const auto& row : p.rows)
    for (auto [j, c] : row.terms)
      if (j < 0 || j >= l.nvars) throw Error(Errc::InvalidArgument, "row refers to an unknown variable");

  const Index nrows = static_cast<Index>(p.rows.size());
  const VectorXd a = -p.objective;
  VectorXd rhs(nrows);
  for (Index r = 0; r < nrows; ++r) rhs(r) = p.rows[static_cast<std::size_t>(r)].rhs;
  const Pair C{MatrixXd::Zero(l.m, l.m), -rhs};
  const double cone_dim = static_cast<double>(l.m + nrows);

  // Dense row coefficients for the diagonal block of the Schur complement.
  MatrixXd coef = MatrixXd::Zero(nrows, l.nvars);
  for (Index r = 0; r < nrows; ++r)
    for (auto [j, c] : p.rows[static_cast<std::size_t>(r)].terms) coef(r, j) += c;

  const double scale = std::max({1.0, rhs.cwiseAbs().maxCoeff(), p.objective.cwiseAbs().maxCoeff()});
  const double xi = std::max(10.0, std::sqrt(cone_dim));
  const double eta = std::max(10.0, scale);
  Pair X{xi * MatrixXd::Identity(l.m, l.m), VectorXd::Constant(nrows, xi)};
  Pair Z{eta * MatrixXd::Identity(l.m, l.m), VectorXd::Constant(nrows, eta)};
  VectorXd y = VectorXd::Zero(l.nvars);

  SdpSolution sol;
  const double norm_a = a.norm();
  const double norm_c = rhs.norm();

  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    const VectorXd Rp = a - apply_A(p, l, X.S, X.v);
    Pair ATy = apply_AT(p, l, y);
    Pair Rd{ATy.S - C.S - Z.S, ATy.v - C.v - Z.v};

    const double pobj = -rhs.dot(X.v);  // <C, X>
    const double dobj = a.dot(y);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf = Rp.norm() / (1.0 + norm_a);
    const double dinf = std::sqrt(Rd.S.squaredNorm() + Rd.v.squaredNorm()) / (1.0 + norm_c);
    const double mu = inner(X, Z) / cone_dim;

    sol.iterations = iter;
    sol.rel_gap = gap;
    sol.infeasibility = std::max(pinf, dinf);
    if (gap <= opt.gap_tol && pinf <= opt.feas_tol && dinf <= opt.feas_tol) {
      sol.converged = true;
      break;
    }
    if (iter == opt.max_iterations) break;

    Eigen::LLT<MatrixXd> zchol(Z.S);
    if (l.m > 0 && zchol.info() != Eigen::Success) break;
    const MatrixXd W = l.m > 0 ? zchol.solve(MatrixXd::Identity(l.m, l.m)) : MatrixXd();
    const MatrixXd Wsym = 0.5 * (W + W.transpose());
    const VectorXd winv = Z.v.cwiseInverse();

    // Schur complement M_ij = <A_i Z^{-1} A_j, X>.
    MatrixXd M = MatrixXd::Zero(l.nvars, l.nvars);
    for (int i = 0; i < l.ngram; ++i) {
      const auto [ia, ib] = l.entry[static_cast<std::size_t>(i)];
      for (int j = i; j < l.ngram; ++j) {
        const auto [ja, jb] = l.entry[static_cast<std::size_t>(j)];
        // sum over (p,q) in terms(i), (r,s) in terms(j) of W(q,r) X(s,p)
        auto term = [&](int pp, int q, int r, int s) { return Wsym(q, r) * X.S(s, pp); };
        double v = term(ia, ib, ja, jb);
        if (ja != jb) v += term(ia, ib, jb, ja);
        if (ia != ib) {
          v += term(ib, ia, ja, jb);
          if (ja != jb) v += term(ib, ia, jb, ja);
        }
        M(i, j) = v;
        M(j, i) = v;
      }
    }
    const VectorXd ratio = X.v.cwiseProduct(winv);
    M.noalias() += coef.transpose() * ratio.asDiagonal() * coef;

    Eigen::LDLT<MatrixXd> schur(M);
    if (schur.info() != Eigen::Success) break;

    // Search direction for target mu_t and optional second-order correction.
    auto direction = [&](double mu_t, const Pair* dX0, const Pair* dZ0, Pair& dX, Pair& dZ, VectorXd& dy) {
      MatrixXd base = mu_t * Wsym;
      VectorXd basev = mu_t * winv;
      if (dX0 != nullptr) {
        base -= W * dZ0->S * dX0->S;
        basev -= winv.cwiseProduct(dZ0->v).cwiseProduct(dX0->v);
      }
      const MatrixXd G = base - W * Rd.S * X.S;
      const VectorXd g = basev - winv.cwiseProduct(Rd.v).cwiseProduct(X.v);
      dy = schur.solve(apply_A(p, l, G, g) - a);
      const Pair ATdy = apply_AT(p, l, dy);
      dZ.S = ATdy.S + Rd.S;
      dZ.v = ATdy.v + Rd.v;
      dX.S = base - X.S - W * dZ.S * X.S;
      dX.S = (0.5 * (dX.S + dX.S.transpose())).eval();
      dX.v = basev - X.v - winv.cwiseProduct(dZ.v).cwiseProduct(X.v);
    };

    Pair dXa, dZa;
    VectorXd dya;
    direction(0.0, nullptr, nullptr, dXa, dZa, dya);
    const double ap_aff = std::min(1.0, max_step(X, dXa));
    const double ad_aff = std::min(1.0, max_step(Z, dZa));
    const Pair Xa{X.S + ap_aff * dXa.S, X.v + ap_aff * dXa.v};
    const Pair Za{Z.S + ad_aff * dZa.S, Z.v + ad_aff * dZa.v};
    const double mu_aff = std::max(0.0, inner(Xa, Za) / cone_dim);
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    Pair dX, dZ;
    VectorXd dy;
    direction(sigma * mu, &dXa, &dZa, dX, dZ, dy);

    const double gamma = 0.98;
    const double ap = std::min(1.0, gamma * max_step(X, dX));
    const double ad = std::min(1.0, gamma * max_step(Z, dZ));
    if (!(ap > 0.0) || !(ad > 0.0) || !std::isfinite(ap + ad)) break;

    X.S += ap * dX.S;
    X.S = (0.5 * (X.S + X.S.transpose())).eval();
    X.v += ap * dX.v;
    Z.S += ad * dZ.S;
    Z.S = (0.5 * (Z.S + Z.S.transpose())).eval();
    Z.v += ad * dZ.v;
    y += ad * dy;
  }

  sol.y = y;
  sol.gram = Z.S;
  sol.row_slack = Z.v;
  sol.row_dual = X.v;
  sol.psd_dual = X.S;
  sol.primal_value = p.objective.dot(y);
  sol.dual_value = rhs.dot(X.v);
  return sol;
}

}  // namespace coarse
