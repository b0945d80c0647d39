#include "fftmech/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fftmech/tensor_ops.hpp"

namespace fftmech {

void SolverParams::validate() const {
  if (!(eta_newton > 0.0 && eta_newton < 1.0))
    throw std::invalid_argument("eta_newton must be in (0,1)");
  if (!(eta_cg > 0.0 && eta_cg < 1.0)) throw std::invalid_argument("eta_cg must be in (0,1)");
  if (max_newton < 1) throw std::invalid_argument("max_newton must be >= 1");
  if (max_cg < 0) throw std::invalid_argument("max_cg must be >= 0");
}

CgResult cg_solve(const LinearOperator& op, const Tensor2Field& rhs, const SolverParams& params,
                  Tensor2Field& x) {
  params.validate();
  x = Tensor2Field(rhs.shape(), rhs.tdim());

  const double bnorm = field_norm(rhs);
  if (bnorm == 0.0) return {0, 0.0};

  const int cap = params.max_cg > 0
                      ? params.max_cg
                      : static_cast<int>(rhs.nodes()) * rhs.tdim() * rhs.tdim();

  Tensor2Field r = rhs;
  Tensor2Field p = r;
  double rr = field_dot(r, r);

  for (int it = 1; it <= cap; ++it) {
    const Tensor2Field Ap = op.apply(p);
    const double pAp = field_dot(p, Ap);
    if (!(pAp > 0.0)) {
      // Indefinite curvature: the tangent is not positive definite here
      // (possible at large strains) or round-off dominates near the
      // floor. Return the current iterate; the Newton loop absorbs the
      // remaining inexactness.
      return {it, std::sqrt(rr) / bnorm};
    }
    const double alpha = rr / pAp;
    axpy(alpha, p, x);
    axpy(-alpha, Ap, r);
    const double rr_new = field_dot(r, r);
    if (std::sqrt(rr_new) <= params.eta_cg * bnorm)
      return {it, std::sqrt(rr_new) / bnorm};
    const double beta = rr_new / rr;
    rr = rr_new;
    // p = r + beta p
    p *= beta;
    p += r;
  }
  throw CgStalled(cap, std::sqrt(rr) / bnorm);
}

namespace {

double mean_drift(const Tensor2Field& F, const Tensor2& fbar) {
  const Tensor2 mean = field_mean(F);
  double drift = 0.0;
  for (int i = 0; i < fbar.dim; ++i)
    for (int j = 0; j < fbar.dim; ++j)
      drift = std::max(drift, std::abs(mean(i, j) - fbar(i, j)));
  return drift;
}

}  // namespace

SolveReport solve_increment(Tensor2Field& F, MaterialModel& model, const ProjectionOperator& G,
                            const Increment& inc, const SolverParams& params,
                            Tensor2Field* P_converged) {
  params.validate();
  if (inc.fbar.dim != F.tdim())
    throw std::invalid_argument("increment dimension does not match the state field");
  if (!(inc.fbar.det() > 0.0)) throw std::invalid_argument("det(Fbar) must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  report.label = inc.label;
  report.fbar = inc.fbar;

  // Normalization of the Newton criterion: the converged field of the
  // previous increment (the identity field before the first increment).
  const double norm_ref = field_norm(F);

  Tensor2Field P(F.shape(), F.tdim());
  Tensor4Field K(F.shape(), F.tdim());
  Tensor2Field dF(F.shape(), F.tdim());

  const auto finish = [&](bool converged) {
    report.converged = converged;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  // Boundary-condition pass: distribute dFbar through the current tangent.
  {
    model.evaluate(F, P, K);
    const Tensor2 dFbar = inc.fbar - field_mean(F);
    Tensor2Field dFbar_field(F.shape(), F.tdim());
    dFbar_field.add_uniform(dFbar);

    Tensor2Field rhs = apply_projected_tangent(G, K, dFbar_field);
    rhs *= -1.0;

    const ProjectedTangentOperator op(G, K);
    CgResult cg;
    try {
      cg = cg_solve(op, rhs, params, dF);
    } catch (...) {
      finish(false);
      throw;
    }
    F.add_uniform(dFbar);
    F += dF;
    report.passes.push_back({cg.iterations, cg.rel_residual, field_norm(dF) / norm_ref});
    report.max_mean_drift = std::max(report.max_mean_drift, mean_drift(F, inc.fbar));
  }

  // Newton equilibrium passes.
  while (true) {
    if (report.newton_iterations() >= params.max_newton) {
      finish(false);
      throw NewtonDiverged(std::move(report));
    }
    model.evaluate(F, P, K);
    Tensor2Field rhs = apply_projection(G, P);
    rhs *= -1.0;

    const ProjectedTangentOperator op(G, K);
    CgResult cg;
    try {
      cg = cg_solve(op, rhs, params, dF);
    } catch (...) {
      finish(false);
      throw;
    }
    F += dF;
    const double rel = field_norm(dF) / norm_ref;
    report.passes.push_back({cg.iterations, cg.rel_residual, rel});
    report.max_mean_drift = std::max(report.max_mean_drift, mean_drift(F, inc.fbar));
    if (rel < params.eta_newton) break;
  }

  // Refresh the constitutive state exactly at the converged field, commit
  // the history it implies, and record the equilibrium residual.
  model.evaluate(F, P, K);
  const double pnorm = field_norm(P);
  report.equilibrium_rel_residual =
      pnorm > 0.0 ? field_norm(apply_projection(G, P)) / pnorm : 0.0;
  model.commit(F);
  if (P_converged) *P_converged = P;

  finish(true);
  return report;
}

void run_program(Tensor2Field& F, MaterialModel& model, const ProjectionOperator& G,
                 const LoadProgram& program, const SolverParams& params, ProgramSink& sink) {
  for (std::size_t idx = 0; idx < program.size(); ++idx) {
    Tensor2Field P;
    const SolveReport report = solve_increment(F, model, G, program[idx], params, &P);
    sink.on_increment(idx, program[idx], report, F, P, model);
  }
}

}  // namespace fftmech
