#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fftmech/errors.hpp"
#include "fftmech/fields.hpp"
#include "fftmech/material.hpp"
#include "fftmech/projection.hpp"
#include "fftmech/tensor2.hpp"

namespace fftmech {

struct SolverParams {
  double eta_newton = 1e-5;  ///< convergence of |dF| / |F of last increment|
  double eta_cg = 1e-8;      ///< relative residual of the inner solve
  int max_newton = 30;       ///< Newton passes per increment, including the BC pass
  int max_cg = 0;            ///< 0 = number of unknowns (n * tdim^2)

  void validate() const;
};

/// One loading step: the macroscopic deformation gradient to reach.
struct Increment {
  Tensor2 fbar;
  std::string label;
};

using LoadProgram = std::vector<Increment>;

/// One Newton pass: the boundary-condition pass (index 0) distributes the
/// macroscopic increment, the following passes iterate equilibrium.
struct NewtonPass {
  int cg_iterations = 0;
  double cg_rel_residual = 0.0;
  double rel_update = 0.0;  ///< |dF| / |F of last increment|
};

struct SolveReport {
  std::string label;
  Tensor2 fbar;
  std::vector<NewtonPass> passes;
  double equilibrium_rel_residual = 0.0;  ///< |G(P)| / |P| at the converged state
  double max_mean_drift = 0.0;            ///< max over passes of |mean(F) - Fbar|_inf
  double wall_seconds = 0.0;
  bool converged = false;

  int newton_iterations() const { return static_cast<int>(passes.size()); }
  int equilibrium_iterations() const {
    return passes.empty() ? 0 : static_cast<int>(passes.size()) - 1;
  }
  long total_cg_iterations() const {
    long s = 0;
    for (const auto& p : passes) s += p.cg_iterations;
    return s;
  }
};

class NewtonDiverged : public Error {
 public:
  explicit NewtonDiverged(SolveReport report)
      : Error("Newton did not converge within " + std::to_string(report.passes.size()) +
              " passes (increment " + report.label + ")"),
        report(std::move(report)) {}
  SolveReport report;
};

class CgStalled : public Error {
 public:
  CgStalled(int iterations, double rel_residual)
      : Error("conjugate gradient stalled after " + std::to_string(iterations) +
              " iterations (relative residual " + std::to_string(rel_residual) + ")"),
        iterations(iterations),
        rel_residual(rel_residual) {}
  int iterations;
  double rel_residual;
};

/// Matrix-free linear map on deformation-gradient fields; the inner
/// solver is written against this so other Krylov methods can be plugged
/// in behind the same surface.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Tensor2Field apply(const Tensor2Field& x) const = 0;
};

/// The Newton system operator: dF -> G : K^LT : dF^T.
class ProjectedTangentOperator final : public LinearOperator {
 public:
  ProjectedTangentOperator(const ProjectionOperator& G, const Tensor4Field& K)
      : G_(G), K_(K) {}
  Tensor2Field apply(const Tensor2Field& x) const override {
    return apply_projected_tangent(G_, K_, x);
  }

 private:
  const ProjectionOperator& G_;
  const Tensor4Field& K_;
};

struct CgResult {
  int iterations = 0;
  double rel_residual = 0.0;
};

/// Unpreconditioned conjugate gradients with zero initial guess, so every
/// iterate stays in the compatible subspace spanned by the projection.
/// Stops at |r| <= eta_cg |b|; throws CgStalled at the iteration cap.
CgResult cg_solve(const LinearOperator& op, const Tensor2Field& rhs, const SolverParams& params,
                  Tensor2Field& x);

/// One loading increment of the incremental-iterative scheme: a
/// boundary-condition pass distributing Fbar - mean(F) through the
/// current tangent, then Newton equilibrium passes until
/// |dF| / |F of last increment| < eta_newton. Commits the model history
/// at convergence. F must hold the converged state of the previous
/// increment on entry and holds the new converged state on exit.
SolveReport solve_increment(Tensor2Field& F, MaterialModel& model, const ProjectionOperator& G,
                            const Increment& inc, const SolverParams& params,
                            Tensor2Field* P_converged = nullptr);

/// Observer of a load program; called after each converged increment.
class ProgramSink {
 public:
  virtual ~ProgramSink() = default;
  virtual void on_increment(std::size_t index, const Increment& inc, const SolveReport& report,
                            const Tensor2Field& F, const Tensor2Field& P, MaterialModel& model) {
    (void)index, (void)inc, (void)report, (void)F, (void)P, (void)model;
  }
};

/// Runs the increments in order, committing history only at convergence
/// and streaming reports to the sink. Throws on the first failed
/// increment after notifying the sink of everything that completed.
void run_program(Tensor2Field& F, MaterialModel& model, const ProjectionOperator& G,
                 const LoadProgram& program, const SolverParams& params, ProgramSink& sink);

}  // namespace fftmech
