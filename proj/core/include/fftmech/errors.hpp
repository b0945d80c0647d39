#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fftmech {

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A per-node tensor inversion hit |det| below the singularity tolerance.
class SingularTensor : public Error {
 public:
  explicit SingularTensor(std::size_t node)
      : Error("singular tensor at node " + std::to_string(node)), node(node) {}
  std::size_t node;
};

class NotSymmetric : public Error {
 public:
  explicit NotSymmetric(std::size_t node)
      : Error("tensor log/exp requires a symmetric argument (node " + std::to_string(node) + ")"),
        node(node) {}
  std::size_t node;
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t node, double eigenvalue)
      : Error("tensor log requires a positive-definite argument (node " + std::to_string(node) +
              ", eigenvalue " + std::to_string(eigenvalue) + ")"),
        node(node),
        eigenvalue(eigenvalue) {}
  std::size_t node;
  double eigenvalue;
};

/// The imaginary residue discarded after an inverse transform exceeded its
/// tolerance; indicates a frequency-indexing bug rather than a user error.
class ComplexResidue : public Error {
 public:
  ComplexResidue(double residue, double tolerance)
      : Error("complex residue " + std::to_string(residue) + " exceeds tolerance " +
              std::to_string(tolerance)),
        residue(residue),
        tolerance(tolerance) {}
  double residue;
  double tolerance;
};

/// det F <= 0 at a node: the deformation state is locally inverted.
class InvertedElement : public Error {
 public:
  explicit InvertedElement(std::size_t node)
      : Error("non-positive det(F) at node " + std::to_string(node)), node(node) {}
  std::size_t node;
};

/// Reserved for return-mapping schemes without a closed-form solution.
class NonConvergedReturnMap : public Error {
 public:
  using Error::Error;
};

class FractionUnachievable : public Error {
 public:
  using Error::Error;
};

class BadFractions : public Error {
 public:
  using Error::Error;
};

class UnreadableImage : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

/// Carries every violation found while validating a run configuration,
/// each message qualified with the config path it refers to.
class ConfigInvalid : public Error {
 public:
  explicit ConfigInvalid(std::vector<std::string> violations)
      : Error(join(violations)), violations(std::move(violations)) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) {
      out += "\n  " + s;
    }
    return out;
  }
};

}  // namespace fftmech
