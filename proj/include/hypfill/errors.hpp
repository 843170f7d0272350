#ifndef HYPFILL_ERRORS_HPP
#define HYPFILL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypfill {

// Base class for all library errors. Carries a stable machine-readable code
// so the CLI can emit structured error records.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what = "empty input")
      : Error("Empty", what) {}
};

struct DuplicatePoints : Error {
  int i, j;
  DuplicatePoints(int i_, int j_)
      : Error("DuplicatePoints", "zero distance between distinct points " +
                                     std::to_string(i_) + " and " +
                                     std::to_string(j_)),
        i(i_), j(j_) {}
};

struct TriangleViolation : Error {
  int i, j, k;
  TriangleViolation(int i_, int j_, int k_)
      : Error("TriangleViolation", "triangle inequality fails on (" +
                                       std::to_string(i_) + "," +
                                       std::to_string(j_) + "," +
                                       std::to_string(k_) + ")"),
        i(i_), j(j_), k(k_) {}
};

struct BadParams : Error {
  explicit BadParams(const std::string& what) : Error("BadParams", what) {}
};

struct BadTau : Error {
  explicit BadTau(const std::string& what) : Error("BadTau", what) {}
};

struct BadBeta : Error {
  explicit BadBeta(const std::string& what) : Error("BadBeta", what) {}
};

struct TruncationTooShallow : Error {
  int required;
  explicit TruncationTooShallow(int required_)
      : Error("TruncationTooShallow",
              "truncation level must be at least " + std::to_string(required_)),
        required(required_) {}
};

struct UnknownVertex : Error {
  explicit UnknownVertex(const std::string& what = "vertex not in graph")
      : Error("UnknownVertex", what) {}
};

struct UnknownNode : Error {
  explicit UnknownNode(const std::string& what = "node not in uniformized graph")
      : Error("UnknownNode", what) {}
};

struct EpsOutOfRange : Error {
  explicit EpsOutOfRange(const std::string& what) : Error("EpsOutOfRange", what) {}
};

struct NotInRegime : Error {
  explicit NotInRegime(const std::string& what) : Error("NotInRegime", what) {}
};

// Raised when a mechanically checked inequality that is a proven theorem
// fails; always indicates an implementation bug, never a data problem.
struct BoundViolation : Error {
  explicit BoundViolation(const std::string& what) : Error("BoundViolation", what) {}
};

struct LemmaViolation : Error {
  explicit LemmaViolation(const std::string& what) : Error("LemmaViolation", what) {}
};

struct NeighborMassViolation : Error {
  explicit NeighborMassViolation(const std::string& what)
      : Error("NeighborMassViolation", what) {}
};

struct GradientMismatch : Error {
  explicit GradientMismatch(const std::string& what)
      : Error("GradientMismatch", what) {}
};

struct ScaleMismatch : Error {
  explicit ScaleMismatch(const std::string& what) : Error("ScaleMismatch", what) {}
};

struct RoundTripFailure : Error {
  explicit RoundTripFailure(const std::string& what)
      : Error("RoundTripFailure", what) {}
};

struct MissingData : Error {
  explicit MissingData(const std::string& what) : Error("MissingData", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("IoError", what) {}
};

}  // namespace hypfill

#endif
