// Error types shared across the library. Every error carries a stable
// machine-readable code used by the CLI's structured error output.
#ifndef ELLSHIFT_ERROR_HPP
#define ELLSHIFT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ellshift {

class Error : public std::runtime_error {
  std::string code_;

 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& w = "division by zero")
      : Error("DivisionByZero", w) {}
};

struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& w)
      : Error("PrecisionExhausted", w) {}
};

// A zero/pole/singular point is not K-rational. Carries the offending
// polynomial so the user can enlarge K.
struct RootOutsideField : Error {
  std::string polynomial;
  explicit RootOutsideField(const std::string& poly)
      : Error("RootOutsideField",
              "a required root does not lie in the coefficient field: " + poly),
        polynomial(poly) {}
};

struct Inconclusive : Error {
  explicit Inconclusive(const std::string& w) : Error("Inconclusive", w) {}
};

struct NotPrincipal : Error {
  explicit NotPrincipal(const std::string& w = "divisor is not principal")
      : Error("NotPrincipal", w) {}
};

struct TorsionShift : Error {
  int order;
  explicit TorsionShift(int n)
      : Error("TorsionShift",
              "shift point is torsion of order " + std::to_string(n) +
                  "; the equation is ill posed"),
        order(n) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& w) : Error("SchemaError", w) {}
};

struct PointNotOnCurve : Error {
  explicit PointNotOnCurve(const std::string& w = "point does not satisfy the curve equation")
      : Error("PointNotOnCurve", w) {}
};

// A solution parameter (root of the given polynomial) exists only in an
// extension of K. Enlarge K and rerun.
struct ExtensionRequired : Error {
  std::string polynomial;
  explicit ExtensionRequired(const std::string& poly)
      : Error("ExtensionRequired",
              "a solution parameter lies outside K; minimal polynomial: " + poly),
        polynomial(poly) {}
};

struct PositiveDimensionalVariety : Error {
  explicit PositiveDimensionalVariety(const std::string& w)
      : Error("PositiveDimensionalVariety", w) {}
};

struct CombinationOverflow : Error {
  explicit CombinationOverflow(const std::string& w)
      : Error("CombinationOverflow", w) {}
};

}  // namespace ellshift

#endif
