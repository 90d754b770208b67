#pragma once

// Self-adjoint boundary conditions for -y'' + q y = lambda y on (0,1).
//
// Separated(alpha, beta):  cos(alpha) y(0) - sin(alpha) y'(0) = 0
//                          cos(beta)  y(1) - sin(beta)  y'(1) = 0
// Coupled: periodic        y(0) = y(1),  y'(0) = y'(1)
//          antiperiodic    y(0) = -y(1), y'(0) = -y'(1)

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>

#include "sltk/decimal.hpp"
#include "sltk/errors.hpp"

namespace sltk {

struct Separated {
  double alpha = 0.0;  ///< in [0, pi)
  double beta = 0.0;   ///< in [0, pi)
};

enum class Coupling { periodic, antiperiodic };

class BoundaryCondition {
 public:
  BoundaryCondition() : rep_(Separated{}) {}

  static BoundaryCondition separated(double alpha, double beta) {
    auto ok = [](double a) { return a >= 0.0 && a < std::numbers::pi; };
    if (!ok(alpha) || !ok(beta)) throw UsageError("separated boundary angles must lie in [0, pi)");
    return BoundaryCondition(Separated{alpha, beta});
  }
  static BoundaryCondition dirichlet() { return separated(0.0, 0.0); }
  static BoundaryCondition neumann() { return separated(std::numbers::pi / 2, std::numbers::pi / 2); }
  static BoundaryCondition robin(double alpha = std::numbers::pi / 4, double beta = std::numbers::pi / 4) {
    return separated(alpha, beta);
  }
  static BoundaryCondition periodic() { return BoundaryCondition(Coupling::periodic); }
  static BoundaryCondition antiperiodic() { return BoundaryCondition(Coupling::antiperiodic); }

  bool is_separated() const noexcept { return std::holds_alternative<Separated>(rep_); }
  const Separated& angles() const {
    if (const auto* s = std::get_if<Separated>(&rep_)) return *s;
    throw UsageError("boundary condition is not separated");
  }
  Coupling coupling() const {
    if (const auto* c = std::get_if<Coupling>(&rep_)) return *c;
    throw UsageError("boundary condition is not coupled");
  }

  bool is_dirichlet() const noexcept {
    const auto* s = std::get_if<Separated>(&rep_);
    return s && s->alpha == 0.0 && s->beta == 0.0;
  }

  /// Canonical spelling, accepted back by parse_boundary_condition.
  std::string name() const {
    if (const auto* c = std::get_if<Coupling>(&rep_)) {
      return *c == Coupling::periodic ? "periodic" : "antiperiodic";
    }
    const auto& s = std::get<Separated>(rep_);
    const double h = std::numbers::pi / 2, r = std::numbers::pi / 4;
    if (s.alpha == 0.0 && s.beta == 0.0) return "dirichlet";
    if (s.alpha == h && s.beta == h) return "neumann";
    if (s.alpha == r && s.beta == r) return "robin";
    return "separated(" + format_double(s.alpha) + "," + format_double(s.beta) + ")";
  }

  friend bool operator==(const BoundaryCondition& a, const BoundaryCondition& b) {
    if (a.is_separated() != b.is_separated()) return false;
    if (!a.is_separated()) return a.coupling() == b.coupling();
    return a.angles().alpha == b.angles().alpha && a.angles().beta == b.angles().beta;
  }

 private:
  explicit BoundaryCondition(std::variant<Separated, Coupling> rep) : rep_(rep) {}
  std::variant<Separated, Coupling> rep_;
};

/// dirichlet | neumann | robin | periodic | antiperiodic | separated(alpha,beta)
inline BoundaryCondition parse_boundary_condition(std::string_view text) {
  const auto t = trim(text);
  if (t == "dirichlet") return BoundaryCondition::dirichlet();
  if (t == "neumann") return BoundaryCondition::neumann();
  if (t == "robin") return BoundaryCondition::robin();
  if (t == "periodic") return BoundaryCondition::periodic();
  if (t == "antiperiodic") return BoundaryCondition::antiperiodic();
  constexpr std::string_view head = "separated(";
  if (t.substr(0, head.size()) == head && t.back() == ')') {
    const auto inner = t.substr(head.size(), t.size() - head.size() - 1);
    const auto comma = inner.find(',');
    if (comma != std::string_view::npos) {
      const auto a = parse_double(trim(inner.substr(0, comma)));
      const auto b = parse_double(trim(inner.substr(comma + 1)));
      if (a && b) return BoundaryCondition::separated(*a, *b);
    }
  }
  throw UsageError("unknown boundary condition '" + std::string(t) +
                   "' (expected dirichlet, neumann, robin, periodic, antiperiodic or separated(alpha,beta))");
}

}  // namespace sltk
