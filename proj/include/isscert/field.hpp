#ifndef ISSCERT_FIELD_HPP
#define ISSCERT_FIELD_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "isscert/comparison.hpp"

namespace isscert {

enum class EndpointBc { Dirichlet, Neumann };

struct BoundaryCondition {
  EndpointBc left = EndpointBc::Dirichlet;
  EndpointBc right = EndpointBc::Dirichlet;

  static BoundaryCondition dirichlet() { return {EndpointBc::Dirichlet, EndpointBc::Dirichlet}; }
  static BoundaryCondition neumann() { return {EndpointBc::Neumann, EndpointBc::Neumann}; }
  bool operator==(const BoundaryCondition&) const = default;
};

std::string to_string(const BoundaryCondition& bc);
BoundaryCondition parse_bc(const std::string& tag);

/// Real-valued function sampled at nodes j*h, j=0..N on [0,L].
class GridFunction {
public:
  GridFunction() = default;
  GridFunction(int n, double length, BoundaryCondition bc);
  // Samples fn at the nodes, then reimposes the boundary condition.
  GridFunction(int n, double length, BoundaryCondition bc,
               const std::function<double(double)>& fn);

  int n() const { return static_cast<int>(values_.size()) - 1; }
  double h() const { return h_; }
  double length() const { return length_; }
  BoundaryCondition bc() const { return bc_; }
  double node(int j) const { return j * h_; }

  double& operator[](int j) { return values_[j]; }
  double operator[](int j) const { return values_[j]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // Pins Dirichlet endpoints to zero.
  void apply_bc();

  void write_csv(std::ostream& out) const;
  static GridFunction read_csv(std::istream& in);

private:
  std::vector<double> values_;
  double h_ = 0.0;
  double length_ = 0.0;
  BoundaryCondition bc_;
};

struct NormSpec {
  enum class Kind { Lp, SobolevSeminorm, Linf, Ug };
  Kind kind = Kind::Lp;
  double p = 2.0;            // Lp exponent
  int q = 1;                 // seminorm: L_{2q} norm of the derivative
  ComparisonFn g;            // Ug integrand via g^{-1}

  static NormSpec lp(double p) { return {Kind::Lp, p, 1, {}}; }
  static NormSpec l2() { return lp(2.0); }
  static NormSpec sobolev(int q) { return {Kind::SobolevSeminorm, 2.0, q, {}}; }
  static NormSpec h10() { return sobolev(1); }
  static NormSpec linf() { return {Kind::Linf, 2.0, 1, {}}; }
  static NormSpec ug(ComparisonFn g) { return {Kind::Ug, 2.0, 1, std::move(g)}; }
};

std::string to_string(const NormSpec& spec);

// Central differences at interior nodes, 2nd-order one-sided at the ends
// (Neumann ends use the mirror ghost, so the derivative there is 0).
GridFunction d1(const GridFunction& x);
// (x_{j-1} - 2 x_j + x_{j+1})/h^2; boundary rows by bc tag.
GridFunction d2(const GridFunction& x);

// Composite trapezoid rule over the node values.
double integrate(const GridFunction& x);

double norm(const GridFunction& x, const NormSpec& spec);

double product_norm(const GridFunction& x1, const NormSpec& n1,
                    const GridFunction& x2, const NormSpec& n2);

}  // namespace isscert

#endif
