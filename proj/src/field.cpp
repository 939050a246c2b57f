#include "isscert/field.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace isscert {

std::string to_string(const BoundaryCondition& bc) {
  auto tag = [](EndpointBc e) { return e == EndpointBc::Dirichlet ? 'd' : 'n'; };
  if (bc == BoundaryCondition::dirichlet()) return "dirichlet";
  if (bc == BoundaryCondition::neumann()) return "neumann";
  return std::string("mixed-") + tag(bc.left) + tag(bc.right);
}

BoundaryCondition parse_bc(const std::string& tag) {
  if (tag == "dirichlet") return BoundaryCondition::dirichlet();
  if (tag == "neumann") return BoundaryCondition::neumann();
  if (tag == "mixed-dn") return {EndpointBc::Dirichlet, EndpointBc::Neumann};
  if (tag == "mixed-nd") return {EndpointBc::Neumann, EndpointBc::Dirichlet};
  throw std::invalid_argument("unknown boundary tag '" + tag + "'");
}

GridFunction::GridFunction(int n, double length, BoundaryCondition bc)
    : values_(n + 1, 0.0), h_(length / n), length_(length), bc_(bc) {
  if (n < 8) throw std::invalid_argument("GridFunction: N must be at least 8");
  if (length <= 0.0) throw std::invalid_argument("GridFunction: L must be positive");
}

GridFunction::GridFunction(int n, double length, BoundaryCondition bc,
                           const std::function<double(double)>& fn)
    : GridFunction(n, length, bc) {
  for (int j = 0; j <= n; ++j) values_[j] = fn(node(j));
  apply_bc();
}

void GridFunction::apply_bc() {
  if (bc_.left == EndpointBc::Dirichlet) values_.front() = 0.0;
  if (bc_.right == EndpointBc::Dirichlet) values_.back() = 0.0;
}

void GridFunction::write_csv(std::ostream& out) const {
  out.precision(17);
  out << "# L=" << length_ << " N=" << n() << " bc=" << to_string(bc_) << "\n";
  for (int j = 0; j <= n(); ++j) out << node(j) << "," << values_[j] << "\n";
}

GridFunction GridFunction::read_csv(std::istream& in) {
  std::string header;
  std::getline(in, header);
  double length = 0.0;
  int nn = 0;
  std::string bctag;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("L=", 0) == 0) length = std::strtod(tok.c_str() + 2, nullptr);
      else if (tok.rfind("N=", 0) == 0) nn = std::stoi(tok.substr(2));
      else if (tok.rfind("bc=", 0) == 0) bctag = tok.substr(3);
    }
  }
  if (nn < 8 || length <= 0.0 || bctag.empty())
    throw std::invalid_argument("GridFunction::read_csv: malformed header");
  GridFunction x(nn, length, parse_bc(bctag));
  std::string line;
  int j = 0;
  while (j <= nn && std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("GridFunction::read_csv: malformed row");
    x[j++] = std::strtod(line.c_str() + comma + 1, nullptr);
  }
  if (j != nn + 1)
    throw std::invalid_argument("GridFunction::read_csv: row count mismatch");
  return x;
}

std::string to_string(const NormSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case NormSpec::Kind::Lp: out << "L" << spec.p; break;
    case NormSpec::Kind::SobolevSeminorm: out << "W1," << 2 * spec.q << "_0"; break;
    case NormSpec::Kind::Linf: out << "Linf"; break;
    case NormSpec::Kind::Ug: out << "Ug(" << spec.g.name << ")"; break;
  }
  return out.str();
}

GridFunction d1(const GridFunction& x) {
  const int n = x.n();
  const double h = x.h();
  GridFunction out(n, x.length(), x.bc());
  for (int j = 1; j < n; ++j) out[j] = (x[j + 1] - x[j - 1]) / (2.0 * h);
  if (x.bc().left == EndpointBc::Neumann) {
    out[0] = 0.0;
  } else {
    out[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
  }
  if (x.bc().right == EndpointBc::Neumann) {
    out[n] = 0.0;
  } else {
    out[n] = (3.0 * x[n] - 4.0 * x[n - 1] + x[n - 2]) / (2.0 * h);
  }
  return out;
}

GridFunction d2(const GridFunction& x) {
  const int n = x.n();
  const double h2 = x.h() * x.h();
  GridFunction out(n, x.length(), x.bc());
  for (int j = 1; j < n; ++j) out[j] = (x[j - 1] - 2.0 * x[j] + x[j + 1]) / h2;
  if (x.bc().left == EndpointBc::Neumann) {
    out[0] = 2.0 * (x[1] - x[0]) / h2;  // mirror ghost
  } else {
    out[0] = (2.0 * x[0] - 5.0 * x[1] + 4.0 * x[2] - x[3]) / h2;
  }
  if (x.bc().right == EndpointBc::Neumann) {
    out[n] = 2.0 * (x[n - 1] - x[n]) / h2;
  } else {
    out[n] = (2.0 * x[n] - 5.0 * x[n - 1] + 4.0 * x[n - 2] - x[n - 3]) / h2;
  }
  return out;
}

double integrate(const GridFunction& x) {
  const int n = x.n();
  double sum = 0.5 * (x[0] + x[n]);
  for (int j = 1; j < n; ++j) sum += x[j];
  return sum * x.h();
}

double norm(const GridFunction& x, const NormSpec& spec) {
  const int n = x.n();
  switch (spec.kind) {
    case NormSpec::Kind::Linf: {
      double m = 0.0;
      for (int j = 0; j <= n; ++j) m = std::max(m, std::abs(x[j]));
      return m;
    }
    case NormSpec::Kind::Lp: {
      if (spec.p < 1.0) throw std::invalid_argument("norm: Lp requires p >= 1");
      GridFunction tmp(n, x.length(), x.bc());
      for (int j = 0; j <= n; ++j) tmp[j] = std::pow(std::abs(x[j]), spec.p);
      return std::pow(integrate(tmp), 1.0 / spec.p);
    }
    case NormSpec::Kind::SobolevSeminorm: {
      if (spec.q < 1) throw std::invalid_argument("norm: seminorm requires q >= 1");
      GridFunction dx = d1(x);
      const double p = 2.0 * spec.q;
      for (int j = 0; j <= n; ++j) dx[j] = std::pow(std::abs(dx[j]), p);
      return std::pow(integrate(dx), 1.0 / p);
    }
    case NormSpec::Kind::Ug: {
      if (std::abs(x[0]) > 1e-12 || std::abs(x[n]) > 1e-12)
        throw std::invalid_argument("norm: Ug requires u(0) = u(L) = 0");
      GridFunction dx = d1(x);
      for (int j = 0; j <= n; ++j) {
        const double a = std::abs(dx[j]);
        dx[j] = a == 0.0 ? 0.0 : a * extended_inverse(spec.g, a);
      }
      return integrate(dx);
    }
  }
  throw std::logic_error("norm: unreachable");
}

double product_norm(const GridFunction& x1, const NormSpec& n1,
                    const GridFunction& x2, const NormSpec& n2) {
  return norm(x1, n1) + norm(x2, n2);
}

}  // namespace isscert
