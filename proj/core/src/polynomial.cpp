#include "orbitkit/polynomial.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "orbitkit/lattice_cone.hpp"

namespace orbitkit {

namespace {

void check_exponent(int vars, const std::vector<Int>& e) {
  if (static_cast<int>(e.size()) != vars)
    throw std::invalid_argument("exponent length does not match variable count");
  for (Int v : e)
    if (v < 0) throw std::invalid_argument("holomorphic monomials need exponents >= 0");
}

}  // namespace

Polynomial Polynomial::constant(int vars, std::complex<double> c) {
  Polynomial p(vars);
  p.add_term(std::vector<Int>(vars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int vars, std::vector<Int> exponent,
                                std::complex<double> coeff) {
  Polynomial p(vars);
  p.add_term(std::move(exponent), coeff);
  return p;
}

Polynomial Polynomial::coordinate(int vars, int j) {
  if (j < 0 || j >= vars) throw std::invalid_argument("coordinate index out of range");
  std::vector<Int> e(vars, 0);
  e[j] = 1;
  return monomial(vars, std::move(e));
}

Polynomial& Polynomial::add_term(std::vector<Int> exponent, std::complex<double> coeff) {
  check_exponent(vars, exponent);
  auto [it, fresh] = terms.emplace(std::move(exponent), coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == std::complex<double>(0.0, 0.0)) terms.erase(it);
  }
  return *this;
}

std::complex<double> Polynomial::eval(const Eigen::VectorXcd& z) const {
  if (z.size() != vars) throw std::invalid_argument("evaluation point dimension mismatch");
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [e, c] : terms) {
    std::complex<double> t = c;
    for (int j = 0; j < vars; ++j)
      for (Int k = 0; k < e[j]; ++k) t *= z(j);
    acc += t;
  }
  return acc;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms)
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), Int(0))));
  return d;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.vars != b.vars) throw std::invalid_argument("mixed variable counts");
  Polynomial out = a;
  for (const auto& [e, c] : b.terms) out.add_term(e, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + (std::complex<double>(-1.0, 0.0) * b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.vars != b.vars) throw std::invalid_argument("mixed variable counts");
  Polynomial out(a.vars);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<Int> e(a.vars);
      for (int j = 0; j < a.vars; ++j) e[j] = ea[j] + eb[j];
      out.add_term(std::move(e), ca * cb);
    }
  }
  return out;
}

Polynomial operator*(std::complex<double> s, const Polynomial& a) {
  Polynomial out(a.vars);
  for (const auto& [e, c] : a.terms) out.add_term(e, s * c);
  return out;
}

std::string exponent_key(const std::vector<Int>& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << c[i];
  }
  return os.str();
}

MonomialTable MonomialTable::build(int vars, int degree, std::size_t cap) {
  if (vars < 1) throw std::invalid_argument("monomial table needs variables");
  if (degree < 0) throw std::invalid_argument("degree bound must be nonnegative");
  MonomialTable t;
  t.vars = vars;
  t.degree = degree;

  // Graded order; within a degree the order is the map order of the previous
  // layer, which makes the whole table deterministic.
  std::vector<int> prev_layer;  // indices of degree d-1 monomials
  for (int d = 1; d <= degree; ++d) {
    std::map<std::vector<Int>, std::pair<int, int>> layer;  // exponent -> (parent, var)
    if (d == 1) {
      for (int j = 0; j < vars; ++j) {
        std::vector<Int> e(vars, 0);
        e[j] = 1;
        layer.emplace(std::move(e), std::make_pair(-1, j));
      }
    } else {
      for (int pi : prev_layer) {
        for (int j = 0; j < vars; ++j) {
          std::vector<Int> e = t.exponents[pi];
          e[j] += 1;
          layer.emplace(std::move(e), std::make_pair(pi, j));
        }
      }
    }
    prev_layer.clear();
    for (auto& [e, pv] : layer) {
      if (t.exponents.size() >= cap)
        throw ResourceLimitError("monomial family exceeds the configured cap");
      const int idx = static_cast<int>(t.exponents.size());
      t.index_.emplace(e, idx);
      t.exponents.push_back(e);
      t.parent.push_back(pv.first);
      t.var.push_back(pv.second);
      prev_layer.push_back(idx);
    }
  }
  return t;
}

void MonomialTable::eval_all(const Eigen::VectorXcd& z,
                             std::vector<std::complex<double>>& out) const {
  out.resize(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const std::complex<double> base =
        parent[i] < 0 ? std::complex<double>(1.0, 0.0) : out[parent[i]];
    out[i] = base * z(var[i]);
  }
  (void)vars;
}

int MonomialTable::index_of(const std::vector<Int>& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace orbitkit
