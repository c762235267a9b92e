#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ck {

using Int = boost::multiprecision::cpp_int;

// Exponent vector, one entry per variable, in grid units of 1/den.
using Exps = std::vector<int>;

struct VarSpec {
  std::string name;
  int den = 1;
  bool operator==(const VarSpec&) const = default;
};

struct PolyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse Laurent polynomial with exact integer coefficients over an ordered
// variable list.  Exponents may be negative; a variable with den = d carries
// exponents on the 1/d grid (stored as integer multiples of 1/d).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::vector<VarSpec> vars) : vars_(std::move(vars)) {}

  static LaurentPoly zero(const std::vector<VarSpec>& vars) { return LaurentPoly(vars); }
  static LaurentPoly constant(const std::vector<VarSpec>& vars, Int c);
  static LaurentPoly monomial(const std::vector<VarSpec>& vars, const Exps& e, Int c);
  // x^k (k in grid units) for the named variable.
  static LaurentPoly single(const std::vector<VarSpec>& vars, const std::string& name, int k = 1,
                            Int c = 1);

  const std::vector<VarSpec>& vars() const { return vars_; }
  const std::map<Exps, Int>& terms() const { return terms_; }
  size_t var_index(const std::string& name) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool operator==(const LaurentPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Int& c) const;
  LaurentPoly mul_monomial(const Exps& e, const Int& c) const;
  LaurentPoly pow(unsigned k) const;

  // Substitute every variable; images share the target variable list.  An image
  // must be a single monomial (then any exponent of the source variable is
  // allowed, with unit-coefficient checks for negative or fractional powers),
  // or else the source polynomial may use only nonnegative integral powers of
  // that variable.
  LaurentPoly substitute(const std::vector<VarSpec>& tvars,
                         const std::map<std::string, LaurentPoly>& images) const;

  // Exact division by a divisor whose top slice in `name` is a single term.
  // Throws PolyError when the division is not exact.
  LaurentPoly div_exact(const LaurentPoly& divisor, const std::string& name) const;

  // Reinterpret exponents on a finer grid (new dens must be multiples).
  LaurentPoly regrid(const std::vector<VarSpec>& newvars) const;

  // Terms whose grid exponent of `name` equals k, with that exponent zeroed.
  LaurentPoly slice(const std::string& name, int k) const;

  std::complex<double> eval(const std::map<std::string, std::complex<double>>& at) const;

  // Grid-unit exponent range per variable (zero polynomial reports 0).
  int min_exp(const std::string& name) const;
  int max_exp(const std::string& name) const;
  int span(const std::string& name) const { return max_exp(name) - min_exp(name); }

  std::string str() const;
  static LaurentPoly parse(const std::string& text, const std::vector<VarSpec>& vars);
  std::string json() const;
  static LaurentPoly from_json(const std::string& text);

 private:
  void put(const Exps& e, Int c);  // adds, erasing zeros
  std::vector<VarSpec> vars_;
  std::map<Exps, Int> terms_;
};

inline LaurentPoly operator*(const Int& c, const LaurentPoly& p) { return p * c; }

}  // namespace ck
