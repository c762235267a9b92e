#include "conwaykit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace ck {

namespace {

int gcd_int(int a, int b) { return std::gcd(a, b); }

}  // namespace

LaurentPoly LaurentPoly::constant(const std::vector<VarSpec>& vars, Int c) {
  LaurentPoly p(vars);
  p.put(Exps(vars.size(), 0), std::move(c));
  return p;
}

LaurentPoly LaurentPoly::monomial(const std::vector<VarSpec>& vars, const Exps& e, Int c) {
  if (e.size() != vars.size()) throw PolyError("monomial: exponent arity mismatch");
  LaurentPoly p(vars);
  p.put(e, std::move(c));
  return p;
}

LaurentPoly LaurentPoly::single(const std::vector<VarSpec>& vars, const std::string& name, int k,
                                Int c) {
  LaurentPoly p(vars);
  Exps e(vars.size(), 0);
  e[p.var_index(name)] = k;
  p.put(e, std::move(c));
  return p;
}

size_t LaurentPoly::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  throw PolyError("unknown variable: " + name);
}

bool LaurentPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  return c == 1 && std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

void LaurentPoly::put(const Exps& e, Int c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (vars_ != o.vars_) throw PolyError("variable list mismatch");
  for (const auto& [e, c] : o.terms_) put(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (vars_ != o.vars_) throw PolyError("variable list mismatch");
  for (const auto& [e, c] : o.terms_) put(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (vars_ != o.vars_) throw PolyError("variable list mismatch");
  LaurentPoly r(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exps e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.put(e, c1 * c2);
    }
  return r;
}

LaurentPoly LaurentPoly::operator*(const Int& c) const {
  LaurentPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

LaurentPoly LaurentPoly::mul_monomial(const Exps& me, const Int& mc) const {
  if (me.size() != vars_.size()) throw PolyError("mul_monomial: arity mismatch");
  LaurentPoly r(vars_);
  if (mc == 0) return r;
  for (const auto& [e, c] : terms_) {
    Exps ne(e.size());
    for (size_t i = 0; i < e.size(); ++i) ne[i] = e[i] + me[i];
    r.terms_.emplace(ne, c * mc);
  }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r = constant(vars_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::substitute(const std::vector<VarSpec>& tvars,
                                    const std::map<std::string, LaurentPoly>& images) const {
  std::vector<const LaurentPoly*> img(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = images.find(vars_[i].name);
    if (it == images.end()) throw PolyError("substitute: missing image for " + vars_[i].name);
    if (it->second.vars() != tvars) throw PolyError("substitute: image variable list mismatch");
    img[i] = &it->second;
  }
  LaurentPoly result(tvars);
  for (const auto& [e, c] : terms_) {
    LaurentPoly term = constant(tvars, c);
    for (size_t i = 0; i < vars_.size(); ++i) {
      int ei = e[i];
      if (ei == 0) continue;
      int d = vars_[i].den;
      const LaurentPoly& im = *img[i];
      if (im.is_monomial()) {
        const auto& [me, mc] = *im.terms().begin();
        Exps se(tvars.size());
        for (size_t j = 0; j < se.size(); ++j) {
          long long num = static_cast<long long>(me[j]) * ei;
          if (num % d != 0) throw PolyError("substitute: exponent leaves the grid");
          se[j] = static_cast<int>(num / d);
        }
        Int cc;
        if (ei % d == 0) {
          int k = ei / d;
          if (k >= 0) {
            cc = boost::multiprecision::pow(mc, static_cast<unsigned>(k));
          } else {
            if (mc != 1 && mc != -1)
              throw PolyError("substitute: negative power of non-unit coefficient");
            cc = (mc == -1 && (k % 2 != 0)) ? -1 : 1;
          }
        } else {
          if (mc != 1) throw PolyError("substitute: fractional power of non-unit coefficient");
          cc = 1;
        }
        term = term.mul_monomial(se, cc);
      } else {
        if (ei < 0) throw PolyError("substitute: negative power into non-monomial image");
        if (ei % d != 0) throw PolyError("substitute: fractional power into non-monomial image");
        term = term * im.pow(static_cast<unsigned>(ei / d));
      }
    }
    result += term;
  }
  return result;
}

LaurentPoly LaurentPoly::div_exact(const LaurentPoly& q, const std::string& name) const {
  if (vars_ != q.vars_) throw PolyError("div_exact: variable list mismatch");
  if (q.is_zero()) throw PolyError("div_exact: zero divisor");
  if (is_zero()) return *this;
  size_t vi = var_index(name);
  int D = q.max_exp(name);
  const Exps* qe = nullptr;
  const Int* qc = nullptr;
  for (const auto& [e, c] : q.terms_)
    if (e[vi] == D) {
      if (qe) throw PolyError("div_exact: divisor top slice is not a single term");
      qe = &e;
      qc = &c;
    }
  int floor_exp = min_exp(name) - q.min_exp(name);
  LaurentPoly p = *this, quot(vars_);
  while (!p.is_zero()) {
    int E = p.max_exp(name);
    if (E - D < floor_exp) throw PolyError("div_exact: not divisible");
    LaurentPoly qt(vars_);
    for (const auto& [e, c] : p.terms_)
      if (e[vi] == E) {
        if (c % *qc != 0) throw PolyError("div_exact: not divisible");
        Exps ne(e.size());
        for (size_t j = 0; j < ne.size(); ++j) ne[j] = e[j] - (*qe)[j];
        qt.terms_.emplace(ne, c / *qc);
      }
    quot += qt;
    p -= q * qt;
  }
  return quot;
}

LaurentPoly LaurentPoly::regrid(const std::vector<VarSpec>& newvars) const {
  if (newvars.size() != vars_.size()) throw PolyError("regrid: arity mismatch");
  for (size_t i = 0; i < vars_.size(); ++i)
    if (newvars[i].name != vars_[i].name) throw PolyError("regrid: name mismatch");
  LaurentPoly r(newvars);
  for (const auto& [e, c] : terms_) {
    Exps ne(e.size());
    for (size_t i = 0; i < e.size(); ++i) {
      long long num = static_cast<long long>(e[i]) * newvars[i].den;
      if (num % vars_[i].den != 0) throw PolyError("regrid: exponent leaves the grid");
      ne[i] = static_cast<int>(num / vars_[i].den);
    }
    r.terms_.emplace(ne, c);
  }
  return r;
}

LaurentPoly LaurentPoly::slice(const std::string& name, int k) const {
  size_t vi = var_index(name);
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (e[vi] == k) {
      Exps ne = e;
      ne[vi] = 0;
      r.terms_.emplace(ne, c);
    }
  return r;
}

std::complex<double> LaurentPoly::eval(
    const std::map<std::string, std::complex<double>>& at) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.convert_to<double>();
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = at.find(vars_[i].name);
      if (it == at.end()) throw PolyError("eval: missing value for " + vars_[i].name);
      t *= std::pow(it->second, static_cast<double>(e[i]) / vars_[i].den);
    }
    sum += t;
  }
  return sum;
}

int LaurentPoly::min_exp(const std::string& name) const {
  size_t vi = var_index(name);
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[vi] < m) m = e[vi];
    first = false;
  }
  return m;
}

int LaurentPoly::max_exp(const std::string& name) const {
  size_t vi = var_index(name);
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[vi] > m) m = e[vi];
    first = false;
  }
  return m;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  int L = 1;
  for (const auto& v : vars_) L = L / gcd_int(L, v.den) * v.den;
  std::vector<const std::pair<const Exps, Int>*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  auto graded = [&](const Exps& e) {
    long long g = 0;
    for (size_t i = 0; i < e.size(); ++i) g += static_cast<long long>(e[i]) * (L / vars_[i].den);
    return g;
  };
  std::sort(order.begin(), order.end(), [&](auto* a, auto* b) {
    long long ga = graded(a->first), gb = graded(b->first);
    if (ga != gb) return ga < gb;
    return a->first < b->first;
  });
  std::ostringstream out;
  bool first = true;
  for (auto* t : order) {
    const auto& [e, c] = *t;
    Int a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::vector<std::string> factors;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int num = e[i], den = vars_[i].den;
      int g = gcd_int(std::abs(num), den);
      num /= g;
      den /= g;
      std::string f = vars_[i].name;
      if (!(num == 1 && den == 1)) {
        f += "^" + std::to_string(num);
        if (den != 1) f += "/" + std::to_string(den);
      }
      factors.push_back(f);
    }
    if (factors.empty()) {
      out << a;
    } else {
      std::string head;
      if (a != 1) head = a.str() + "*";
      out << head;
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out << "*";
        out << factors[i];
      }
    }
  }
  return out.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text, const std::vector<VarSpec>& vars) {
  LaurentPoly result(vars);
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw PolyError("parse: " + msg + " at offset " + std::to_string(pos));
  };
  skip();
  if (pos >= text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) fail("empty input");
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected + or -");
    }
    skip();
    Int coeff = 1;
    bool sawcoeff = false, sawfactor = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      coeff = Int(text.substr(start, pos - start));
      sawcoeff = true;
    }
    Exps e(vars.size(), 0);
    while (true) {
      skip();
      size_t save = pos;
      if (sawcoeff || sawfactor) {
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          skip();
        } else {
          break;
        }
      }
      if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        if (sawcoeff || sawfactor) fail("expected variable after *");
        pos = save;
        break;
      }
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      size_t vi = vars.size();
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) vi = i;
      if (vi == vars.size()) fail("unknown variable " + name);
      long long num = 1, den = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        bool neg = false;
        if (pos < text.size() && text[pos] == '-') {
          neg = true;
          ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
          fail("expected exponent");
        num = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          num = num * 10 + (text[pos++] - '0');
        if (neg) num = -num;
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected exponent denominator");
          den = 0;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            den = den * 10 + (text[pos++] - '0');
          if (den == 0) fail("zero exponent denominator");
        }
      }
      long long grid = num * vars[vi].den;
      if (grid % den != 0) fail("exponent off the grid for " + name);
      grid /= den;
      if (grid > 1000000 || grid < -1000000) fail("exponent out of range");
      e[vi] += static_cast<int>(grid);
      sawfactor = true;
    }
    if (!sawcoeff && !sawfactor) fail("expected term");
    result.put(e, sign < 0 ? Int(-coeff) : coeff);
    first = false;
  }
  return result;
}

std::string LaurentPoly::json() const {
  nlohmann::json j;
  j["vars"] = nlohmann::json::array();
  for (const auto& v : vars_) j["vars"].push_back({{"name", v.name}, {"den", v.den}});
  j["terms"] = nlohmann::json::array();
  for (const auto& [e, c] : terms_) j["terms"].push_back({e, c.str()});
  return j.dump();
}

LaurentPoly LaurentPoly::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<VarSpec> vars;
  for (const auto& v : j.at("vars")) vars.push_back({v.at("name").get<std::string>(), v.at("den").get<int>()});
  LaurentPoly p(vars);
  for (const auto& t : j.at("terms")) {
    Exps e = t.at(0).get<Exps>();
    if (e.size() != vars.size()) throw PolyError("from_json: exponent arity mismatch");
    Int c = t.at(1).is_string() ? Int(t.at(1).get<std::string>()) : Int(t.at(1).get<long long>());
    p.put(e, c);
  }
  return p;
}

}  // namespace ck
