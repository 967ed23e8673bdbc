#include "qcduality/multipoly.hpp"

#include <sstream>

namespace qcd {

MultiPoly::Exponents MultiPoly::canonical(Exponents e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

MultiPoly MultiPoly::variable(int index, int power) {
  Exponents e(index + 1, 0);
  e[index] = power;
  return monomial(std::move(e), Rational(1));
}

MultiPoly MultiPoly::monomial(Exponents e, const Rational& c) {
  MultiPoly out;
  if (!qcd::is_zero(c)) out.terms_[canonical(std::move(e))] = c;
  return out;
}

int MultiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    best = std::max(best, d);
  }
  return best;
}

Rational MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(canonical(e));
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (qcd::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(e, Rational(-c));
    if (!fresh) {
      it->second -= c;
      if (qcd::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MultiPoly::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
      for (std::size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
      Rational c = ca * cb;
      auto [it, fresh] = out.terms_.emplace(std::move(e), c);
      if (!fresh) {
        it->second += c;
        if (qcd::is_zero(it->second)) out.terms_.erase(it);
      }
    }
  return out;
}

MultiPoly MultiPoly::scaled(const Rational& s) const {
  MultiPoly out;
  if (qcd::is_zero(s)) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
  return out;
}

MultiPoly MultiPoly::truncated(int d) const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    int deg = 0;
    for (int k : e) deg += k;
    if (deg <= d) out.terms_.emplace(e, c);
  }
  return out;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& values) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k >= values.size()) throw error("MultiPoly::evaluate: missing variable value");
      term *= pow_int(values[k], e[k]);
    }
    acc += term;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) os << "*v" << k << "^" << e[k];
  }
  return os.str();
}

}  // namespace qcd
