#include "qcduality/poly.hpp"

#include <Eigen/Dense>

#include <cctype>

namespace qcd {

std::vector<Complex> roots(const Poly<Complex>& p) {
  const int d = p.degree();
  if (d < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.c[i] / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out(d);
  for (int i = 0; i < d; ++i) out[i] = solver.eigenvalues()(i);
  // one Newton polish step per root against the original coefficients
  const Poly<Complex> dp = p.derivative();
  for (auto& r : out) {
    Complex f = p(r), g = dp(r);
    if (std::abs(g) > 0.0) r -= f / g;
  }
  return out;
}

namespace {

mpz_class parse_integer(const std::string& s, const std::string& whole) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) throw parse_error("malformed rational '" + whole + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw parse_error("malformed rational '" + whole + "' at character " + std::to_string(k));
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw parse_error("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num = parse_integer(s.substr(0, slash), text);
    mpz_class den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw parse_error("zero denominator in '" + text + "' at character " + std::to_string(slash + 1));
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    std::string intpart = s.substr(0, dot);
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (intpart == "-" || intpart == "+" || intpart.empty()) intpart += "0";
    mpz_class ip = parse_integer(intpart, text);
    mpz_class fp = frac.empty() ? mpz_class(0) : parse_integer(frac, text);
    if (!frac.empty() && (frac[0] == '+' || frac[0] == '-')) throw parse_error("malformed rational '" + text + "'");
    mpz_class scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    mpz_class num = neg ? mpz_class(ip * scale - fp) : mpz_class(ip * scale + fp);
    Rational q(num, scale);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace qcd
