#include "pfrad/gaussian.hpp"

namespace pfrad {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string out;
  if (sgn(re_) != 0) out += re_.get_str();
  if (sgn(im_) > 0 && !out.empty()) out += "+";
  out += im_.get_str();
  out += "i";
  return out;
}

GaussianRational GaussianRational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty gaussian rational");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  std::string body = s.substr(0, s.size() - 1);
  // split at the last top-level +/- that is not a leading sign
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' && body[k - 1] != '+' &&
        body[k - 1] != '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return GaussianRational(mpq_class(0), parse_rational(body));
  std::string im = body.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return GaussianRational(parse_rational(body.substr(0, split)), parse_rational(im));
}

}  // namespace pfrad
