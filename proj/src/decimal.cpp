#include "anticyc/decimal.hpp"

#include "anticyc/errors.hpp"

namespace anticyc {

namespace {

std::string render(const Int& scaled, int places, bool negative) {
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative && scaled != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return out;
}

}  // namespace

std::string decimal_round(const Rat& q, int places) {
  if (places < 0) fail(ErrorCode::InvalidArgument, "negative decimal places");
  Rat a = abs(q) * Rat(ipow(10, places));
  Int num = a.get_num(), den = a.get_den();
  Int scaled = (2 * num + den) / (2 * den);
  return render(scaled, places, q < 0);
}

std::string decimal_trunc(const Rat& q, int places) {
  if (places < 0) fail(ErrorCode::InvalidArgument, "negative decimal places");
  Rat a = abs(q) * Rat(ipow(10, places));
  Int scaled = a.get_num() / a.get_den();
  return render(scaled, places, q < 0);
}

Rat parse_decimal(const std::string& s) {
  bool neg = !s.empty() && s[0] == '-';
  std::string body = neg ? s.substr(1) : s;
  auto dot = body.find('.');
  std::string ip = dot == std::string::npos ? body : body.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : body.substr(dot + 1);
  if (ip.empty()) ip = "0";
  Int n(ip + fp);
  Rat r(n, ipow(10, fp.size()));
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

int decimal_places_of(const std::string& s) {
  auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

}  // namespace anticyc
