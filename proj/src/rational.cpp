#include "gitstab/rational.hpp"

#include "gitstab/error.hpp"

#include <cctype>

namespace gitstab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::BlockDegenerate: return "BlockDegenerate";
    case ErrorCode::NoGap: return "NoGap";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::Schema, "malformed rational '" + std::string(text) + "'");
  }
  const Integer d{std::string(den)};
  if (d == 0) {
    throw Error(ErrorCode::Schema, "zero denominator in '" + std::string(text) + "'");
  }
  const Integer numerator{std::string(num)};
  Rational value(numerator, d);
  return text.front() == '-' ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  return value.str();
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace gitstab
