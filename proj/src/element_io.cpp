#include "mhv/element_io.hpp"

#include "mhv/errors.hpp"

#include <cctype>
#include <sstream>

namespace mhv {

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& detail)
    : Error([&] {
        std::ostringstream os;
        os << "parse error at position " << position << ": " << detail << " (expected one of:";
        for (const auto& e : expected) os << " '" << e << "'";
        os << ")";
        return os.str();
      }()),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

class ElementParser {
 public:
  explicit ElementParser(std::string_view text) : text_(text) {}

  Element parse() {
    Element out;
    skip_ws();
    bool negate = false;
    if (peek() == '-' && !digit_at(pos_ + 1)) {
      negate = true;
      ++pos_;
    }
    parse_term(out, negate);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char op = peek();
      if (op != '+' && op != '-') fail({"+", "-", "end of input"}, "unexpected character");
      ++pos_;
      parse_term(out, op == '-');
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool digit_at(std::size_t i) const {
    return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
    throw ParseError(pos_, std::move(expected), detail);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail({std::string(1, c)}, "unexpected character");
    ++pos_;
  }

  // int := ['-'] digits
  Integer parse_int(bool allow_sign) {
    skip_ws();
    const std::size_t start = pos_;
    if (allow_sign && peek() == '-') ++pos_;
    if (!digit_at(pos_)) {
      pos_ = start;
      fail(allow_sign ? std::vector<std::string>{"-", "integer"} : std::vector<std::string>{"integer"},
           "expected an integer");
    }
    while (digit_at(pos_)) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int parse_index() {
    const std::size_t start = pos_;
    Integer v = parse_int(true);
    if (v > 1'000'000'000 || v < -1'000'000'000) {
      pos_ = start;
      fail({"integer"}, "index out of range");
    }
    return v.convert_to<int>();
  }

  Rational parse_coef() {
    Integer num = parse_int(true);
    skip_ws();
    if (peek() != '/') return Rational(num);
    ++pos_;
    skip_ws();
    const std::size_t den_pos = pos_;
    Integer den = parse_int(false);
    if (den == 0) {
      pos_ = den_pos;
      fail({"positive integer"}, "zero denominator");
    }
    return Rational(num, den);
  }

  Basis parse_gen() {
    skip_ws();
    switch (peek()) {
      case 'c':
        ++pos_;
        return Basis::c();
      case 'l':
        ++pos_;
        return Basis::l();
      case 'd':
      case 'h': {
        const bool is_d = peek() == 'd';
        ++pos_;
        expect('[');
        const int idx = parse_index();
        expect(']');
        return is_d ? Basis::d(idx) : Basis::h(idx);
      }
      default:
        fail({"d[", "h[", "c", "l"}, "expected a generator");
    }
  }

  void parse_term(Element& out, bool negate) {
    skip_ws();
    const std::size_t term_pos = pos_;
    const char c = peek();
    if (c == 'd' || c == 'h' || c == 'c' || c == 'l') {
      out.add_term(parse_gen(), Rational(negate ? -1 : 1));
      return;
    }
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-')) {
      fail({"integer", "d[", "h[", "c", "l"}, "expected a term");
    }
    Rational coef = parse_coef();
    if (negate) coef = -coef;
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      out.add_term(parse_gen(), coef);
      return;
    }
    if (!coef.is_zero()) {
      pos_ = term_pos;
      fail({"*"}, "a scalar term must be zero; the algebra has no unit");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InvalidArgument("expected a rational string \"p/q\", got " + j.dump());
}

Json window_to_json(const Window& w) {
  Json out = Json::object();
  out["outer"] = w.outer();
  out["interior"] = w.interior();
  return out;
}

Window window_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("outer") || !j.at("outer").is_number_integer()) {
    throw InvalidArgument("window JSON needs an integer \"outer\"");
  }
  const int outer = j.at("outer").get<int>();
  const int interior = j.contains("interior") ? j.at("interior").get<int>() : outer;
  return Window(outer, interior);
}

Element parse_element(std::string_view text) { return ElementParser(text).parse(); }

std::string format_element(const Element& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : x.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += basis_key(b);
    first = false;
  }
  return out;
}

Json element_to_json(const Element& x) {
  Json out = Json::object();
  Json d = Json::object();
  Json h = Json::object();
  for (const auto& [b, c] : x.terms()) {
    switch (b.kind) {
      case Kind::D:
        d[std::to_string(b.index)] = to_pq_string(c);
        break;
      case Kind::H:
        h[std::to_string(b.index)] = to_pq_string(c);
        break;
      case Kind::C:
        out["c"] = to_pq_string(c);
        break;
      case Kind::L:
        out["l"] = to_pq_string(c);
        break;
    }
  }
  // Group order d, h, c, l regardless of insertion order above.
  Json ordered = Json::object();
  if (!d.empty()) ordered["d"] = std::move(d);
  if (!h.empty()) ordered["h"] = std::move(h);
  if (out.contains("c")) ordered["c"] = out["c"];
  if (out.contains("l")) ordered["l"] = out["l"];
  return ordered;
}

Element element_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("element JSON must be an object");
  Element out;
  for (const auto& [key, value] : j.items()) {
    if (key == "d" || key == "h") {
      if (!value.is_object()) throw InvalidArgument("element group '" + key + "' must be an object");
      for (const auto& [idx, coef] : value.items()) {
        std::size_t used = 0;
        const int i = std::stoi(idx, &used);
        if (used != idx.size()) throw InvalidArgument("bad index '" + idx + "'");
        out.add_term(key == "d" ? Basis::d(i) : Basis::h(i), rational_from_json(coef));
      }
    } else if (key == "c") {
      out.add_term(Basis::c(), rational_from_json(value));
    } else if (key == "l") {
      out.add_term(Basis::l(), rational_from_json(value));
    } else {
      throw InvalidArgument("unknown element key '" + key + "'");
    }
  }
  return out;
}

Basis parse_basis_key(std::string_view key) {
  const Element e = parse_element(key);
  if (e.size() != 1 || e.terms().begin()->second != 1) {
    throw InvalidArgument("not a basis key: '" + std::string(key) + "'");
  }
  return e.terms().begin()->first;
}

}  // namespace mhv
