#include "wzs/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace wzs {

Sequence::Sequence(FiniteAbelianGroup group) : group_(std::move(group)), exps_(group_.order(), 0) {}

Sequence Sequence::from_elements(const FiniteAbelianGroup& group, std::span<const ElemId> elems) {
  Sequence s(group);
  for (ElemId g : elems) {
    if (g >= group.order()) fail(ErrorCode::GroupMismatch, "element index out of range");
    s.add(g);
  }
  return s;
}

namespace {

class LiteralParser {
 public:
  LiteralParser(const FiniteAbelianGroup& group, std::string_view text) : group_(group), text_(text) {}

  Sequence run() {
    Sequence s(group_);
    skip_ws();
    expect('[');
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      finish();
      return s;
    }
    while (true) {
      skip_ws();
      ElemId g = parse_element();
      skip_ws();
      std::uint32_t k = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        long long m = parse_int();
        if (m < 1) error("multiplicity must be positive");
        k = static_cast<std::uint32_t>(m);
      }
      s.add(g, k);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    finish();
    return s;
  }

 private:
  ElemId parse_element() {
    expect('(');
    std::vector<long long> coords;
    skip_ws();
    if (peek() != ')') {
      while (true) {
        skip_ws();
        coords.push_back(parse_int());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    const std::size_t open = pos_;
    expect(')');
    if (coords.size() != static_cast<std::size_t>(group_.rank())) {
      pos_ = open;
      error("element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
            std::to_string(group_.rank()));
    }
    return group_.index_of(coords);
  }

  long long parse_int() {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) error("expected integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void finish() {
    skip_ws();
    if (pos_ != text_.size()) error("trailing characters");
  }
  [[noreturn]] void error(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("sequence literal: " + what, line, col);
  }

  const FiniteAbelianGroup& group_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Sequence Sequence::parse(const FiniteAbelianGroup& group, std::string_view literal) {
  return LiteralParser(group, literal).run();
}

void Sequence::add(ElemId g, std::uint32_t k) {
  exps_.at(g) += k;
  length_ += k;
}

void Sequence::remove(ElemId g, std::uint32_t k) {
  if (exps_.at(g) < k) fail(ErrorCode::NotASubsequence, group_.format(g) + " not in sequence");
  exps_[g] -= k;
  length_ -= k;
}

std::vector<ElemId> Sequence::support() const {
  std::vector<ElemId> out;
  for (ElemId g = 0; g < exps_.size(); ++g) {
    if (exps_[g]) out.push_back(g);
  }
  return out;
}

std::vector<ElemId> Sequence::elements() const {
  std::vector<ElemId> out;
  out.reserve(length_);
  for (ElemId g = 0; g < exps_.size(); ++g) out.insert(out.end(), exps_[g], g);
  return out;
}

Sequence Sequence::operator*(const Sequence& other) const {
  if (!(group_ == other.group_)) fail(ErrorCode::GroupMismatch, "product of sequences over different groups");
  Sequence out = *this;
  for (ElemId g = 0; g < exps_.size(); ++g) out.exps_[g] += other.exps_[g];
  out.length_ += other.length_;
  return out;
}

Sequence Sequence::power(std::uint32_t k) const {
  Sequence out = *this;
  for (auto& e : out.exps_) e *= k;
  out.length_ *= k;
  return out;
}

bool Sequence::divides(const Sequence& other) const {
  if (!(group_ == other.group_)) fail(ErrorCode::GroupMismatch, "divisibility across groups");
  for (std::size_t g = 0; g < exps_.size(); ++g) {
    if (exps_[g] > other.exps_[g]) return false;
  }
  return true;
}

std::string Sequence::to_string() const {
  std::string out = "[";
  bool first = true;
  for (ElemId g = 0; g < exps_.size(); ++g) {
    if (!exps_[g]) continue;
    if (!first) out += ',';
    first = false;
    out += group_.format(g);
    if (exps_[g] > 1) out += '^' + std::to_string(exps_[g]);
  }
  out += ']';
  return out;
}

std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
  if (auto c = a.length_ <=> b.length_; c != 0) return c;
  // Equal lengths: compare sorted element lists, i.e. the first index where
  // the exponent tables differ decides (larger exponent means smaller list).
  for (std::size_t g = 0; g < a.exps_.size() && g < b.exps_.size(); ++g) {
    if (a.exps_[g] != b.exps_[g]) return b.exps_[g] <=> a.exps_[g];
  }
  return a.exps_.size() <=> b.exps_.size();
}

GSubset sumset(const FiniteAbelianGroup& group, const GSubset& a, std::span<const ElemId> b) {
  GSubset out;
  const std::size_t n = group.order();
  for (std::size_t x = 0; x < n; ++x) {
    if (!a.contains(static_cast<ElemId>(x))) continue;
    for (ElemId y : b) out.insert(group.add(static_cast<ElemId>(x), y));
  }
  return out;
}

GSubset sumset(const FiniteAbelianGroup& group, const GSubset& a, const GSubset& b) {
  const auto list = b.elements(group.order());
  return sumset(group, a, std::span<const ElemId>(list));
}

ElemId sigma(const Sequence& s) {
  const auto& group = s.group();
  ElemId acc = group.zero();
  for (ElemId g = 0; g < group.order(); ++g) {
    if (s.multiplicity(g)) acc = group.add(acc, group.scale(s.multiplicity(g), g));
  }
  return acc;
}

namespace {
void require_group(const Sequence& s, const WeightSet& w) {
  if (!(s.group() == w.group())) fail(ErrorCode::GroupMismatch, "sequence and weight set groups differ");
}
}  // namespace

GSubset sigma_gamma(const Sequence& s, const WeightSet& weights) {
  require_group(s, weights);
  const auto& group = s.group();
  GSubset acc = GSubset::singleton(group.zero());
  for (ElemId g = 0; g < group.order(); ++g) {
    for (std::uint32_t k = 0; k < s.multiplicity(g); ++k) {
      acc = sumset(group, acc, std::span<const ElemId>(weights.orbit_list(g)));
    }
  }
  return acc;
}

bool is_wzs(const Sequence& s, const WeightSet& weights) {
  return sigma_gamma(s, weights).contains(s.group().zero());
}

GSubset big_sigma_gamma(const Sequence& s, const WeightSet& weights) {
  require_group(s, weights);
  const auto& group = s.group();
  GSubset reach;  // weighted sums of nonempty subsequences of the prefix
  for (ElemId g = 0; g < group.order(); ++g) {
    for (std::uint32_t k = 0; k < s.multiplicity(g); ++k) {
      const auto& orbit = weights.orbit_list(g);
      reach = reach | sumset(group, reach, std::span<const ElemId>(orbit)) | weights.orbit(g);
    }
  }
  return reach;
}

bool is_wzs_free(const Sequence& s, const WeightSet& weights) {
  return !big_sigma_gamma(s, weights).contains(s.group().zero());
}

Sequence quotient(const Sequence& u, const Sequence& b) {
  if (!(u.group() == b.group())) fail(ErrorCode::GroupMismatch, "quotient across groups");
  if (!u.divides(b)) fail(ErrorCode::NotASubsequence, u.to_string() + " does not divide " + b.to_string());
  Sequence q = b;
  for (ElemId g = 0; g < u.group().order(); ++g) {
    if (u.multiplicity(g)) q.remove(g, u.multiplicity(g));
  }
  return q;
}

bool divides_in_monoid(const Sequence& u, const Sequence& b, const WeightSet& weights) {
  if (!is_wzs(u, weights)) fail(ErrorCode::NotInMonoid, u.to_string());
  if (!is_wzs(b, weights)) fail(ErrorCode::NotInMonoid, b.to_string());
  if (!u.divides(b)) return false;
  return is_wzs(quotient(u, b), weights);
}

}  // namespace wzs
