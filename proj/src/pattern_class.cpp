#include "pattern_class.hpp"

#include <cctype>

namespace permlab {

PatternClass PatternClass::leaf(std::vector<Permutation> basis) {
  if (basis.empty()) throw InvalidInput("class basis must be nonempty");
  for (const Permutation& q : basis) {
    if (q.size() < 2) throw InvalidInput("basis elements must have length >= 2");
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  // Keep only the minimal elements under involvement.
  std::vector<Permutation> minimal;
  for (const Permutation& q : basis) {
    bool redundant = false;
    for (const Permutation& m : minimal) {
      if (involves(q, m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(q);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->basis = std::move(minimal);
  return PatternClass(std::move(n));
}

PatternClass PatternClass::node(Kind kind, PatternClass a, const PatternClass* b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = std::make_shared<const PatternClass>(std::move(a));
  if (b) n->right = std::make_shared<const PatternClass>(*b);
  return PatternClass(std::move(n));
}

PatternClass PatternClass::union_of(PatternClass a, PatternClass b) {
  return node(Kind::Union, std::move(a), &b);
}
PatternClass PatternClass::sum(PatternClass a, PatternClass b) {
  return node(Kind::DirectSum, std::move(a), &b);
}
PatternClass PatternClass::juxtaposition(PatternClass a, PatternClass b) {
  return node(Kind::Juxtaposition, std::move(a), &b);
}
PatternClass PatternClass::merge(PatternClass a, PatternClass b) {
  return node(Kind::Merge, std::move(a), &b);
}
PatternClass PatternClass::rotation(PatternClass a) { return node(Kind::Rotation, std::move(a), nullptr); }

std::string PatternClass::to_string() const {
  switch (kind()) {
    case Kind::Leaf: {
      std::string out = "av(";
      for (std::size_t i = 0; i < basis().size(); ++i) {
        if (i) out += ",";
        out += compact_form(basis()[i]);
      }
      return out + ")";
    }
    case Kind::Union: return "union(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::DirectSum: return "sum(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::Juxtaposition: return "juxt(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::Merge: return "merge(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::Rotation: return "rot(" + left().to_string() + ")";
  }
  return {};
}

std::size_t min_basis_length(const PatternClass& leaf) {
  std::size_t m = SIZE_MAX;
  for (const Permutation& q : leaf.basis()) m = std::min(m, q.size());
  return m;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PatternClass parse() {
    PatternClass c = parse_class();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("class expression: " + why + " at offset " + std::to_string(pos_) + " in '" +
                       std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip_ws();
    std::string w;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_]))));
      ++pos_;
    }
    return w;
  }

  Permutation element() {
    skip_ws();
    std::vector<Value> values;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      const std::size_t close = text_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated '['");
      try {
        Permutation p = parse_permutation(text_.substr(pos_, close - pos_));
        pos_ = close + 1;
        return p;
      } catch (const InvalidInput& e) {
        fail(std::string("malformed basis element: ") + e.what());
      }
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      values.push_back(static_cast<Value>(text_[pos_] - '0'));
      ++pos_;
    }
    if (values.empty()) fail("expected a basis element");
    try {
      return Permutation(std::move(values));
    } catch (const InvalidInput& e) {
      fail(std::string("malformed basis element: ") + e.what());
    }
  }

  PatternClass parse_class() {
    const std::size_t at = pos_;
    const std::string w = word();
    if (w == "av") {
      expect('(');
      std::vector<Permutation> basis{element()};
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        basis.push_back(element());
        skip_ws();
      }
      expect(')');
      try {
        return PatternClass::leaf(std::move(basis));
      } catch (const InvalidInput& e) {
        pos_ = at;
        fail(e.what());
      }
    }
    if (w == "rot") {
      expect('(');
      PatternClass a = parse_class();
      expect(')');
      return PatternClass::rotation(std::move(a));
    }
    if (w == "union" || w == "sum" || w == "juxt" || w == "merge") {
      expect('(');
      PatternClass a = parse_class();
      expect(',');
      PatternClass b = parse_class();
      expect(')');
      if (w == "union") return PatternClass::union_of(std::move(a), std::move(b));
      if (w == "sum") return PatternClass::sum(std::move(a), std::move(b));
      if (w == "juxt") return PatternClass::juxtaposition(std::move(a), std::move(b));
      return PatternClass::merge(std::move(a), std::move(b));
    }
    pos_ = at;
    fail(w.empty() ? "expected a class" : "unknown constructor '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Membership of a child class for a growing part whose newest entry is last.
// Leaf children only need to look at occurrences ending at the new entry.
bool part_still_member(const PatternClass& c, const std::vector<Value>& part,
                       const MembershipLimits& limits) {
  if (c.is_leaf()) {
    for (const Permutation& q : c.basis()) {
      if (involves_at_end(part, q)) return false;
    }
    return true;
  }
  return member(c, pattern_of(part), limits);
}

struct MergeSearch {
  const PatternClass& a;
  const PatternClass& b;
  const Permutation& p;
  const MembershipLimits& limits;
  bool symmetric;
  std::vector<Value> part_a;
  std::vector<Value> part_b;

  bool run(std::size_t i) {
    if (i == p.size()) return true;
    part_a.push_back(p[i]);
    if (part_still_member(a, part_a, limits) && run(i + 1)) return true;
    part_a.pop_back();
    // With identical children, colourings come in swapped pairs; fixing the
    // first entry to side A loses nothing.
    if (symmetric && i == 0) return false;
    part_b.push_back(p[i]);
    if (part_still_member(b, part_b, limits) && run(i + 1)) return true;
    part_b.pop_back();
    return false;
  }
};

}  // namespace

PatternClass parse_class(std::string_view text) { return Parser(text).parse(); }

bool member(const PatternClass& c, const Permutation& p, const MembershipLimits& limits) {
  using Kind = PatternClass::Kind;
  const std::size_t n = p.size();
  switch (c.kind()) {
    case Kind::Leaf:
      for (const Permutation& q : c.basis()) {
        if (involves(p, q)) return false;
      }
      return true;
    case Kind::Union:
      return member(c.left(), p, limits) || member(c.right(), p, limits);
    case Kind::DirectSum: {
      // Corner cuts: the first t positions hold exactly the values 1..t.
      Value running_max = 0;
      for (std::size_t t = 0; t <= n; ++t) {
        if (t > 0) running_max = std::max(running_max, p[t - 1]);
        if (running_max != t) continue;
        std::vector<Value> lo(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(t));
        std::vector<Value> hi;
        hi.reserve(n - t);
        for (std::size_t i = t; i < n; ++i) hi.push_back(p[i] - static_cast<Value>(t));
        if (member(c.left(), Permutation::from_unchecked(std::move(lo)), limits) &&
            member(c.right(), Permutation::from_unchecked(std::move(hi)), limits)) {
          return true;
        }
      }
      return false;
    }
    case Kind::Juxtaposition: {
      const auto values = p.values();
      for (std::size_t t = 0; t <= n; ++t) {
        if (member(c.left(), pattern_of(values.first(t)), limits) &&
            member(c.right(), pattern_of(values.subspan(t)), limits)) {
          return true;
        }
      }
      return false;
    }
    case Kind::Merge: {
      if (n > limits.merge_max) {
        throw ResourceLimit("merge membership limited to length " + std::to_string(limits.merge_max) +
                            ", got " + std::to_string(n));
      }
      MergeSearch search{c.left(), c.right(), p, limits, c.left() == c.right(), {}, {}};
      search.part_a.reserve(n);
      search.part_b.reserve(n);
      return search.run(0);
    }
    case Kind::Rotation: {
      if (n == 0) return member(c.left(), p, limits);
      for (std::size_t k = 0; k < n; ++k) {
        if (member(c.left(), rotate(p, k), limits)) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace permlab
