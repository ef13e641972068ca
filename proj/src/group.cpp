#include "spectriple/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>

#include "spectriple/rewriting.hpp"

namespace spectriple {

Alphabet::Alphabet(std::vector<char> symbols, std::vector<int> inverse)
    : symbols_(std::move(symbols)), inverse_(std::move(inverse)) {}

Alphabet Alphabet::standard(int pairs) {
  std::vector<char> sym;
  std::vector<int> inv;
  for (int i = 0; i < pairs; ++i) {
    char c = static_cast<char>('a' + i);
    sym.push_back(c);
    sym.push_back(static_cast<char>(std::toupper(c)));
    inv.push_back(2 * i + 1);
    inv.push_back(2 * i);
  }
  return Alphabet(std::move(sym), std::move(inv));
}

int Alphabet::slot_of(char c) const {
  for (int i = 0; i < size(); ++i)
    if (symbols_[static_cast<std::size_t>(i)] == c) return i;
  return -1;
}

Elem GroupOracle::normal_form(const Word& w) const {
  Elem g = identity();
  for (int slot : w) g = right_multiply(g, slot);
  return g;
}

namespace {

// ---- key encoding helpers (length-prefixed, safe for nesting) ----

std::string enc(const std::string& s) { return std::to_string(s.size()) + ":" + s; }

std::string dec_next(const std::string& s, std::size_t& pos) {
  std::size_t colon = s.find(':', pos);
  std::size_t len = 0;
  auto r = std::from_chars(s.data() + pos, s.data() + colon, len);
  (void)r;
  std::string out = s.substr(colon + 1, len);
  pos = colon + 1 + len;
  return out;
}

long long parse_ll(const char* first, const char* last) {
  long long v = 0;
  std::from_chars(first, last, v);
  return v;
}

// ---- Z^n ----

class LatticeOracle final : public GroupOracle {
 public:
  explicit LatticeOracle(int n) : n_(n) {
    alpha_ = Alphabet::standard(n);
  }

  Elem identity() const override { return key(std::vector<long long>(static_cast<std::size_t>(n_), 0)); }

  Elem right_multiply(const Elem& g, int slot) const override {
    auto v = coords(g);
    v[static_cast<std::size_t>(slot / 2)] += (slot % 2 == 0) ? 1 : -1;
    return key(v);
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    auto a = coords(g);
    auto b = coords(h);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return key(a);
  }

  Elem invert(const Elem& g) const override {
    auto a = coords(g);
    for (auto& x : a) x = -x;
    return key(a);
  }

  std::string display(const Elem& g) const override { return "(" + g + ")"; }

 private:
  int n_;

  std::vector<long long> coords(const Elem& g) const {
    std::vector<long long> v;
    v.reserve(static_cast<std::size_t>(n_));
    const char* p = g.data();
    const char* end = g.data() + g.size();
    while (p < end) {
      const char* comma = std::find(p, end, ',');
      v.push_back(parse_ll(p, comma));
      p = comma + 1;
    }
    return v;
  }

  static Elem key(const std::vector<long long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s.push_back(',');
      s += std::to_string(v[i]);
    }
    return s;
  }
};

// ---- F_r ----

class FreeOracle final : public GroupOracle {
 public:
  explicit FreeOracle(int r) { alpha_ = Alphabet::standard(r); }

  Elem identity() const override { return {}; }

  Elem right_multiply(const Elem& g, int slot) const override {
    char c = alpha_.symbol(slot);
    if (!g.empty() && g.back() == alpha_.symbol(alpha_.inverse(slot))) {
      return g.substr(0, g.size() - 1);
    }
    Elem out = g;
    out.push_back(c);
    return out;
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    Elem out = g;
    for (char c : h) {
      int slot = alpha_.slot_of(c);
      if (!out.empty() && out.back() == alpha_.symbol(alpha_.inverse(slot)))
        out.pop_back();
      else
        out.push_back(c);
    }
    return out;
  }

  Elem invert(const Elem& g) const override {
    Elem out;
    out.reserve(g.size());
    for (auto it = g.rbegin(); it != g.rend(); ++it)
      out.push_back(alpha_.symbol(alpha_.inverse(alpha_.slot_of(*it))));
    return out;
  }

  std::string display(const Elem& g) const override { return g.empty() ? "e" : g; }
};

// ---- Z/k ----

class CyclicOracle final : public GroupOracle {
 public:
  explicit CyclicOracle(int k) : k_(k) {
    alpha_ = Alphabet::standard(1);
    collapse_ = (k <= 2);  // a and a^-1 are distinct symbols but equal elements
  }

  Elem identity() const override { return "0"; }

  Elem right_multiply(const Elem& g, int slot) const override {
    long long v = parse_ll(g.data(), g.data() + g.size());
    v = (v + (slot == 0 ? 1 : k_ - 1)) % k_;
    return std::to_string(v);
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    long long a = parse_ll(g.data(), g.data() + g.size());
    long long b = parse_ll(h.data(), h.data() + h.size());
    return std::to_string((a + b) % k_);
  }

  Elem invert(const Elem& g) const override {
    long long a = parse_ll(g.data(), g.data() + g.size());
    return std::to_string((k_ - a) % k_);
  }

  std::string display(const Elem& g) const override { return g; }

 private:
  int k_;
};

// ---- B(2,1), relator a^2 b a^-1 b^-1 ----
//
// Faithful affine action a: x -> x+1, b: x -> 2x; an element is x -> 2^k x + c
// with c dyadic. Stored as (p, q, k) with c = p/2^q, q >= 0 minimal.

struct Affine {
  long long p = 0;
  int q = 0;
  int k = 0;
};

class BS21Oracle final : public GroupOracle {
 public:
  BS21Oracle() { alpha_ = Alphabet::standard(2); }

  Elem identity() const override { return key({0, 0, 0}); }

  Elem right_multiply(const Elem& g, int slot) const override {
    static const Affine gens[4] = {{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}, {0, 0, -1}};
    return key(compose(val(g), gens[static_cast<std::size_t>(slot)]));
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    return key(compose(val(g), val(h)));
  }

  Elem invert(const Elem& g) const override {
    // (2^k x + c)^-1 = 2^-k x - c 2^-k
    Affine a = val(g);
    Affine out;
    out.k = -a.k;
    long long p = -a.p;
    int q = a.q + a.k;  // c' = -p / 2^(q+k)
    if (q < 0) {
      check_shift(-q);
      p <<= -q;
      q = 0;
    }
    out.p = p;
    out.q = q;
    normalize(out);
    return key(out);
  }

  // render the affine map, e.g. "x", "x+1", "2x-1/2"
  std::string display(const Elem& g) const override {
    Affine a = val(g);
    std::string out;
    if (a.k == 1)
      out = "2x";
    else if (a.k == -1)
      out = "x/2";
    else if (a.k != 0)
      out = "2^" + std::to_string(a.k) + "x";
    else
      out = "x";
    if (a.p != 0) {
      out += a.p > 0 ? "+" : "-";
      out += std::to_string(std::abs(a.p));
      if (a.q > 0) out += "/" + std::to_string(1LL << a.q);
    }
    return out;
  }

 private:
  static void check_shift(int s) {
    if (s > 60) throw ResourceLimit("dyadic coefficient exceeds 64-bit range", 0, 0);
  }

  static void normalize(Affine& a) {
    if (a.p == 0) {
      a.q = 0;
      return;
    }
    while (a.q > 0 && a.p % 2 == 0) {
      a.p /= 2;
      --a.q;
    }
  }

  // g then h as right factor: (g*h)(x) = g(h(x)) = 2^(kg+kh) x + 2^kg ch + cg
  static Affine compose(const Affine& g, const Affine& h) {
    Affine out;
    out.k = g.k + h.k;
    // c = pg/2^qg + ph/2^(qh-kg)
    int e1 = g.q;
    int e2 = h.q - g.k;
    int e = std::max({e1, e2, 0});
    check_shift(e - e1);
    check_shift(e - e2);
    long long a = g.p, b = h.p;
    if (std::abs(a) > (1LL << 40) || std::abs(b) > (1LL << 40)) check_shift(61);
    out.p = (a << (e - e1)) + (b << (e - e2));
    out.q = e;
    normalize(out);
    return out;
  }

  static Affine val(const Elem& g) {
    Affine a;
    const char* s = g.data();
    const char* end = g.data() + g.size();
    const char* slash = std::find(s, end, '/');
    const char* bar = std::find(slash, end, '|');
    a.p = parse_ll(s, slash);
    a.q = static_cast<int>(parse_ll(slash + 1, bar));
    a.k = static_cast<int>(parse_ll(bar + 1, end));
    return a;
  }

  static Elem key(const Affine& a) {
    return std::to_string(a.p) + "/" + std::to_string(a.q) + "|" + std::to_string(a.k);
  }
};

// ---- direct product ----

class DirectProductOracle final : public GroupOracle {
 public:
  DirectProductOracle(std::shared_ptr<GroupOracle> a, std::shared_ptr<GroupOracle> b)
      : a_(std::move(a)), b_(std::move(b)) {
    alpha_ = Alphabet::standard((a_->alphabet().size() + b_->alphabet().size()) / 2);
    collapse_ = a_->involutive_collapse() || b_->involutive_collapse();
  }

  Elem identity() const override { return enc(a_->identity()) + enc(b_->identity()); }

  Elem right_multiply(const Elem& g, int slot) const override {
    auto [x, y] = split(g);
    int da2 = a_->alphabet().size();
    if (slot < da2) return enc(a_->right_multiply(x, slot)) + enc(y);
    return enc(x) + enc(b_->right_multiply(y, slot - da2));
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    auto [x1, y1] = split(g);
    auto [x2, y2] = split(h);
    return enc(a_->multiply(x1, x2)) + enc(b_->multiply(y1, y2));
  }

  Elem invert(const Elem& g) const override {
    auto [x, y] = split(g);
    return enc(a_->invert(x)) + enc(b_->invert(y));
  }

  std::string display(const Elem& g) const override {
    auto [x, y] = split(g);
    return "(" + a_->display(x) + "," + b_->display(y) + ")";
  }

 private:
  std::shared_ptr<GroupOracle> a_, b_;

  static std::pair<std::string, std::string> split(const Elem& g) {
    std::size_t pos = 0;
    std::string x = dec_next(g, pos);
    std::string y = dec_next(g, pos);
    return {x, y};
  }
};

// ---- free product ----

class FreeProductOracle final : public GroupOracle {
 public:
  FreeProductOracle(std::shared_ptr<GroupOracle> a, std::shared_ptr<GroupOracle> b)
      : a_(std::move(a)), b_(std::move(b)) {
    alpha_ = Alphabet::standard((a_->alphabet().size() + b_->alphabet().size()) / 2);
    collapse_ = a_->involutive_collapse() || b_->involutive_collapse();
  }

  Elem identity() const override { return {}; }

  Elem right_multiply(const Elem& g, int slot) const override {
    int da2 = a_->alphabet().size();
    std::vector<Factor> single;
    if (slot < da2)
      single.push_back({0, a_->generator(slot)});
    else
      single.push_back({1, b_->generator(slot - da2)});
    auto f = factors(g);
    return key(concat(f, single));
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    auto f = factors(g);
    return key(concat(f, factors(h)));
  }

  Elem invert(const Elem& g) const override {
    auto f = factors(g);
    std::reverse(f.begin(), f.end());
    for (auto& fac : f) fac.key = child(fac.tag)->invert(fac.key);
    return key(f);
  }

  std::string display(const Elem& g) const override {
    auto f = factors(g);
    if (f.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out.push_back('*');
      out += child(f[i].tag)->display(f[i].key);
    }
    return out;
  }

 private:
  struct Factor {
    int tag;  // 0 = left child, 1 = right child
    std::string key;
  };

  std::shared_ptr<GroupOracle> a_, b_;

  const GroupOracle* child(int tag) const { return tag == 0 ? a_.get() : b_.get(); }

  // Reduced concatenation: merge at the junction, drop identity factors.
  std::vector<Factor> concat(std::vector<Factor> f, const std::vector<Factor>& g) const {
    for (const auto& fac : g) {
      if (fac.key == child(fac.tag)->identity()) continue;
      if (!f.empty() && f.back().tag == fac.tag) {
        std::string merged = child(fac.tag)->multiply(f.back().key, fac.key);
        if (merged == child(fac.tag)->identity())
          f.pop_back();
        else
          f.back().key = std::move(merged);
      } else {
        f.push_back(fac);
      }
    }
    return f;
  }

  std::vector<Factor> factors(const Elem& g) const {
    std::vector<Factor> out;
    std::size_t pos = 0;
    while (pos < g.size()) {
      int tag = (g[pos] == 'L') ? 0 : 1;
      ++pos;
      out.push_back({tag, dec_next(g, pos)});
    }
    return out;
  }

  static Elem key(const std::vector<Factor>& f) {
    Elem out;
    for (const auto& fac : f) {
      out.push_back(fac.tag == 0 ? 'L' : 'R');
      out += enc(fac.key);
    }
    return out;
  }
};

// ---- generic presentation over a confluent rewriting system ----

class RewritingOracle final : public GroupOracle {
 public:
  explicit RewritingOracle(RewritingSystem rs) : rs_(std::move(rs)) { alpha_ = rs_.alphabet; }

  Elem identity() const override { return {}; }

  Elem right_multiply(const Elem& g, int slot) const override {
    return rs_.reduce(g + alpha_.symbol(slot));
  }

  Elem multiply(const Elem& g, const Elem& h) const override { return rs_.reduce(g + h); }

  Elem invert(const Elem& g) const override {
    std::string w;
    w.reserve(g.size());
    for (auto it = g.rbegin(); it != g.rend(); ++it)
      w.push_back(alpha_.symbol(alpha_.inverse(alpha_.slot_of(*it))));
    return rs_.reduce(w);
  }

  std::string display(const Elem& g) const override { return g.empty() ? "e" : g; }

 private:
  RewritingSystem rs_;
};

}  // namespace

std::string GroupSpec::display() const {
  switch (kind) {
    case Kind::IntegerLattice: return param == 1 ? "Z" : "Z^" + std::to_string(param);
    case Kind::FreeGroup: return "F" + std::to_string(param);
    case Kind::CyclicFinite: return "C" + std::to_string(param);
    case Kind::DirectProduct: return left->display() + " x " + right->display();
    case Kind::FreeProduct: return left->display() + " * " + right->display();
    case Kind::BaumslagSolitar21: return "B(2,1)";
    case Kind::Presented: {
      std::string s = "<";
      for (std::size_t i = 0; i < gen_names.size(); ++i) {
        if (i) s += ",";
        s += gen_names[i];
      }
      s += " |";
      for (const auto& r : relators) s += " " + r;
      s += ">";
      return s;
    }
  }
  return "?";
}

GroupSpec parse_presentation(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '<') throw ParseError("expected '<'", i);
  ++i;
  GroupSpec spec;
  spec.kind = GroupSpec::Kind::Presented;
  // generators
  bool expecting_gen = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) throw ParseError("unterminated presentation, expected '|'", i);
    char c = text[i];
    if (c == '|') {
      if (expecting_gen && !spec.gen_names.empty())
        throw ParseError("trailing ',' before '|'", i);
      ++i;
      break;
    }
    if (expecting_gen) {
      if (!std::islower(static_cast<unsigned char>(c)))
        throw ParseError("expected lowercase generator letter", i);
      if (std::find(spec.gen_names.begin(), spec.gen_names.end(), c) != spec.gen_names.end())
        throw ParseError(std::string("duplicate generator '") + c + "'", i);
      spec.gen_names.push_back(c);
      ++i;
      expecting_gen = false;
    } else {
      if (c == ',') {
        ++i;
        expecting_gen = true;
      } else {
        throw ParseError("expected ',' or '|'", i);
      }
    }
  }
  if (spec.gen_names.empty()) throw ParseError("presentation declares no generators", i);
  // relators: ',' separates, whitespace within a relator is insignificant
  std::string word;
  bool after_comma = false;
  auto flush = [&] {
    if (!word.empty()) {
      spec.relators.push_back(word);
      word.clear();
    }
  };
  while (true) {
    if (i >= text.size()) throw ParseError("unterminated presentation, expected '>'", i);
    char c = text[i];
    if (c == '>') {
      if (after_comma && word.empty()) throw ParseError("expected relator after ','", i);
      flush();
      ++i;
      break;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ',') {
      if (word.empty()) throw ParseError("expected relator before ','", i);
      flush();
      after_comma = true;
      ++i;
      continue;
    }
    char low = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!std::isalpha(static_cast<unsigned char>(c)) ||
        std::find(spec.gen_names.begin(), spec.gen_names.end(), low) == spec.gen_names.end())
      throw ParseError(std::string("relator uses undeclared symbol '") + c + "'", i);
    word.push_back(c);
    ++i;
  }
  skip_ws();
  if (i != text.size()) throw ParseError("trailing input after '>'", i);
  return spec;
}

namespace {

GroupSpec parse_atom(const std::string& tok, std::size_t offset) {
  auto num = [&](std::size_t from) -> int {
    int v = 0;
    auto r = std::from_chars(tok.data() + from, tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || v <= 0)
      throw ParseError("bad group parameter in '" + tok + "'", offset);
    return v;
  };
  GroupSpec s;
  if (tok == "Z") {
    s.kind = GroupSpec::Kind::IntegerLattice;
    s.param = 1;
    return s;
  }
  if (tok == "B21" || tok == "BS21" || tok == "B(2,1)") {
    s.kind = GroupSpec::Kind::BaumslagSolitar21;
    return s;
  }
  if (tok.size() >= 2 && tok[0] == 'Z') {
    s.kind = GroupSpec::Kind::IntegerLattice;
    s.param = num(tok[1] == '^' ? 2 : 1);
    return s;
  }
  if (tok.size() >= 2 && tok[0] == 'F') {
    s.kind = GroupSpec::Kind::FreeGroup;
    s.param = num(1);
    return s;
  }
  if (tok.size() >= 2 && tok[0] == 'C') {
    s.kind = GroupSpec::Kind::CyclicFinite;
    s.param = num(1);
    return s;
  }
  throw ParseError("unknown group '" + tok + "'", offset);
}

std::vector<std::pair<std::string, std::size_t>> split_top(const std::string& text, char sep) {
  std::vector<std::pair<std::string, std::size_t>> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      std::size_t b = start, e = i;
      while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
      while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
      parts.emplace_back(text.substr(b, e - b), b);
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

GroupSpec parse_group(const std::string& text) {
  std::size_t b = 0;
  while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  if (b < text.size() && text[b] == '<') return parse_presentation(text);

  auto free_parts = split_top(text, '*');
  std::vector<GroupSpec> specs;
  for (const auto& [part, off] : free_parts) {
    auto dir_parts = split_top(part, 'x');
    std::vector<GroupSpec> atoms;
    for (const auto& [tok, toff] : dir_parts) {
      if (tok.empty()) throw ParseError("empty group term", off + toff);
      atoms.push_back(parse_atom(tok, off + toff));
    }
    GroupSpec acc = atoms[0];
    for (std::size_t i = 1; i < atoms.size(); ++i) {
      GroupSpec prod;
      prod.kind = GroupSpec::Kind::DirectProduct;
      prod.left = std::make_shared<GroupSpec>(acc);
      prod.right = std::make_shared<GroupSpec>(atoms[i]);
      acc = prod;
    }
    specs.push_back(acc);
  }
  GroupSpec acc = specs[0];
  for (std::size_t i = 1; i < specs.size(); ++i) {
    GroupSpec prod;
    prod.kind = GroupSpec::Kind::FreeProduct;
    prod.left = std::make_shared<GroupSpec>(acc);
    prod.right = std::make_shared<GroupSpec>(specs[i]);
    acc = prod;
  }
  return acc;
}

std::shared_ptr<GroupOracle> build_oracle(const GroupSpec& spec, const CompletionBudget& budget) {
  using K = GroupSpec::Kind;
  switch (spec.kind) {
    case K::IntegerLattice: return std::make_shared<LatticeOracle>(spec.param);
    case K::FreeGroup: return std::make_shared<FreeOracle>(spec.param);
    case K::CyclicFinite: return std::make_shared<CyclicOracle>(spec.param);
    case K::BaumslagSolitar21: return std::make_shared<BS21Oracle>();
    case K::DirectProduct:
      return std::make_shared<DirectProductOracle>(build_oracle(*spec.left, budget),
                                                   build_oracle(*spec.right, budget));
    case K::FreeProduct:
      return std::make_shared<FreeProductOracle>(build_oracle(*spec.left, budget),
                                                 build_oracle(*spec.right, budget));
    case K::Presented: {
      Alphabet alpha = Alphabet::standard(static_cast<int>(spec.gen_names.size()));
      // relator words: map declared letters onto the standard alphabet
      std::vector<std::string> relators;
      for (const auto& r : spec.relators) {
        std::string w;
        for (char c : r) {
          char low = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          auto it = std::find(spec.gen_names.begin(), spec.gen_names.end(), low);
          int pair_idx = static_cast<int>(it - spec.gen_names.begin());
          int slot = 2 * pair_idx + (std::isupper(static_cast<unsigned char>(c)) ? 1 : 0);
          w.push_back(alpha.symbol(slot));
        }
        relators.push_back(w);
      }
      RewritingSystem rs = kb_complete(alpha, relators, budget);
      if (!rs.confluent())
        throw CompletionExceeded(
            "presentation did not complete within budget; word problem unsettled");
      return std::make_shared<RewritingOracle>(std::move(rs));
    }
  }
  throw std::logic_error("unreachable group kind");
}

Word parse_word(const Alphabet& alpha, const std::string& text) {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    int slot = alpha.slot_of(c);
    if (slot < 0) throw ParseError(std::string("symbol '") + c + "' not in alphabet", i);
    w.push_back(slot);
  }
  return w;
}

}  // namespace spectriple
