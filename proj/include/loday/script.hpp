#pragma once

// Line-oriented script language: declarations of one context (a manifold or a
// Lie algebra) and of named structures, followed by bracket, check and print
// commands. Running a script yields records `kind|name|status|payload`.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "loday/algebroid.hpp"
#include "loday/background.hpp"
#include "loday/bigbracket.hpp"
#include "loday/brackets.hpp"
#include "loday/cartan.hpp"
#include "loday/error.hpp"
#include "loday/suites.hpp"

namespace loday::script {

constexpr std::uint64_t default_seed = 20240917;

struct Word {
  std::string text;
  int col = 0;
};

struct Expr {
  enum class Kind { number, symbol, add, sub, neg, mul } kind = Kind::number;
  Rational value;
  std::string name;
  int line = 0, col = 0;
  std::vector<Expr> args;
};

struct Statement {
  int line = 0;
  std::string text;
  std::string keyword;
  std::vector<Word> words;  // after the keyword
  std::optional<Expr> expr;
  std::vector<Expr> args;  // bracket / check operands parsed as expressions
};

enum class Expectation { pass, fail, error };

struct Script {
  std::vector<Statement> statements;
  Expectation expect = Expectation::pass;
};

struct Options {
  std::optional<std::uint64_t> seed;
  unsigned degree_cap = 3;
  unsigned jobs = 1;
};

struct Record {
  std::string kind, name, status, payload;
};

struct Report {
  std::vector<Record> records;
  std::vector<std::string> text;
  bool failed = false;
  bool errored = false;

  int exit_status() const { return errored ? 2 : failed ? 1 : 0; }

  std::string structured() const {
    auto clean = [](std::string s) {
      for (auto& c : s)
        if (c == '|' || c == '\n') c = c == '|' ? '/' : ' ';
      return s;
    };
    std::string out;
    for (const auto& r : records)
      out += clean(r.kind) + "|" + clean(r.name) + "|" + clean(r.status) + "|" + clean(r.payload) + "\n";
    return out;
  }
};

// ---------------------------------------------------------------- lexing

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

class ExprParser {
 public:
  ExprParser(std::string_view s, int line, int col0) : s_(s), line_(line), col0_(col0) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  int line_, col0_;

  int col() const { return col0_ + int(i_); }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(line_, col(), m); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Expr node(Expr::Kind k, int c) {
    Expr e;
    e.kind = k;
    e.line = line_;
    e.col = c;
    return e;
  }

  Expr sum() {
    skip();
    int c = col();
    Expr left;
    if (eat('-')) {
      left = node(Expr::Kind::neg, c);
      left.args.push_back(product());
    } else {
      eat('+');
      left = product();
    }
    for (;;) {
      skip();
      int c2 = col();
      if (eat('+')) {
        Expr e = node(Expr::Kind::add, c2);
        e.args = {std::move(left), product()};
        left = std::move(e);
      } else if (eat('-')) {
        Expr e = node(Expr::Kind::sub, c2);
        e.args = {std::move(left), product()};
        left = std::move(e);
      } else {
        return left;
      }
    }
  }

  Expr product() {
    Expr left = factor();
    for (;;) {
      skip();
      int c = col();
      if (eat('*') || eat('^')) {
        Expr e = node(Expr::Kind::mul, c);
        e.args = {std::move(left), factor()};
        left = std::move(e);
      } else {
        return left;
      }
    }
  }

  std::string integer() {
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  Expr factor() {
    skip();
    int c = col();
    if (i_ >= s_.size()) fail("expression expected");
    char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      Expr e = sum();
      if (!eat(')')) fail("')' expected");
      return e;
    }
    if (ch == '-') {
      ++i_;
      Expr e = node(Expr::Kind::neg, c);
      e.args.push_back(factor());
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string p = integer(), q = "1";
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        q = integer();
        if (q.empty()) fail("denominator expected");
        if (q.find_first_not_of('0') == std::string::npos) fail("zero denominator");
      }
      Expr e = node(Expr::Kind::number, c);
      e.value = Rational(mpz_class(p), mpz_class(q));
      e.value.canonicalize();
      return e;
    }
    if (ident_start(ch)) {
      std::size_t start = i_++;
      while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
      Expr e = node(Expr::Kind::symbol, c);
      e.name = std::string(s_.substr(start, i_ - start));
      return e;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }
};

inline std::vector<Word> split_words(const std::string& line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), int(start) + 1});
  }
  return out;
}

inline void collect_symbols(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::symbol) out.push_back(&e);
  for (const auto& a : e.args) collect_symbols(a, out);
}

inline std::optional<int> indexed(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  if (rest.find_first_not_of("0123456789") != std::string::npos || rest[0] == '0') return std::nullopt;
  if (rest.size() > 3) return std::nullopt;
  return std::stoi(rest);
}

inline std::optional<std::string> key_value(const Word& w, const std::string& key) {
  if (w.text.size() > key.size() + 1 && w.text.compare(0, key.size() + 1, key + "=") == 0)
    return w.text.substr(key.size() + 1);
  return std::nullopt;
}

inline std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- static shape of the language

struct SuiteSpec {
  std::string name;
  std::size_t arity;
  bool lie;  // needs a Lie algebra script, otherwise a manifold
};

inline const std::vector<SuiteSpec>& suites() {
  static const std::vector<SuiteSpec> s{
      {"cartan", 0, false},       {"schouten", 0, false},      {"fn", 0, false},
      {"vinogradov", 0, false},   {"buttin", 0, false},        {"supermanifold", 0, false},
      {"witnesses", 0, false},    {"wzw", 2, false},           {"triangle", 2, false},
      {"poisson", 1, false},      {"closed", 1, false},        {"background", 1, false},
      {"equal", 2, false},        {"loday-courant", 3, false}, {"loday-dorfman", 3, false},
      {"algebroid", 1, false},    {"gcybe", 1, true},          {"jacobi", 0, true},
      {"liealg", 0, true},        {"equal-lie", 2, true},
  };
  return s;
}

inline const std::vector<std::string>& manifold_bracket_kinds() {
  static const std::vector<std::string> k{"schouten", "lie",   "fn",      "derived", "vinogradov",
                                          "dorfman",  "courant", "big", "koszul",  "poisson", "twisted"};
  return k;
}

inline const std::vector<std::string>& lie_bracket_kinds() {
  static const std::vector<std::string> k{"big", "schouten", "derived"};
  return k;
}

// ---------------------------------------------------------------- parsing

namespace detail {

// Symbol table used while parsing.
struct Scope {
  enum class Ctx { none, manifold, lie } ctx = Ctx::none;
  int dim = 0;
  std::vector<std::string> basis;
  std::set<std::string> values;                          // declared tensors / elements
  std::map<std::string, std::vector<std::string>> algebroids;  // name -> frame
  std::set<std::string> lie_names, manifold_names;

  bool manifold_generator(const std::string& n) const {
    for (const char* p : {"x", "dx", "@"}) {
      auto i = indexed(n, p);
      if (i && *i >= 1 && *i <= dim) return true;
    }
    return false;
  }
  bool lie_generator(const std::string& n) const {
    for (const auto& b : basis)
      if (n == b || n == b + "'") return true;
    return false;
  }
  bool coordinate(const std::string& n) const {
    auto i = indexed(n, "x");
    return i && *i >= 1 && *i <= dim;
  }
};

enum class ExprCtx { main, algebroid_sections };

inline void check_symbols(const Scope& sc, const Expr& e, ExprCtx where,
                          const std::vector<std::string>* frame = nullptr) {
  std::vector<const Expr*> syms;
  collect_symbols(e, syms);
  for (const auto* s : syms) {
    const auto& n = s->name;
    bool ok = false;
    if (where == ExprCtx::algebroid_sections) {
      ok = sc.coordinate(n) || (frame && std::find(frame->begin(), frame->end(), n) != frame->end());
    } else if (sc.ctx == Scope::Ctx::manifold) {
      ok = sc.values.count(n) || sc.manifold_generator(n);
    } else if (sc.ctx == Scope::Ctx::lie) {
      ok = sc.values.count(n) || sc.lie_generator(n);
    }
    if (!ok) throw ParseError(s->line, s->col, "unknown symbol '" + n + "'");
  }
}

inline Expr parse_expr_at(const std::string& line, int lineno, std::size_t from) {
  return ExprParser(std::string_view(line).substr(from), lineno, int(from) + 1).parse();
}

}  // namespace detail

inline Script parse_script(const std::string& text) {
  using namespace detail;
  Script script;
  Scope sc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto end_col = [](const std::string& l) { return int(l.size()) + 1; };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::string comment = line.substr(hash + 1);
      auto w = split_words(comment);
      if (w.size() >= 2 && w[0].text == "expect:") {
        if (w[1].text == "fail") script.expect = Expectation::fail;
        else if (w[1].text == "error") script.expect = Expectation::error;
        else if (w[1].text == "pass") script.expect = Expectation::pass;
      }
      line = line.substr(0, hash);
    }
    auto words = split_words(line);
    if (words.empty()) continue;

    Statement st;
    st.line = lineno;
    st.keyword = words[0].text;
    st.words.assign(words.begin() + 1, words.end());
    {
      std::string t = line;
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
      t.erase(0, std::size_t(words[0].col - 1));
      st.text = t;
    }
    const auto& w = st.words;
    auto arity = [&](std::size_t n, const std::string& usage) {
      if (w.size() != n)
        throw ParseError(lineno, w.size() > n ? w[n].col : end_col(line),
                         st.keyword + " expects " + usage);
    };
    auto fresh = [&](const Word& name) {
      if (!ident_start(name.text[0]) ||
          !std::all_of(name.text.begin() + 1, name.text.end(), ident_char))
        throw ParseError(lineno, name.col, "invalid name '" + name.text + "'");
      if (sc.values.count(name.text) || sc.algebroids.count(name.text) || sc.lie_names.count(name.text) ||
          sc.manifold_names.count(name.text) || sc.manifold_generator(name.text) || sc.lie_generator(name.text))
        throw ParseError(lineno, name.col, "'" + name.text + "' is already declared");
    };
    // `<kw> name = expr`
    auto assignment = [&]() {
      if (w.size() < 3 || w[1].text != "=")
        throw ParseError(lineno, w.empty() ? end_col(line) : w[0].col + int(w[0].text.size()),
                         st.keyword + " expects <name> = <expression>");
      std::size_t eq = std::size_t(w[1].col - 1);
      return parse_expr_at(line, lineno, eq + 1);
    };

    const std::string& kw = st.keyword;
    if (kw == "manifold") {
      arity(2, "<name> dim=<n>");
      if (sc.ctx != Scope::Ctx::none) throw ParseError(lineno, words[0].col, "a script has only one context");
      fresh(w[0]);
      auto v = key_value(w[1], "dim");
      if (!v || v->empty() || v->find_first_not_of("0123456789") != std::string::npos || v->size() > 2)
        throw ParseError(lineno, w[1].col, "dim=<n> expected");
      int n = std::stoi(*v);
      if (n < 1 || n > 12) throw ParseError(lineno, w[1].col, "dimension must be between 1 and 12");
      sc.ctx = Scope::Ctx::manifold;
      sc.dim = n;
      sc.manifold_names.insert(w[0].text);
    } else if (kw == "liealgebra") {
      arity(2, "<name> basis=<a,b,...> or <name> named=<algebra>");
      if (sc.ctx != Scope::Ctx::none) throw ParseError(lineno, words[0].col, "a script has only one context");
      fresh(w[0]);
      if (auto b = key_value(w[1], "basis")) {
        sc.basis = comma_list(*b);
        std::set<std::string> seen;
        for (const auto& x : sc.basis)
          if (x.empty() || !ident_start(x[0]) || !std::all_of(x.begin() + 1, x.end(), ident_char) ||
              x.find('\'') != std::string::npos || !seen.insert(x).second)
            throw ParseError(lineno, w[1].col, "invalid basis '" + *b + "'");
      } else if (auto nm = key_value(w[1], "named")) {
        try {
          sc.basis = named_lie_algebra(*nm).basis();
        } catch (const Error&) {
          throw ParseError(lineno, w[1].col + 6, "unknown Lie algebra '" + *nm + "'");
        }
      } else {
        throw ParseError(lineno, w[1].col, "basis=... or named=... expected");
      }
      sc.ctx = Scope::Ctx::lie;
      sc.lie_names.insert(w[0].text);
    } else if (kw == "algebroid") {
      if (sc.ctx != Scope::Ctx::manifold)
        throw ParseError(lineno, words[0].col, "an algebroid needs a manifold declared first");
      if (w.size() < 2) arity(2, "<name> frame=<a,b,...> | tangent | cotangent <P>");
      fresh(w[0]);
      std::vector<std::string> frame;
      if (auto f = key_value(w[1], "frame")) {
        arity(2, "<name> frame=<a,b,...>");
        frame = comma_list(*f);
        std::set<std::string> seen;
        for (const auto& x : frame)
          if (x.empty() || !ident_start(x[0]) || !std::all_of(x.begin() + 1, x.end(), ident_char) ||
              sc.coordinate(x) || x.find_first_of("'.") != std::string::npos || !seen.insert(x).second)
            throw ParseError(lineno, w[1].col, "invalid frame '" + *f + "'");
      } else if (w[1].text == "tangent") {
        arity(2, "<name> tangent");
        for (int i = 1; i <= sc.dim; ++i) frame.push_back("e" + std::to_string(i));
      } else if (w[1].text == "cotangent") {
        arity(3, "<name> cotangent <bivector>");
        if (!sc.values.count(w[2].text)) throw ParseError(lineno, w[2].col, "unknown symbol '" + w[2].text + "'");
        for (int i = 1; i <= sc.dim; ++i) frame.push_back("dx" + std::to_string(i));
      } else {
        throw ParseError(lineno, w[1].col, "frame=..., tangent or cotangent expected");
      }
      sc.algebroids[w[0].text] = frame;
    } else if (kw == "anchor") {
      if (w.size() < 4 || w[2].text != "=") throw ParseError(lineno, end_col(line), "anchor expects <algebroid> <frame> = <vector field>");
      auto it = sc.algebroids.find(w[0].text);
      if (it == sc.algebroids.end()) throw ParseError(lineno, w[0].col, "unknown algebroid '" + w[0].text + "'");
      if (std::find(it->second.begin(), it->second.end(), w[1].text) == it->second.end())
        throw ParseError(lineno, w[1].col, "unknown frame element '" + w[1].text + "'");
      st.expr = parse_expr_at(line, lineno, std::size_t(w[2].col));
      check_symbols(sc, *st.expr, ExprCtx::main);
    } else if (kw == "relation") {
      if (w.size() < 4 || w[2].text != "=")
        throw ParseError(lineno, end_col(line), "relation expects <structure> [a,b] = <expression>");
      const std::string& tgt = w[0].text;
      std::vector<std::string> names;
      bool lie = sc.lie_names.count(tgt) > 0;
      if (lie) names = sc.basis;
      else if (sc.algebroids.count(tgt)) names = sc.algebroids[tgt];
      else throw ParseError(lineno, w[0].col, "unknown structure '" + tgt + "'");
      const auto& pr = w[1].text;
      if (pr.size() < 5 || pr.front() != '[' || pr.back() != ']')
        throw ParseError(lineno, w[1].col, "[a,b] expected");
      auto ab = comma_list(pr.substr(1, pr.size() - 2));
      if (ab.size() != 2) throw ParseError(lineno, w[1].col, "[a,b] expected");
      for (const auto& x : ab)
        if (std::find(names.begin(), names.end(), x) == names.end())
          throw ParseError(lineno, w[1].col, "unknown basis element '" + x + "'");
      st.expr = parse_expr_at(line, lineno, std::size_t(w[2].col));
      if (lie) {
        std::vector<const Expr*> syms;
        collect_symbols(*st.expr, syms);
        for (const auto* s : syms)
          if (std::find(names.begin(), names.end(), s->name) == names.end())
            throw ParseError(s->line, s->col, "unknown symbol '" + s->name + "'");
      } else {
        check_symbols(sc, *st.expr, ExprCtx::algebroid_sections, &names);
      }
    } else if (kw == "bivector" || kw == "form" || kw == "multivector" || kw == "background" ||
               kw == "tensor" || kw == "element") {
      bool lie_kw = kw == "element";
      if (sc.ctx == Scope::Ctx::none)
        throw ParseError(lineno, words[0].col, "declare a manifold or a Lie algebra first");
      if (lie_kw != (sc.ctx == Scope::Ctx::lie))
        throw ParseError(lineno, words[0].col,
                         lie_kw ? "element needs a Lie algebra script" : kw + " needs a manifold script");
      if (w.empty()) throw ParseError(lineno, end_col(line), kw + " expects <name> = <expression>");
      fresh(w[0]);
      st.expr = assignment();
      check_symbols(sc, *st.expr, ExprCtx::main);
      sc.values.insert(w[0].text);
    } else if (kw == "seed") {
      arity(1, "<non-negative integer>");
      if (w[0].text.find_first_not_of("0123456789") != std::string::npos || w[0].text.size() > 19)
        throw ParseError(lineno, w[0].col, "seed must be a non-negative integer");
    } else if (kw == "print") {
      if (w.empty()) throw ParseError(lineno, end_col(line), "print expects an expression");
      st.expr = parse_expr_at(line, lineno, std::size_t(w[0].col - 1));
      check_symbols(sc, *st.expr, ExprCtx::main);
    } else if (kw == "bracket") {
      arity(3, "<kind> <a> <b>");
      std::string kind = w[0].text, param;
      auto colon = kind.find(':');
      if (colon != std::string::npos) param = kind.substr(colon + 1), kind = kind.substr(0, colon);
      const std::vector<std::string>* frame = nullptr;
      if (sc.algebroids.count(w[0].text)) {
        frame = &sc.algebroids[w[0].text];
      } else {
        const auto& kinds = sc.ctx == Scope::Ctx::lie ? lie_bracket_kinds() : manifold_bracket_kinds();
        if (sc.ctx == Scope::Ctx::none || std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
          throw ParseError(lineno, w[0].col, "unknown bracket kind '" + w[0].text + "'");
        bool needs = kind == "koszul" || kind == "poisson" || kind == "twisted";
        if (needs && param.empty())
          throw ParseError(lineno, w[0].col, kind + " needs a structure, e.g. " + kind + ":P");
        if (!needs && !param.empty()) throw ParseError(lineno, w[0].col + int(colon), "unexpected ':'");
        if (needs && !sc.values.count(param))
          throw ParseError(lineno, w[0].col + int(colon) + 1, "unknown symbol '" + param + "'");
      }
      for (std::size_t k = 1; k < 3; ++k) {
        st.args.push_back(ExprParser(w[k].text, lineno, w[k].col).parse());
        check_symbols(sc, st.args.back(), frame ? ExprCtx::algebroid_sections : ExprCtx::main, frame);
      }
    } else if (kw == "check") {
      if (w.empty()) throw ParseError(lineno, end_col(line), "check expects a suite name");
      const auto& all = suites();
      auto it = std::find_if(all.begin(), all.end(), [&](const SuiteSpec& s) { return s.name == w[0].text; });
      std::string suite = w[0].text;
      if (it == all.end() && suite == "equal" && sc.ctx == Scope::Ctx::lie) suite = "equal-lie";
      if (suite == "equal" && sc.ctx == Scope::Ctx::lie) suite = "equal-lie";
      it = std::find_if(all.begin(), all.end(), [&](const SuiteSpec& s) { return s.name == suite; });
      if (it == all.end()) throw ParseError(lineno, w[0].col, "unknown check suite '" + w[0].text + "'");
      if (sc.ctx == Scope::Ctx::none || it->lie != (sc.ctx == Scope::Ctx::lie))
        throw ParseError(lineno, w[0].col,
                         "suite '" + w[0].text + "' needs a " + (it->lie ? "Lie algebra" : "manifold") + " script");
      if (w.size() - 1 != it->arity)
        throw ParseError(lineno, w.size() - 1 > it->arity ? w[it->arity + 1].col : end_col(line),
                         "check " + w[0].text + " expects " + std::to_string(it->arity) + " operand(s)");
      if (suite == "algebroid") {
        if (!sc.algebroids.count(w[1].text))
          throw ParseError(lineno, w[1].col, "unknown algebroid '" + w[1].text + "'");
      } else {
        for (std::size_t k = 1; k < w.size(); ++k) {
          st.args.push_back(ExprParser(w[k].text, lineno, w[k].col).parse());
          check_symbols(sc, st.args.back(), ExprCtx::main);
        }
      }
    } else {
      throw ParseError(lineno, words[0].col, "unknown statement '" + kw + "'");
    }
    script.statements.push_back(std::move(st));
  }
  return script;
}

// ---------------------------------------------------------------- running

namespace detail {

struct AlgebroidDecl {
  std::vector<std::string> frame;
  AnchorTable anchor;
  StructureFunctions structure;
  std::shared_ptr<const Algebroid> built;
  std::string builtin;  // "", "tangent" or "cotangent"
  std::string poisson;
};

using Task = std::function<std::vector<Record>()>;

struct Slot {
  std::vector<Record> records;
  std::vector<std::string> text;
  Task task;
  std::string label;
};

class Runner {
 public:
  Runner(const Options& opt) : opt_(opt), seed_(opt.seed.value_or(default_seed)) {}

  Report run(const Script& s) {
    std::size_t index = 0;
    for (const auto& st : s.statements) {
      slots_.emplace_back();
      try {
        execute(st, index, slots_.back());
      } catch (const Error& e) {
        fail_statement(st, e.what());
        break;
      } catch (const std::exception& e) {
        fail_statement(st, e.what());
        break;
      }
      ++index;
    }
    run_tasks();
    Report rep;
    rep.errored = errored_;
    for (auto& sl : slots_) {
      for (auto& r : sl.records) {
        if (r.status == "FAIL") rep.failed = true;
        if (r.status == "ERROR") rep.errored = true;
        rep.records.push_back(r);
      }
      for (auto& t : sl.text) rep.text.push_back(t);
    }
    std::size_t checks = 0, fails = 0;
    for (const auto& r : rep.records)
      if (r.kind == "check") ++checks, fails += r.status != "PASS";
    rep.text.push_back("summary: " + std::to_string(checks - fails) + "/" + std::to_string(checks) +
                       " checks passed" + (rep.errored ? ", errors occurred" : ""));
    return rep;
  }

 private:
  Options opt_;
  std::uint64_t seed_;
  std::vector<Slot> slots_;
  bool errored_ = false;

  std::shared_ptr<const Manifold> M_;
  std::vector<std::string> basis_;
  StructureConstants constants_;
  std::shared_ptr<const LieStructure> g_;
  std::map<std::string, Element> values_;
  std::map<std::string, AlgebroidDecl> algebroids_;

  void fail_statement(const Statement& st, const std::string& msg) {
    errored_ = true;
    std::string m = "line " + std::to_string(st.line) + ": " + st.text + ": " + msg;
    slots_.back().records.push_back({"error", st.text, "ERROR", m});
    slots_.back().text.push_back("ERROR " + m);
  }

  std::uint64_t stream_seed(std::size_t index) const {
    return Random::derived(seed_, index).engine()();
  }

  const LieStructure& lie() {
    if (!g_) g_ = std::make_shared<const LieStructure>(basis_, constants_, false);
    return *g_;
  }

  Element eval(const Expr& e, const std::function<Element(const Expr&)>& sym, const ContextPtr& ctx) {
    switch (e.kind) {
      case Expr::Kind::number: return Element(ctx, e.value);
      case Expr::Kind::symbol: return sym(e);
      case Expr::Kind::neg: return -eval(e.args[0], sym, ctx);
      case Expr::Kind::add: return eval(e.args[0], sym, ctx) + eval(e.args[1], sym, ctx);
      case Expr::Kind::sub: return eval(e.args[0], sym, ctx) - eval(e.args[1], sym, ctx);
      case Expr::Kind::mul: return eval(e.args[0], sym, ctx) * eval(e.args[1], sym, ctx);
    }
    throw Error("bad expression");
  }

  Element eval_main(const Expr& e) {
    if (M_) {
      const auto& M = *M_;
      return eval(e, [&](const Expr& s) -> Element {
        if (auto it = values_.find(s.name); it != values_.end()) return it->second;
        for (auto [p, f] : {std::pair<const char*, int>{"x", 0}, {"dx", 1}, {"@", 2}})
          if (auto i = indexed(s.name, p); i && *i >= 1 && *i <= M.dim())
            return f == 0 ? M.x(*i) : f == 1 ? M.dx(*i) : M.del(*i);
        throw ParseError(s.line, s.col, "unknown symbol '" + s.name + "'");
      }, M.tensors());
    }
    const auto& g = lie();
    return eval(e, [&](const Expr& s) -> Element {
      if (auto it = values_.find(s.name); it != values_.end()) return it->second;
      for (int i = 0; i < g.dim(); ++i) {
        if (s.name == g.basis()[std::size_t(i)]) return g.e(i);
        if (s.name == g.basis()[std::size_t(i)] + "'") return g.dual(i);
      }
      throw ParseError(s.line, s.col, "unknown symbol '" + s.name + "'");
    }, g.big_context());
  }

  // Expression over coordinates and frame names, in `ctx` (generators named alike).
  Element eval_in(const Expr& e, const ContextPtr& ctx) {
    return eval(e, [&](const Expr& s) -> Element {
      auto pos = ctx->find(s.name);
      if (!pos) throw ParseError(s.line, s.col, "unknown symbol '" + s.name + "'");
      return Element::generator(ctx, *pos);
    }, ctx);
  }

  const Algebroid& algebroid(const std::string& name) {
    auto& d = algebroids_.at(name);
    if (!d.built) {
      const auto& M = *M_;
      if (d.builtin == "tangent") {
        d.built = std::make_shared<const Algebroid>(tangent_algebroid(M.dim()));
      } else if (d.builtin == "cotangent") {
        PoissonManifold PM(M, values_.at(d.poisson));
        d.built = std::make_shared<const Algebroid>(cotangent_algebroid(PM));
      } else {
        std::vector<std::string> coords;
        for (int i = 1; i <= M.dim(); ++i) coords.push_back("x" + std::to_string(i));
        d.built = std::make_shared<const Algebroid>(coords, d.frame, d.anchor, d.structure, false);
      }
    }
    return *d.built;
  }

  ContextPtr frame_context(const AlgebroidDecl& d) const {
    std::vector<Generator> gens;
    for (int i = 1; i <= M_->dim(); ++i) gens.push_back({"x" + std::to_string(i), 0});
    for (const auto& f : d.frame) gens.push_back({f, 1});
    return Context::make(gens);
  }

  static std::string stmt_name(const Statement& st) {
    std::string s = st.keyword;
    for (const auto& w : st.words) s += " " + w.text;
    return s;
  }

  void put(Slot& sl, std::string kind, std::string name, std::string status, std::string payload) {
    sl.text.push_back(kind + " " + name + ": " + status + (payload.empty() ? "" : " " + payload));
    sl.records.push_back({std::move(kind), std::move(name), std::move(status), std::move(payload)});
  }

  void execute(const Statement& st, std::size_t index, Slot& sl) {
    const auto& kw = st.keyword;
    const auto& w = st.words;
    if (kw == "manifold") {
      M_ = std::make_shared<const Manifold>(std::stoi(w[1].text.substr(4)));
      put(sl, "decl", w[0].text, "ok", "R^" + std::to_string(M_->dim()));
    } else if (kw == "liealgebra") {
      if (auto nm = key_value(w[1], "named")) {
        auto g = named_lie_algebra(*nm);
        basis_ = g.basis();
        for (int i = 0; i < g.dim(); ++i)
          for (int j = i + 1; j < g.dim(); ++j)
            for (int k = 0; k < g.dim(); ++k)
              if (g.constant(i, j, k) != 0) constants_[{i, j, k}] = g.constant(i, j, k);
      } else {
        basis_ = comma_list(*key_value(w[1], "basis"));
      }
      put(sl, "decl", w[0].text, "ok", "basis " + std::to_string(basis_.size()));
    } else if (kw == "relation") {
      if (algebroids_.count(w[0].text)) {
        auto& d = algebroids_[w[0].text];
        if (d.built) throw Error("relation after the algebroid was used");
        if (!d.builtin.empty()) throw Error("relations of a built-in algebroid are fixed");
        auto ab = comma_list(w[1].text.substr(1, w[1].text.size() - 2));
        int i = int(std::find(d.frame.begin(), d.frame.end(), ab[0]) - d.frame.begin());
        int j = int(std::find(d.frame.begin(), d.frame.end(), ab[1]) - d.frame.begin());
        auto ctx = frame_context(d);
        Element v = eval_in(*st.expr, ctx);
        for (int k = 0; k < int(d.frame.size()); ++k) {
          std::size_t pos = ctx->position(d.frame[std::size_t(k)]);
          Element c = partial(v, pos);
          for (const auto& [m, coef] : c.terms())
            for (std::size_t gpos = std::size_t(M_->dim()); gpos < m.size(); ++gpos)
              if (m[gpos]) throw GradingError("relation must be linear in the frame: " + v.to_string());
          Element back = c * Element::generator(ctx, pos);
          v -= back;
          if (!c.is_zero()) d.structure[{i, j, k}] = c;
        }
        if (!v.is_zero()) throw GradingError("relation must be linear in the frame: " + v.to_string());
        put(sl, "decl", w[0].text + " " + w[1].text, "ok", eval_in(*st.expr, ctx).to_string());
      } else {
        if (g_) throw Error("relation after the Lie algebra was used");
        std::vector<Generator> gens;
        for (const auto& b : basis_) gens.push_back({b, 1});
        auto ctx = Context::make(gens);
        Element v = eval_in(*st.expr, ctx);
        auto ab = comma_list(w[1].text.substr(1, w[1].text.size() - 2));
        int i = int(std::find(basis_.begin(), basis_.end(), ab[0]) - basis_.begin());
        int j = int(std::find(basis_.begin(), basis_.end(), ab[1]) - basis_.begin());
        for (const auto& [m, c] : v.terms()) {
          if (m.total() != 1) throw GradingError("relation must be linear in the basis: " + v.to_string());
          std::size_t pos = 0;
          while (!m[pos]) ++pos;
          int k = int(std::find(basis_.begin(), basis_.end(), ctx->generator(pos).name) - basis_.begin());
          if (i == j) throw Error("[a,a] must vanish");
          constants_[{i, j, k}] = c;
        }
        put(sl, "decl", w[0].text + " " + w[1].text, "ok", v.to_string());
      }
    } else if (kw == "algebroid") {
      AlgebroidDecl d;
      if (auto f = key_value(w[1], "frame")) {
        d.frame = comma_list(*f);
      } else {
        d.builtin = w[1].text;
        if (d.builtin == "cotangent") d.poisson = w[2].text;
        for (int i = 1; i <= M_->dim(); ++i)
          d.frame.push_back((d.builtin == "tangent" ? "e" : "dx") + std::to_string(i));
      }
      std::string frame;
      for (const auto& f : d.frame) frame += (frame.empty() ? "" : ",") + f;
      algebroids_[w[0].text] = d;
      put(sl, "decl", w[0].text, "ok", "frame " + frame);
    } else if (kw == "anchor") {
      auto& d = algebroids_.at(w[0].text);
      if (d.built) throw Error("anchor after the algebroid was used");
      if (!d.builtin.empty()) throw Error("the anchor of a built-in algebroid is fixed");
      Element v = eval_main(*st.expr);
      const auto& M = *M_;
      auto bd = M.require_bidegree(v, "anchor");
      if (!v.is_zero() && bd != std::pair{0, 1}) throw GradingError("anchor must be a vector field: " + v.to_string());
      int i = int(std::find(d.frame.begin(), d.frame.end(), w[1].text) - d.frame.begin());
      for (int al = 1; al <= M.dim(); ++al) {
        Element c = M.component(v, al);
        if (!c.is_zero()) d.anchor[{i, al - 1}] = c;
        else d.anchor.erase({i, al - 1});
      }
      put(sl, "decl", w[0].text + " " + w[1].text, "ok", v.to_string());
    } else if (kw == "bivector" || kw == "form" || kw == "multivector" || kw == "background" ||
               kw == "tensor" || kw == "element") {
      Element v = eval_main(*st.expr);
      if (kw != "element" && kw != "tensor") {
        const auto& M = *M_;
        if (kw == "bivector") {
          if (!M.is_multivector(v) || (!v.is_zero() && M.require_bidegree(v, "bivector") != std::pair{0, 2}))
            throw GradingError("not a bivector: " + v.to_string());
        } else if (kw == "multivector") {
          if (!M.is_multivector(v)) throw GradingError("not a multivector: " + v.to_string());
        } else {
          if (!M.is_form(v)) throw GradingError("not a form: " + v.to_string());
          if (kw == "background") {
            if (!v.is_zero() && form_degree(M, v) % 2 == 0)
              throw GradingError("a background must have odd degree: " + v.to_string());
            Element dv = apply_d(M, v);
            if (!dv.is_zero()) throw NotClosed("d psi != 0", dv.to_string());
          }
        }
      }
      values_.insert_or_assign(w[0].text, v);
      put(sl, "decl", w[0].text, "ok", v.to_string());
    } else if (kw == "seed") {
      if (!opt_.seed) seed_ = std::stoull(w[0].text);
      put(sl, "seed", w[0].text, "ok", std::to_string(seed_));
    } else if (kw == "print") {
      Element v = eval_main(*st.expr);
      put(sl, "print", st.text.substr(6), "ok", v.to_string());
    } else if (kw == "bracket") {
      bracket(st, sl);
    } else if (kw == "check") {
      check(st, index, sl);
    }
  }

  GeneralizedVector split(const Element& u) {
    const auto& M = *M_;
    Element vec(M.tensors()), form(M.tensors());
    for (const auto& [m, c] : u.terms()) {
      int p = 0;
      for (int i = 1; i <= M.dim(); ++i) p += m[M.del_pos(i)];
      Element t(M.tensors());
      t.add_term(m, c);
      (p == 0 ? form : vec) += t;
    }
    GeneralizedVector g{vec, form};
    check_generalized(M, g);
    return g;
  }

  void bracket(const Statement& st, Slot& sl) {
    const auto& w = st.words;
    std::string name = stmt_name(st).substr(8);
    if (algebroids_.count(w[0].text)) {
      const auto& A = algebroid(w[0].text);
      if (!A.valid()) throw NotAlgebroid("{H,H} != 0", A.hh().to_string());
      Element a = eval_in(st.args[0], A.context()), b = eval_in(st.args[1], A.context());
      put(sl, "bracket", name, "ok", A.hamiltonian_bracket(a, b).to_string());
      return;
    }
    std::string kind = w[0].text, param;
    if (auto c = kind.find(':'); c != std::string::npos) param = kind.substr(c + 1), kind = kind.substr(0, c);
    Element a = eval_main(st.args[0]), b = eval_main(st.args[1]);
    if (!M_) {
      const auto& g = lie();
      if (!g.is_lie()) throw NotLieAlgebra("{mu,mu} != 0", g.big()(g.mu(), g.mu()).to_string());
      Element r(g.big_context());
      if (kind == "big") r = g.big()(a, b);
      else if (kind == "schouten") r = algebraic_schouten(g, a, b);
      else {
        auto ctx = DerivedContext<GcaBracketAlgebra>::interior(GcaBracketAlgebra{g.big()}, g.mu());
        r = derived_bracket(ctx, a, b);
      }
      put(sl, "bracket", name, "ok", r.to_string());
      return;
    }
    const auto& M = *M_;
    std::string out;
    if (kind == "schouten") out = schouten(M, a, b).to_string();
    else if (kind == "lie") out = lie_bracket(M, a, b).to_string();
    else if (kind == "fn") out = frolicher_nijenhuis(M, a, b).to_string();
    else if (kind == "big") out = M.big_bracket()(a, b).to_string();
    else if (kind == "derived")
      out = extract_tensor(M, derived_op_bracket(M, embed_i(M, a), embed_i(M, b))).to_string();
    else if (kind == "vinogradov")
      out = extract_tensor(M, vinogradov(M, embed_i(M, a), embed_i(M, b))).to_string();
    else if (kind == "dorfman" || kind == "courant") {
      auto r = kind == "dorfman" ? dorfman(M, split(a), split(b)) : courant(M, split(a), split(b));
      out = (r.vector + r.form).to_string();
    } else if (kind == "koszul") {
      out = PoissonManifold(M, values_.at(param)).koszul(a, b).to_string();
    } else if (kind == "poisson") {
      out = PoissonManifold(M, values_.at(param)).poisson(a, b).to_string();
    } else if (kind == "twisted") {
      auto r = background_dorfman(M, values_.at(param), split(a), split(b));
      out = (r.value.vector + r.value.form).to_string();
      put(sl, "bracket", name, "ok", out);
      if (r.warning) put(sl, "note", name, "-", *r.warning);
      return;
    }
    put(sl, "bracket", name, "ok", out);
  }

  // Expands one CheckReport into records.
  static std::vector<Record> report_records(const std::string& name, const std::vector<CheckReport>& reps) {
    std::vector<Record> out;
    bool all = true;
    for (const auto& r : reps) all = all && r.passed();
    std::size_t cases = 0, failed = 0;
    for (const auto& r : reps) cases += r.cases, failed += r.failed;
    out.push_back({"check", name, all ? "PASS" : "FAIL",
                   std::to_string(cases - failed) + "/" + std::to_string(cases) + " cases"});
    for (const auto& r : reps) {
      std::string payload = std::to_string(r.cases - r.failed) + "/" + std::to_string(r.cases);
      if (!r.witnesses.empty()) {
        const auto& wt = r.witnesses.front();
        payload += " witness (";
        for (std::size_t i = 0; i < wt.inputs.size(); ++i) payload += (i ? ", " : "") + wt.inputs[i];
        payload += ") residual " + wt.residual;
      }
      out.push_back({"identity", name + ": " + r.name, r.passed() ? "PASS" : "FAIL", payload});
      for (const auto& n : r.notes) out.push_back({"note", name + ": " + r.name, "-", n});
    }
    return out;
  }

  void check(const Statement& st, std::size_t index, Slot& sl) {
    const auto& w = st.words;
    std::string name = stmt_name(st).substr(6);
    std::uint64_t seed = stream_seed(index);
    unsigned cap = opt_.degree_cap;
    std::string suite = w[0].text;
    if (!M_ && suite == "equal") suite = "equal-lie";
    std::vector<Element> args;
    for (const auto& e : st.args) args.push_back(eval_main(e));
    Task t;

    if (!M_) {
      lie();
      auto g = g_;
      if (suite == "jacobi") {
        t = [g, seed, name] {
          CheckReport mu("{mu,mu} = 0");
          Element sq = g->big()(g->mu(), g->mu());
          mu.record(sq.is_zero(), {g->mu().to_string()}, sq.to_string());
          std::vector<CheckReport> reps{mu};
          if (g->is_lie())
            for (auto& r : lie_derived_suite(*g, seed)) reps.push_back(std::move(r));
          return report_records(name, reps);
        };
      } else {
        if (!g->is_lie()) throw NotLieAlgebra("{mu,mu} != 0", g->big()(g->mu(), g->mu()).to_string());
        if (suite == "liealg") {
          t = [g, seed, name] { return report_records(name, liealg_suite(*g, seed)); };
        } else if (suite == "gcybe") {
          Element r = args[0];
          t = [g, r, name] { return report_records(name, {gcybe_report(*g, r, CheckReport("gcybe chain"))}); };
        } else {
          Element a = args[0], b = args[1];
          t = [a, b, name] {
            CheckReport rep("equal");
            record_eq(rep, a, b, {a.to_string(), b.to_string()});
            return report_records(name, {rep});
          };
        }
      }
    } else {
      auto M = M_;
      if (suite == "cartan") {
        t = [M, seed, cap, name] { return report_records(name, cartan_suite(*M, seed, 20, cap)); };
      } else if (suite == "schouten") {
        t = [M, seed, cap, name] { return report_records(name, schouten_suite(*M, seed, 50, cap)); };
      } else if (suite == "fn") {
        t = [M, seed, cap, name] { return report_records(name, fn_suite(*M, seed, 20, cap)); };
      } else if (suite == "vinogradov") {
        t = [M, seed, cap, name] { return report_records(name, vinogradov_suite(*M, seed, 20, cap)); };
      } else if (suite == "buttin") {
        t = [seed, name] { return report_records(name, buttin_suite(seed)); };
      } else if (suite == "supermanifold") {
        t = [M, seed, name] { return report_records(name, supermanifold_suite(*M, seed)); };
      } else if (suite == "witnesses") {
        t = [seed, name] {
          return report_records(name, {witness_interior_wedge(seed), witness_bivector_nonlinearity(),
                                       witness_courant_jacobi()});
        };
      } else if (suite == "wzw") {
        Element P = args[0], psi = args[1];
        t = [M, P, psi, name] {
          auto r = wzw_condition(*M, P, psi);
          CheckReport rep("1/2[P,P] = (wedge^3 P#) psi");
          rep.record(r.verdict, {P.to_string(), psi.to_string()}, r.residual.to_string());
          rep.notes.push_back("1/2[P,P] = " + r.lhs.to_string());
          rep.notes.push_back("(wedge^3 P#) psi = " + r.rhs.to_string());
          return report_records(name, {rep});
        };
      } else if (suite == "triangle") {
        Element P = args[0], psi = args[1];
        t = [M, P, psi, name] {
          auto tr = background_triangle(*M, P, psi);
          CheckReport rep("wzw <=> d_{P,psi}^2 = 0 <=> anchor morphism");
          rep.record(tr.consistent(), {P.to_string(), psi.to_string()},
                     std::string("wzw ") + (tr.wzw ? "yes" : "no") + ", square zero " + (tr.square ? "yes" : "no") +
                         ", anchor " + (tr.anchor ? "yes" : "no"));
          rep.notes.push_back(std::string("wzw-poisson: ") + (tr.wzw ? "yes" : "no"));
          return report_records(name, {rep});
        };
      } else if (suite == "poisson") {
        Element P = args[0];
        t = [M, P, name] {
          CheckReport rep("[P,P] = 0");
          Element s = schouten(*M, P, P);
          rep.record(s.is_zero(), {P.to_string()}, s.to_string());
          return report_records(name, {rep});
        };
      } else if (suite == "closed") {
        Element psi = args[0];
        t = [M, psi, name] {
          CheckReport rep("d psi = 0");
          Element d = apply_d(*M, psi);
          rep.record(d.is_zero(), {psi.to_string()}, d.to_string());
          return report_records(name, {rep});
        };
      } else if (suite == "background") {
        Element psi = args[0];
        t = [M, psi, seed, name] { return report_records(name, background_operator_suite(*M, psi, seed)); };
      } else if (suite == "equal") {
        Element a = args[0], b = args[1];
        t = [a, b, name] {
          CheckReport rep("equal");
          record_eq(rep, a, b, {a.to_string(), b.to_string()});
          return report_records(name, {rep});
        };
      } else if (suite == "loday-courant" || suite == "loday-dorfman") {
        bool cour = suite == "loday-courant";
        auto a = split(args[0]), b = split(args[1]), c = split(args[2]);
        t = [M, a, b, c, cour, name] {
          auto br = [&](const GeneralizedVector& u, const GeneralizedVector& v) {
            return cour ? courant(*M, u, v) : dorfman(*M, u, v);
          };
          auto l = br(a, br(b, c)), r1 = br(br(a, b), c), r2 = br(b, br(a, c));
          Element res = (l.vector - r1.vector - r2.vector) + (l.form - r1.form - r2.form);
          CheckReport rep(std::string(cour ? "courant" : "dorfman") + " jacobi");
          rep.record(res.is_zero(), {to_string(a), to_string(b), to_string(c)}, res.to_string());
          return report_records(name, {rep});
        };
      } else if (suite == "algebroid") {
        algebroid(w[1].text);
        auto A = algebroids_.at(w[1].text).built;
        t = [A, seed, name] { return report_records(name, algebroid_suite(*A, seed)); };
      }
    }
    sl.label = name;
    sl.task = std::move(t);
  }

  void run_tasks() {
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].task) pending.push_back(i);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t k = next++;
        if (k >= pending.size()) return;
        Slot& sl = slots_[pending[k]];
        try {
          auto recs = sl.task();
          for (auto& r : recs) {
            if (r.kind == "check") sl.text.push_back("check " + r.name + ": " + r.status + " (" + r.payload + ")");
            else if (r.kind == "identity") sl.text.push_back("  " + r.status + " " + r.name.substr(sl.label.size() + 2) + " " + r.payload);
            else sl.text.push_back("    " + r.payload);
            sl.records.push_back(std::move(r));
          }
        } catch (const std::exception& e) {
          sl.records.push_back({"error", sl.label, "ERROR", e.what()});
          sl.text.push_back("ERROR check " + sl.label + ": " + e.what());
        }
      }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(opt_.jobs, unsigned(pending.size())));
    if (jobs <= 1) {
      worker();
      return;
    }
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
};

}  // namespace detail

inline Report run(const Script& s, const Options& opt = {}) { return detail::Runner(opt).run(s); }

// Parses and runs; parse errors become an error record.
inline Report run_text(const std::string& text, const Options& opt = {}) {
  try {
    return run(parse_script(text), opt);
  } catch (const ParseError& e) {
    Report rep;
    rep.errored = true;
    rep.records.push_back({"error", "parse", "ERROR", e.what()});
    rep.text.push_back(std::string("ERROR ") + e.what());
    return rep;
  }
}

inline int expected_status(Expectation e) { return e == Expectation::pass ? 0 : e == Expectation::fail ? 1 : 2; }

// Expectation marker without a full parse.
inline Expectation expectation_of(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Expectation e = Expectation::pass;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash == std::string::npos) continue;
    auto w = detail::split_words(line.substr(hash + 1));
    if (w.size() >= 2 && w[0].text == "expect:") {
      if (w[1].text == "fail") e = Expectation::fail;
      else if (w[1].text == "error") e = Expectation::error;
    }
  }
  return e;
}

}  // namespace loday::script
