#include "qgen/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace qgen {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void append_clause_line(std::string& out, const VarCounts& vars, const Clause& c) {
  for (const Literal& l : c.literals()) {
    const int flat = flat_index(vars, l.var);
    out += std::to_string(l.positive ? flat : -flat);
    out += ' ';
  }
  out += "0\n";
}

void append_comments(std::string& out, const std::vector<std::string>& comments) {
  for (const std::string& line : comments) {
    out += "c ";
    out += line;
    out += '\n';
  }
}

}  // namespace

std::string write_dimacs(const CnfFormula& f, const std::vector<std::string>& comments) {
  if (f.vars().universal > 0) {
    bad("write_dimacs: universal variables present; write QDIMACS or restrict first");
  }
  std::string out;
  append_comments(out, comments);
  out += "p cnf " + std::to_string(f.vars().total()) + " " +
         std::to_string(f.clauses().size()) + "\n";
  for (const Clause& c : f.clauses()) append_clause_line(out, f.vars(), c);
  return out;
}

std::string write_qdimacs(const CnfQbf& q, const std::vector<std::string>& comments) {
  if (q.matrix().size() != 1) {
    bad("write_qdimacs: multi-component matrix; apply the selector encoding first");
  }
  const CnfFormula& f = q.matrix().components().front();
  std::string out;
  append_comments(out, comments);
  const int total = f.vars().total();
  out += "p cnf " + std::to_string(total) + " " + std::to_string(f.clauses().size()) + "\n";
  const int big_a = q.universals();
  if (big_a > 0) {
    out += 'a';
    for (int v = 1; v <= big_a; ++v) out += ' ' + std::to_string(v);
    out += " 0\n";
  }
  if (total > big_a) {
    out += 'e';
    for (int v = big_a + 1; v <= total; ++v) out += ' ' + std::to_string(v);
    out += " 0\n";
  }
  for (const Clause& c : f.clauses()) append_clause_line(out, f.vars(), c);
  return out;
}

std::string write_aspcore(const DisjunctiveProgram& p) {
  std::string out;
  for (const Rule& r : p.rules()) {
    for (std::size_t i = 0; i < r.head.size(); ++i) {
      if (i > 0) out += " | ";
      out += p.atoms()[static_cast<std::size_t>(r.head[i])].name();
    }
    if (!r.pos_body.empty() || !r.neg_body.empty()) {
      out += " :- ";
      bool first = true;
      for (const int id : r.pos_body) {
        if (!first) out += ", ";
        first = false;
        out += p.atoms()[static_cast<std::size_t>(id)].name();
      }
      for (const int id : r.neg_body) {
        if (!first) out += ", ";
        first = false;
        out += "not ";
        out += p.atoms()[static_cast<std::size_t>(id)].name();
      }
    }
    out += ".\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// DIMACS-family parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail_at(int line, const std::string& msg) { throw parse_error(line, msg); }

struct LineLexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int last_token_line = 1;  // anchors end-of-input diagnostics to real content

  // next whitespace-separated token, tracking line numbers; empty at EOF
  std::string_view next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      if (text[pos] == '\n') ++line;
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start) last_token_line = line;
    return text.substr(start, pos - start);
  }

  void skip_line() {
    while (pos < text.size() && text[pos] != '\n') ++pos;
    if (pos < text.size()) {
      ++line;
      ++pos;
    }
  }
};

int parse_int(std::string_view tok, int line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail_at(line, std::string("expected ") + what + ", found \"" + std::string(tok) + "\"");
  }
  return value;
}

struct DimacsBody {
  int nvars = 0;
  std::vector<int> quant_a, quant_e;  // flat indices from the quantifier lines
  bool saw_a = false, saw_e = false;
  int a_line = 1, e_line = 1;
  std::vector<std::vector<int>> clauses;
};

DimacsBody parse_dimacs_body(std::string_view text, bool allow_quantifiers) {
  LineLexer lex{text};
  DimacsBody body;
  int nclauses = -1;

  // comments, then the problem line
  for (;;) {
    std::string_view tok = lex.next();
    if (tok.empty()) fail_at(lex.line, "missing \"p cnf\" header");
    if (tok == "c" || (tok.size() > 1 && tok[0] == 'c' && !std::isdigit(static_cast<unsigned char>(tok[1])))) {
      lex.skip_line();
      continue;
    }
    if (tok != "p") fail_at(lex.line, "expected the \"p cnf\" header, found \"" + std::string(tok) + "\"");
    break;
  }
  {
    const int header_line = lex.line;
    const std::string_view kind = lex.next();
    if (kind != "cnf") fail_at(header_line, "expected \"cnf\" after \"p\"");
    body.nvars = parse_int(lex.next(), lex.line, "a variable count");
    nclauses = parse_int(lex.next(), lex.line, "a clause count");
    if (body.nvars < 0 || nclauses < 0) fail_at(header_line, "negative counts in header");
  }

  std::vector<int> current;
  bool in_clause = false;
  for (;;) {
    std::string_view tok = lex.next();
    if (tok.empty()) break;
    if (tok == "c") {
      if (in_clause) fail_at(lex.line, "comment inside a clause");
      lex.skip_line();
      continue;
    }
    if (tok == "a" || tok == "e") {
      const bool is_a = tok == "a";
      if (!allow_quantifiers) fail_at(lex.line, "quantifier line in a DIMACS file");
      if (in_clause) fail_at(lex.line, "quantifier line inside a clause");
      if (!body.clauses.empty()) fail_at(lex.line, "quantifier line after the first clause");
      if (is_a && (body.saw_a || body.saw_e)) {
        fail_at(lex.line, "at most one \"a\" line, before the \"e\" line");
      }
      if (!is_a && body.saw_e) fail_at(lex.line, "at most one \"e\" line");
      (is_a ? body.saw_a : body.saw_e) = true;
      (is_a ? body.a_line : body.e_line) = lex.line;
      auto& block = is_a ? body.quant_a : body.quant_e;
      for (;;) {
        const int v = parse_int(lex.next(), lex.line, "a variable or terminating 0");
        if (v == 0) break;
        if (v < 0 || v > body.nvars) {
          fail_at(lex.line, "quantified variable " + std::to_string(v) + " out of range");
        }
        block.push_back(v);
      }
      continue;
    }
    const int lit = parse_int(tok, lex.line, "a literal");
    if (lit == 0) {
      body.clauses.emplace_back(std::move(current));
      current.clear();
      in_clause = false;
      continue;
    }
    if (std::abs(lit) > body.nvars) {
      fail_at(lex.line, "literal " + std::to_string(lit) + " out of range (header declares " +
                            std::to_string(body.nvars) + " variables)");
    }
    for (const int prev : current) {
      if (std::abs(prev) == std::abs(lit)) {
        fail_at(lex.line, "duplicate variable " + std::to_string(std::abs(lit)) + " in clause");
      }
    }
    current.push_back(lit);
    in_clause = true;
  }
  if (in_clause) fail_at(lex.last_token_line, "clause not terminated by 0");
  if (static_cast<int>(body.clauses.size()) != nclauses) {
    fail_at(lex.last_token_line, "header declares " + std::to_string(nclauses) + " clauses, found " +
                                     std::to_string(body.clauses.size()));
  }
  return body;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  const DimacsBody body = parse_dimacs_body(text, false);
  std::vector<Clause> clauses;
  clauses.reserve(body.clauses.size());
  for (const auto& flat : body.clauses) {
    std::vector<Literal> lits;
    lits.reserve(flat.size());
    for (const int lit : flat) {
      lits.push_back(Literal{{VarBlock::Plain, static_cast<std::uint32_t>(std::abs(lit))}, lit > 0});
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula({.plain = body.nvars}, std::move(clauses));
}

CnfQbf parse_qdimacs(std::string_view text) {
  const DimacsBody body = parse_dimacs_body(text, true);
  // the "a" block must be exactly {1..A}, the "e" block exactly {A+1..n}
  std::vector<int> sorted_a = body.quant_a;
  std::sort(sorted_a.begin(), sorted_a.end());
  for (std::size_t i = 0; i < sorted_a.size(); ++i) {
    if (sorted_a[i] != static_cast<int>(i) + 1) {
      fail_at(body.a_line, "universal block must cover variables 1.." + std::to_string(sorted_a.size()));
    }
  }
  const int big_a = static_cast<int>(sorted_a.size());
  if (body.saw_e) {
    std::vector<int> sorted_e = body.quant_e;
    std::sort(sorted_e.begin(), sorted_e.end());
    bool covers = static_cast<int>(sorted_e.size()) == body.nvars - big_a;
    for (std::size_t i = 0; covers && i < sorted_e.size(); ++i) {
      covers = sorted_e[i] == big_a + static_cast<int>(i) + 1;
    }
    if (!covers) {
      fail_at(body.e_line, "existential block must cover variables " + std::to_string(big_a + 1) +
                               ".." + std::to_string(body.nvars));
    }
  }
  const int big_e = body.nvars - big_a;
  std::vector<Clause> clauses;
  clauses.reserve(body.clauses.size());
  for (const auto& flat : body.clauses) {
    std::vector<Literal> lits;
    lits.reserve(flat.size());
    for (const int lit : flat) {
      const int v = std::abs(lit);
      lits.push_back(v <= big_a
                         ? Literal{{VarBlock::Universal, static_cast<std::uint32_t>(v)}, lit > 0}
                         : Literal{{VarBlock::Existential, static_cast<std::uint32_t>(v - big_a)},
                                   lit > 0});
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfQbf(MultiCnf({CnfFormula({.universal = big_a, .existential = big_e}, std::move(clauses))}));
}

// ---------------------------------------------------------------------------
// Program parsing
// ---------------------------------------------------------------------------

namespace {

Atom atom_from_name(std::string_view name, int line) {
  auto index_of = [&](std::size_t prefix_len) -> int {
    const std::string_view digits = name.substr(prefix_len);
    if (digits.empty()) fail_at(line, "atom \"" + std::string(name) + "\" lacks an index");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 1) {
      fail_at(line, "atom \"" + std::string(name) + "\" has a malformed index");
    }
    return value;
  };
  if (name == "w") return {AtomKind::W, VarBlock::Universal, 0};
  if (name.starts_with("nx")) return {AtomKind::Primed, VarBlock::Universal, index_of(2)};
  if (name.starts_with("ny")) return {AtomKind::Primed, VarBlock::Existential, index_of(2)};
  if (name.starts_with("x")) return {AtomKind::Base, VarBlock::Universal, index_of(1)};
  if (name.starts_with("y")) return {AtomKind::Base, VarBlock::Existential, index_of(1)};
  if (name.starts_with("w")) return {AtomKind::WIndexed, VarBlock::Universal, index_of(1)};
  fail_at(line, "unrecognized atom \"" + std::string(name) + "\"");
}

struct ParsedRule {
  std::vector<Atom> head;
  std::vector<std::pair<Atom, bool>> body;  // (atom, negated)
};

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_on(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(trimmed(s.substr(start)));
      return parts;
    }
    parts.push_back(trimmed(s.substr(start, at - start)));
    start = at + sep.size();
  }
}

}  // namespace

DisjunctiveProgram parse_aspcore(std::string_view text) {
  std::vector<ParsedRule> parsed;
  int big_a = 0, big_e = 0, t_seen = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    std::string_view line = trimmed(raw);
    if (line.empty() || line.starts_with("%")) continue;
    if (!line.ends_with(".")) fail_at(line_no, "rule not terminated by '.'");
    line.remove_suffix(1);

    ParsedRule rule;
    const std::size_t sep = line.find(":-");
    const std::string_view head_part = trimmed(sep == std::string_view::npos ? line : line.substr(0, sep));
    if (head_part.empty()) fail_at(line_no, "rule with empty head");
    for (const std::string_view name : split_on(head_part, "|")) {
      if (name.empty()) fail_at(line_no, "empty disjunct in head");
      rule.head.push_back(atom_from_name(name, line_no));
    }
    if (sep != std::string_view::npos) {
      const std::string_view body_part = trimmed(line.substr(sep + 2));
      if (body_part.empty()) fail_at(line_no, "\":-\" with empty body");
      for (std::string_view item : split_on(body_part, ",")) {
        bool negated = false;
        if (item.starts_with("not") && item.size() > 3 &&
            std::isspace(static_cast<unsigned char>(item[3]))) {
          negated = true;
          item = trimmed(item.substr(3));
        }
        if (item.empty()) fail_at(line_no, "empty body element");
        rule.body.emplace_back(atom_from_name(item, line_no), negated);
      }
    }

    auto note = [&](const Atom& a) {
      if (a.kind == AtomKind::WIndexed) t_seen = std::max(t_seen, a.index);
      else if (a.kind != AtomKind::W && a.block == VarBlock::Universal) big_a = std::max(big_a, a.index);
      else if (a.kind != AtomKind::W) big_e = std::max(big_e, a.index);
    };
    for (const Atom& a : rule.head) note(a);
    for (const auto& [a, n] : rule.body) note(a);
    parsed.push_back(std::move(rule));
  }

  // canonical table: x1..xA, nx1..nxA, y1..yE, ny1..nyE, w, then w1..wt
  std::vector<Atom> atoms;
  for (int i = 1; i <= big_a; ++i) atoms.push_back({AtomKind::Base, VarBlock::Universal, i});
  for (int i = 1; i <= big_a; ++i) atoms.push_back({AtomKind::Primed, VarBlock::Universal, i});
  for (int j = 1; j <= big_e; ++j) atoms.push_back({AtomKind::Base, VarBlock::Existential, j});
  for (int j = 1; j <= big_e; ++j) atoms.push_back({AtomKind::Primed, VarBlock::Existential, j});
  atoms.push_back({AtomKind::W, VarBlock::Universal, 0});
  for (int h = 1; h <= t_seen; ++h) atoms.push_back({AtomKind::WIndexed, VarBlock::Universal, h});

  auto id_of = [&atoms](const Atom& a) {
    const auto it = std::find(atoms.begin(), atoms.end(), a);
    return static_cast<int>(it - atoms.begin());
  };
  std::vector<Rule> rules;
  rules.reserve(parsed.size());
  for (const ParsedRule& pr : parsed) {
    Rule r;
    for (const Atom& a : pr.head) r.head.push_back(id_of(a));
    for (const auto& [a, negated] : pr.body) {
      (negated ? r.neg_body : r.pos_body).push_back(id_of(a));
    }
    rules.push_back(std::move(r));
  }
  return DisjunctiveProgram(std::move(atoms), std::move(rules));
}

CnfFormula flattened(const CnfFormula& f) {
  std::vector<Clause> clauses;
  clauses.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    std::vector<Literal> lits;
    lits.reserve(c.size());
    for (const Literal& l : c.literals()) {
      lits.push_back(Literal{{VarBlock::Plain, static_cast<std::uint32_t>(flat_index(f.vars(), l.var))},
                             l.positive});
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula({.plain = f.vars().total()}, std::move(clauses));
}

}  // namespace qgen
