#include "stepex/formula.hpp"

#include <cctype>

namespace stepex {

namespace {

struct Sexpr {
  bool is_list = false;
  std::string symbol;
  std::vector<Sexpr> items;
};

class SexprParser {
public:
  explicit SexprParser(const std::string& text) : text_(text) {}

  Sexpr parse() {
    Sexpr e = next();
    skip_space();
    if (pos_ != text_.size()) err("trailing input after formula");
    return e;
  }

  [[noreturn]] void err(const std::string& msg) {
    fail(ErrorCode::Schema, msg);
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  Sexpr next() {
    skip_space();
    if (pos_ >= text_.size()) err("unexpected end of formula");
    if (text_[pos_] == ')') err("unexpected ')'");
    if (text_[pos_] == '(') {
      ++pos_;
      Sexpr e;
      e.is_list = true;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) err("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(next());
      }
    }
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    Sexpr e;
    e.symbol = text_.substr(start, pos_ - start);
    return e;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

struct Scope {
  std::string name;
  int type;
};

class FormulaBuilder {
public:
  FormulaBuilder(const Vocabulary& voc, const std::string& clue_id)
      : voc_(voc), clue_(clue_id) {}

  FormulaPtr build(const Sexpr& e) {
    if (!e.is_list) err(ErrorCode::Schema, "formula must be a list");
    if (e.items.empty() || e.items[0].is_list)
      err(ErrorCode::Schema, "formula head must be a symbol");
    const std::string& head = e.items[0].symbol;
    auto f = std::make_shared<Formula>();
    if (head == "and" || head == "or") {
      if (e.items.size() < 2)
        err(ErrorCode::Schema, "'" + head + "' needs at least one argument");
      f->kind = head == "and" ? Formula::Kind::And : Formula::Kind::Or;
      for (size_t i = 1; i < e.items.size(); ++i)
        f->kids.push_back(build(e.items[i]));
    } else if (head == "not") {
      expect_arity(e, 2, head);
      f->kind = Formula::Kind::Not;
      f->kids.push_back(build(e.items[1]));
    } else if (head == "implies" || head == "iff") {
      expect_arity(e, 3, head);
      f->kind = head == "implies" ? Formula::Kind::Implies : Formula::Kind::Iff;
      f->kids.push_back(build(e.items[1]));
      f->kids.push_back(build(e.items[2]));
    } else if (head == "exists" || head == "forall") {
      expect_arity(e, 4, head);
      if (e.items[1].is_list || e.items[2].is_list)
        err(ErrorCode::Schema, "'" + head + "' needs a variable and a type");
      const std::string& var = e.items[1].symbol;
      auto type = voc_.find_type(e.items[2].symbol);
      if (!type)
        err(ErrorCode::Type, "unknown type '" + e.items[2].symbol + "'");
      for (const Scope& s : scope_)
        if (s.name == var)
          err(ErrorCode::Schema, "variable '" + var + "' bound twice");
      if (voc_.find_entity(var))
        err(ErrorCode::Schema,
            "variable '" + var + "' shadows an entity name");
      f->kind = head == "exists" ? Formula::Kind::Exists : Formula::Kind::Forall;
      f->quant_type = *type;
      f->quant_var = var;
      scope_.push_back({var, *type});
      f->kids.push_back(build(e.items[3]));
      scope_.pop_back();
    } else if (head == "atom") {
      expect_arity(e, 4, head);
      if (e.items[1].is_list)
        err(ErrorCode::Schema, "'atom' needs a relation name");
      auto rel = voc_.find_relation(e.items[1].symbol);
      if (!rel)
        err(ErrorCode::UnknownRelation,
            "unknown relation '" + e.items[1].symbol + "'");
      Formula::Term x = term(e.items[2]);
      Formula::Term y = term(e.items[3]);
      const RelationDecl& r = voc_.relation(*rel);
      f->kind = Formula::Kind::Atom;
      f->relation = *rel;
      if (x.type == r.first_type && y.type == r.second_type) {
        f->a = x;
        f->b = y;
      } else if (x.type == r.second_type && y.type == r.first_type) {
        f->a = y;  // inverse view of the canonical relation
        f->b = x;
      } else {
        err(ErrorCode::Type, "arguments of '" + r.name +
                                 "' do not match its signature");
      }
    } else if (head == "eq") {
      expect_arity(e, 3, head);
      f->kind = Formula::Kind::Eq;
      f->a = term(e.items[1]);
      f->b = term(e.items[2]);
      if (f->a.type != f->b.type)
        err(ErrorCode::Type, "'eq' arguments have different types");
    } else {
      err(ErrorCode::Schema, "unknown connective '" + head + "'");
    }
    return f;
  }

private:
  void expect_arity(const Sexpr& e, size_t n, const std::string& head) {
    if (e.items.size() != n)
      err(ErrorCode::Schema, "'" + head + "' has the wrong number of arguments");
  }

  Formula::Term term(const Sexpr& e) {
    if (e.is_list) err(ErrorCode::Schema, "term must be a symbol");
    for (int i = static_cast<int>(scope_.size()) - 1; i >= 0; --i) {
      if (scope_[i].name == e.symbol) {
        Formula::Term t;
        t.is_var = true;
        t.var = i;
        t.type = scope_[i].type;
        return t;
      }
    }
    auto ent = voc_.find_entity(e.symbol);
    if (!ent)
      err(ErrorCode::UnboundVariable,
          "'" + e.symbol + "' is neither a bound variable nor an entity");
    Formula::Term t;
    t.type = ent->first;
    t.entity = ent->second;
    return t;
  }

  [[noreturn]] void err(ErrorCode code, const std::string& msg) {
    fail(code, "clue '" + clue_ + "': " + msg);
  }

  const Vocabulary& voc_;
  const std::string& clue_;
  std::vector<Scope> scope_;
};

std::string term_to_string(const Formula::Term& t, const Vocabulary& voc,
                           const std::vector<std::string>& vars) {
  if (t.is_var) return vars[t.var];
  return voc.type(t.type).entities[t.entity];
}

void print(const Formula& f, const Vocabulary& voc,
           std::vector<std::string>& vars, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom:
      out += "(atom " + voc.relation(f.relation).name + " " +
             term_to_string(f.a, voc, vars) + " " +
             term_to_string(f.b, voc, vars) + ")";
      return;
    case K::Eq:
      out += "(eq " + term_to_string(f.a, voc, vars) + " " +
             term_to_string(f.b, voc, vars) + ")";
      return;
    case K::Not:
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      const char* head = f.kind == K::Not      ? "not"
                         : f.kind == K::And    ? "and"
                         : f.kind == K::Or     ? "or"
                         : f.kind == K::Implies ? "implies"
                                                : "iff";
      out += "(";
      out += head;
      for (const auto& k : f.kids) {
        out += " ";
        print(*k, voc, vars, out);
      }
      out += ")";
      return;
    }
    case K::Exists:
    case K::Forall:
      out += f.kind == K::Exists ? "(exists " : "(forall ";
      out += f.quant_var + " " + voc.type(f.quant_type).name + " ";
      vars.push_back(f.quant_var);
      print(*f.kids[0], voc, vars, out);
      vars.pop_back();
      out += ")";
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Vocabulary& voc,
                         const std::string& clue_id) {
  SexprParser parser(text);
  Sexpr e = [&] {
    try {
      return parser.parse();
    } catch (const Error& err) {
      fail(err.code(), "clue '" + clue_id + "': " + err.what());
    }
  }();
  FormulaBuilder builder(voc, clue_id);
  return builder.build(e);
}

std::string formula_to_string(const Formula& f, const Vocabulary& voc) {
  std::string out;
  std::vector<std::string> vars;
  print(f, voc, vars, out);
  return out;
}

}  // namespace stepex
