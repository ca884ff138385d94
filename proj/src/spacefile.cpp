#include "netcert/spacefile.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace netcert {

ParseError::ParseError(std::size_t line_, std::size_t column_, const std::string& message)
    : Error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " +
            message),
      line(line_),
      column(column_) {}

namespace {

struct Token {
  enum class Type { atom, lbrace, rbrace, equals, semi, comma, lparen, rparen, end };
  Type type;
  std::string text;
  std::size_t line = 0;
  std::size_t col = 0;
};

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' ||
         c == '-' || c == '+';
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    switch (c) {
      case '{': t.type = Token::Type::lbrace; break;
      case '}': t.type = Token::Type::rbrace; break;
      case '=': t.type = Token::Type::equals; break;
      case ';': t.type = Token::Type::semi; break;
      case ',': t.type = Token::Type::comma; break;
      case '(': t.type = Token::Type::lparen; break;
      case ')': t.type = Token::Type::rparen; break;
      default: {
        if (!atom_char(c)) throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        t.type = Token::Type::atom;
        while (i < text.size() && atom_char(text[i])) {
          t.text += text[i];
          advance(text[i++]);
        }
        out.push_back(std::move(t));
        continue;
      }
    }
    t.text = std::string(1, c);
    advance(c);
    ++i;
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Token::Type::end;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

const char* describe(Token::Type t) {
  switch (t) {
    case Token::Type::atom: return "a name or number";
    case Token::Type::lbrace: return "'{'";
    case Token::Type::rbrace: return "'}'";
    case Token::Type::equals: return "'='";
    case Token::Type::semi: return "';'";
    case Token::Type::comma: return "','";
    case Token::Type::lparen: return "'('";
    case Token::Type::rparen: return "')'";
    case Token::Type::end: return "end of file";
  }
  return "?";
}

struct Entry {
  std::string key;                // "d" for distance entries
  std::vector<std::string> args;  // the two labels of d(a,b)
  std::vector<Token> values;      // tokens between '=' and ';'/'}'
  std::size_t line = 0;
  std::size_t col = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  SpaceDefFile run() {
    SpaceDefFile out;
    while (peek().type != Token::Type::end) {
      Token kw = expect(Token::Type::atom, "a declaration kind");
      Token name = expect(Token::Type::atom, "a declaration name");
      if (out.spaces.count(name.text) || out.gauges.count(name.text))
        throw ParseError(name.line, name.col, "duplicate name '" + name.text + "'");
      std::vector<Entry> entries = block();
      if (kw.text == "gauge")
        out.gauges.emplace(name.text, build_gauge(name, entries));
      else if (kw.text == "finite")
        out.spaces.emplace(name.text, build_finite(name, entries, out));
      else if (kw.text == "interval")
        out.spaces.emplace(name.text, build_interval(name, entries, out));
      else if (kw.text == "product")
        out.spaces.emplace(name.text, build_product(name, entries, out));
      else
        throw ParseError(kw.line, kw.col,
                         "unknown declaration '" + kw.text +
                             "' (expected finite, interval, gauge, or product)");
      if (kw.text != "gauge") out.space_order.push_back(name.text);
    }
    return out;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token next() { return tokens_[pos_++]; }

  Token expect(Token::Type type, const std::string& what) {
    if (peek().type != type)
      throw ParseError(peek().line, peek().col,
                       "expected " + what + ", found " +
                           (peek().type == Token::Type::atom ? "'" + peek().text + "'"
                                                             : describe(peek().type)));
    return next();
  }

  std::vector<Entry> block() {
    expect(Token::Type::lbrace, "'{'");
    std::vector<Entry> entries;
    while (peek().type != Token::Type::rbrace) {
      Entry e;
      Token key = expect(Token::Type::atom, "a key");
      e.key = key.text;
      e.line = key.line;
      e.col = key.col;
      if (peek().type == Token::Type::lparen) {
        next();
        e.args.push_back(expect(Token::Type::atom, "a point label").text);
        expect(Token::Type::comma, "','");
        e.args.push_back(expect(Token::Type::atom, "a point label").text);
        expect(Token::Type::rparen, "')'");
      }
      expect(Token::Type::equals, "'='");
      while (peek().type != Token::Type::semi && peek().type != Token::Type::rbrace) {
        if (peek().type == Token::Type::end)
          throw ParseError(peek().line, peek().col, "unterminated block");
        e.values.push_back(next());
      }
      if (e.values.empty())
        throw ParseError(e.line, e.col, "key '" + e.key + "' has no value");
      if (peek().type == Token::Type::semi) next();
      entries.push_back(std::move(e));
    }
    expect(Token::Type::rbrace, "'}'");
    return entries;
  }

  // --- value readers ---------------------------------------------------------

  static std::string single_atom(const Entry& e) {
    if (e.values.size() != 1 || e.values[0].type != Token::Type::atom)
      throw ParseError(e.line, e.col, "key '" + e.key + "' takes a single value");
    return e.values[0].text;
  }

  static Rational single_rational(const Entry& e) {
    try {
      return parse_rational(single_atom(e));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(e.line, e.col, err.what());
    }
  }

  static std::vector<std::string> atom_list(const Entry& e) {
    std::vector<std::string> out;
    bool want_atom = true;
    for (const Token& t : e.values) {
      if (want_atom) {
        if (t.type != Token::Type::atom)
          throw ParseError(t.line, t.col, "expected a name or number in the list");
        out.push_back(t.text);
      } else if (t.type != Token::Type::comma) {
        throw ParseError(t.line, t.col, "expected ',' in the list");
      }
      want_atom = !want_atom;
    }
    if (want_atom) throw ParseError(e.line, e.col, "list ends with ','");
    return out;
  }

  // name(arg1, arg2)
  static std::pair<Rational, Rational> geometric_call(const Entry& e) {
    const auto& v = e.values;
    bool shaped = v.size() == 6 && v[0].type == Token::Type::atom &&
                  v[1].type == Token::Type::lparen && v[2].type == Token::Type::atom &&
                  v[3].type == Token::Type::comma && v[4].type == Token::Type::atom &&
                  v[5].type == Token::Type::rparen;
    if (!shaped || v[0].text != "geometric")
      throw ParseError(e.line, e.col, "weights take the form geometric(ratio, scale)");
    try {
      return {parse_rational(v[2].text), parse_rational(v[4].text)};
    } catch (const Error& err) {
      throw ParseError(e.line, e.col, err.what());
    }
  }

  static void reject_unknown(const std::vector<Entry>& entries,
                             const std::set<std::string>& known) {
    for (const Entry& e : entries) {
      if (!known.count(e.key))
        throw ParseError(e.line, e.col, "unknown key '" + e.key + "'");
      if (e.key == "d" && e.args.size() != 2)
        throw ParseError(e.line, e.col, "distances take the form d(a,b) = value");
      if (e.key != "d" && !e.args.empty())
        throw ParseError(e.line, e.col, "key '" + e.key + "' takes no arguments");
    }
  }

  static const Entry* find(const std::vector<Entry>& entries, const std::string& key) {
    const Entry* hit = nullptr;
    for (const Entry& e : entries)
      if (e.key == key) {
        if (hit) throw ParseError(e.line, e.col, "key '" + key + "' given twice");
        hit = &e;
      }
    return hit;
  }

  static const Entry& require(const std::vector<Entry>& entries, const std::string& key,
                              const Token& name) {
    const Entry* hit = find(entries, key);
    if (!hit)
      throw ParseError(name.line, name.col,
                       "'" + name.text + "' is missing the '" + key + "' key");
    return *hit;
  }

  // --- builders ----------------------------------------------------------------

  static Gauge build_gauge(const Token& name, const std::vector<Entry>& entries) {
    reject_unknown(entries, {"kind", "bound", "eta"});
    std::string kind = single_atom(require(entries, "kind", name));
    try {
      if (kind == "cap") {
        if (find(entries, "eta"))
          throw Error("cap gauges derive eta from the bound");
        return Gauge::cap(single_rational(require(entries, "bound", name)));
      }
      if (kind == "rational-bend") {
        if (find(entries, "bound"))
          throw Error("rational-bend gauges are bounded by 1");
        const Entry* eta = find(entries, "eta");
        return eta ? Gauge::rational_bend(single_rational(*eta)) : Gauge::rational_bend();
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(name.line, name.col, err.what());
    }
    throw ParseError(name.line, name.col,
                     "unknown gauge kind '" + kind + "' (expected cap or rational-bend)");
  }

  static std::optional<Gauge> gauge_ref(const std::vector<Entry>& entries,
                                        const SpaceDefFile& file) {
    const Entry* e = find(entries, "gauge");
    if (!e) return std::nullopt;
    std::string name = single_atom(*e);
    auto it = file.gauges.find(name);
    if (it == file.gauges.end())
      throw ParseError(e->line, e->col, "no gauge named '" + name + "' declared yet");
    return it->second;
  }

  static Space build_finite(const Token& name, const std::vector<Entry>& entries,
                            const SpaceDefFile& file) {
    reject_unknown(entries, {"points", "d", "bound", "anchors", "gauge"});
    std::vector<std::string> labels = atom_list(require(entries, "points", name));
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (!index.emplace(labels[i], i).second)
        throw ParseError(name.line, name.col, "duplicate point '" + labels[i] + "'");

    const std::size_t n = labels.size();
    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n, Rational(0)));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const Entry& e : entries) {
      if (e.key != "d") continue;
      auto a = index.find(e.args[0]);
      auto b = index.find(e.args[1]);
      if (a == index.end())
        throw ParseError(e.line, e.col, "unknown point '" + e.args[0] + "'");
      if (b == index.end())
        throw ParseError(e.line, e.col, "unknown point '" + e.args[1] + "'");
      if (a == b)
        throw ParseError(e.line, e.col, "the diagonal is fixed at zero");
      if (given[a->second][b->second])
        throw ParseError(e.line, e.col,
                         "d(" + e.args[0] + "," + e.args[1] + ") given twice");
      Rational value = single_rational(e);
      table[a->second][b->second] = value;
      table[b->second][a->second] = value;
      given[a->second][b->second] = given[b->second][a->second] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!given[i][j])
          throw ParseError(name.line, name.col,
                           "missing distance d(" + labels[i] + "," + labels[j] + ")");

    const Entry* bound = find(entries, "bound");
    const Entry* anchors = find(entries, "anchors");
    std::vector<std::string> anchor_labels = anchors ? atom_list(*anchors) : labels;
    std::optional<Gauge> gauge = gauge_ref(entries, file);
    try {
      Space s = Space::finite_discrete(
          name.text, labels, std::move(table), std::move(anchor_labels),
          bound ? std::optional<Rational>(single_rational(*bound)) : std::nullopt);
      return gauge ? transform_metric(s, *gauge) : s;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(name.line, name.col, err.what());
    }
  }

  static Space build_interval(const Token& name, const std::vector<Entry>& entries,
                              const SpaceDefFile& file) {
    reject_unknown(entries, {"lo", "hi", "bound", "anchors", "gauge"});
    Rational lo = single_rational(require(entries, "lo", name));
    Rational hi = single_rational(require(entries, "hi", name));
    const Entry* anchors = find(entries, "anchors");
    std::vector<Rational> anchor_values;
    if (anchors) {
      for (const std::string& a : atom_list(*anchors)) {
        try {
          anchor_values.push_back(parse_rational(a));
        } catch (const Error& err) {
          throw ParseError(anchors->line, anchors->col, err.what());
        }
      }
    } else {
      anchor_values.push_back(lo);
      if (hi != lo) anchor_values.push_back(hi);
    }
    const Entry* bound = find(entries, "bound");
    try {
      return Space::interval(
          name.text, std::move(lo), std::move(hi), std::move(anchor_values),
          bound ? std::optional<Rational>(single_rational(*bound)) : std::nullopt,
          gauge_ref(entries, file));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(name.line, name.col, err.what());
    }
  }

  static Space build_product(const Token& name, const std::vector<Entry>& entries,
                             const SpaceDefFile& file) {
    reject_unknown(entries, {"cycle", "weights", "anchor"});
    const Entry& cycle_entry = require(entries, "cycle", name);
    std::vector<Space> cycle;
    std::size_t min_anchors = 0;
    for (const std::string& ref : atom_list(cycle_entry)) {
      auto it = file.spaces.find(ref);
      if (it == file.spaces.end())
        throw ParseError(cycle_entry.line, cycle_entry.col,
                         "no space named '" + ref + "' declared yet");
      if (!it->second.is_simple())
        throw ParseError(cycle_entry.line, cycle_entry.col,
                         "'" + ref + "' is a product; cycles hold simple spaces");
      std::size_t a = it->second.anchor_count();
      min_anchors = cycle.empty() ? a : std::min(min_anchors, a);
      cycle.push_back(it->second);
    }
    auto [ratio, scale] = geometric_call(require(entries, "weights", name));

    std::vector<std::size_t> order;
    if (const Entry* anchor = find(entries, "anchor")) {
      std::string text = single_atom(*anchor);
      std::size_t j = 0;
      try {
        j = parse_index(text);
      } catch (const Error& err) {
        throw ParseError(anchor->line, anchor->col, err.what());
      }
      if (j >= min_anchors)
        throw ParseError(anchor->line, anchor->col,
                         "anchor index " + text + " is not valid for every component");
      order.push_back(j);
      for (std::size_t t = 0; t < min_anchors; ++t)
        if (t != j) order.push_back(t);
    }
    try {
      return Space::countable_product(name.text, std::move(cycle), std::move(ratio),
                                      std::move(scale), std::move(order));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(name.line, name.col, err.what());
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const Space& SpaceDefFile::space(const std::string& name) const {
  auto it = spaces.find(name);
  if (it == spaces.end()) throw Error("no space named '" + name + "'");
  return it->second;
}

SpaceDefFile parse_space_file(const std::string& text) { return Parser(text).run(); }

Point parse_point(const Space& space, const std::string& token) {
  switch (space.kind()) {
    case SpaceKind::finite_discrete: {
      Point p(token);
      space.require_point(p);
      return p;
    }
    case SpaceKind::interval: {
      Point p(parse_rational(token));
      space.require_point(p);
      return p;
    }
    default: {
      std::size_t at = token.find('@');
      if (at == std::string::npos)
        throw Error("product points look like 'c1,c2@anchor' or '@anchor', got '" + token + "'");
      ProductPoint pp;
      std::string coords = token.substr(0, at);
      std::string anchor = token.substr(at + 1);
      if (!coords.empty()) {
        std::istringstream in(coords);
        std::string coord;
        std::size_t i = 0;
        while (std::getline(in, coord, ',')) {
          ++i;
          if (coord.empty()) throw Error("empty coordinate in '" + token + "'");
          const Space& c = space.component(i);
          if (c.kind() == SpaceKind::finite_discrete)
            pp.prefix.emplace_back(coord);
          else
            pp.prefix.emplace_back(parse_rational(coord));
        }
        if (!coords.empty() && coords.back() == ',')
          throw Error("empty coordinate in '" + token + "'");
      }
      pp.tail_anchor = parse_index(anchor);
      Point p(std::move(pp));
      space.require_point(p);
      return p;
    }
  }
}

std::vector<Point> parse_point_file(const Space& space, const std::string& text) {
  std::vector<Point> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    if (stripped.find_first_of(" \t") != std::string::npos)
      throw Error("line " + std::to_string(lineno) + ": one point per line, got '" + stripped +
                  "'");
    try {
      out.push_back(parse_point(space, stripped));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace netcert
